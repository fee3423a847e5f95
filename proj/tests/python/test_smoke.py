"""Smoke tests for the python bindings: one happy path per exported surface."""

import json
import math

import pytest

import fraclane


def test_module_metadata():
    assert fraclane.__version__
    assert fraclane.catalog_ids() == [1, 2, 3, 4, 5, 6, 7]


def test_gamma_functions():
    assert math.isclose(fraclane.gamma(0.5), math.sqrt(math.pi), rel_tol=1e-14)
    assert math.isclose(fraclane.log_gamma(10.0), math.log(362880.0), rel_tol=1e-14)
    assert math.isclose(fraclane.gamma_ratio(501.0, 500.0), 500.0, rel_tol=1e-9)
    with pytest.raises(ValueError):
        fraclane.gamma(-1.0)


def test_series_operations():
    f = fraclane.FracSeries(1.0, [1.0, 0.0, 1.0])
    sq = fraclane.frac_power(f, 2)
    assert sq.coeffs == pytest.approx([1.0, 0.0, 2.0, 0.0, 1.0], abs=1e-13)
    assert len(sq) == 5
    assert sq.order == 4

    d = fraclane.frac_deriv(fraclane.FracSeries(0.5, [0.0, 1.0]))
    assert d.coeff(0) == pytest.approx(fraclane.gamma(1.5), abs=1e-15)

    e = fraclane.frac_exp(fraclane.FracSeries(1.0, [0.0, 0.0, 1.0]), -1.0)
    assert e.coeffs == pytest.approx([1.0, 0.0, -1.0], abs=1e-14)

    combo = fraclane.linear_combine([(2.0, 1, f), (1.0, 0, f)])
    assert combo.coeffs == pytest.approx([1.0, 2.0, 1.0], abs=1e-15)


def test_parse_equation():
    spec = fraclane.parse_equation("D2y + (2/x)*Dy + y^3 = 6 + x^6", 1.0, 0.0, 0.0)
    assert spec.k == 2.0
    assert spec.terms[0].kind == fraclane.SourceKind.power(3)
    assert spec.rhs == [6.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]
    assert fraclane.validate(spec) == []
    with pytest.raises(ValueError):
        fraclane.parse_equation("D2y + sin(y) = 0", 1.0, 0.0, 0.0)


def test_solve_and_evaluate():
    sol = fraclane.solve(fraclane.example_spec(2, 1.0, 1), terms=20)
    assert sol.series.coeff(2) == pytest.approx(-1.0 / 6.0, abs=1e-14)
    assert sol.series.evaluate(1.0) == pytest.approx(math.sin(1.0), abs=1e-10)
    assert len(sol.compositions) == 1


def test_residual_report():
    sol = fraclane.solve(fraclane.example_spec(5, 0.5), terms=20)
    rep = fraclane.residual(sol)
    assert rep.orders[0] == 2
    assert rep.max_abs <= 1e-9 * max(1.0, rep.scale)


def test_spec_json_round_trip():
    spec = fraclane.example_spec(4, 0.75, 3, "plus")
    text = fraclane.spec_to_json(spec)
    doc = json.loads(text)
    assert doc["alpha"] == 0.75
    back = fraclane.spec_from_json(text)
    assert back == spec


def test_catalog_surface():
    assert "exp(-y)" in fraclane.example_dsl(7)
    assert fraclane.classical_reference(2, 1.0, 1) == pytest.approx(
        math.sin(1.0), rel=1e-14
    )
    assert fraclane.example_errata(6)
    assert fraclane.example_errata(3) == []
    with pytest.raises(ValueError):
        fraclane.example_spec(2, 1.0)  # missing n
