"""Truncated fractional power-series solutions of Lane-Emden-type equations.

The heavy lifting lives in the compiled extension ``fraclane._core``; this
package re-exports its public surface.
"""

from ._core import (
    EquationParseError,
    EquationSpec,
    FracSeries,
    ResidualReport,
    SeriesSolution,
    SourceKind,
    SourceTerm,
    __version__,
    catalog_ids,
    classical_reference,
    example_dsl,
    example_errata,
    example_spec,
    frac_deriv,
    frac_exp,
    frac_power,
    frac_product,
    gamma,
    gamma_ratio,
    lhs_factor,
    linear_combine,
    log_gamma,
    parse_equation,
    residual,
    solve,
    spec_from_json,
    spec_to_json,
    validate,
)

__all__ = [
    "EquationParseError",
    "EquationSpec",
    "FracSeries",
    "ResidualReport",
    "SeriesSolution",
    "SourceKind",
    "SourceTerm",
    "__version__",
    "catalog_ids",
    "classical_reference",
    "example_dsl",
    "example_errata",
    "example_spec",
    "frac_deriv",
    "frac_exp",
    "frac_power",
    "frac_product",
    "gamma",
    "gamma_ratio",
    "lhs_factor",
    "linear_combine",
    "log_gamma",
    "parse_equation",
    "residual",
    "solve",
    "spec_from_json",
    "spec_to_json",
    "validate",
]
