#include <optional>
#include <sstream>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fraclane/catalog.hpp"
#include "fraclane/equation.hpp"
#include "fraclane/gamma.hpp"
#include "fraclane/series.hpp"
#include "fraclane/solver.hpp"

namespace py = pybind11;
using namespace fraclane;

namespace {

SourceSign sign_from_string(const std::string& sign) {
  if (sign == "minus") return SourceSign::minus;
  if (sign == "plus") return SourceSign::plus;
  throw std::invalid_argument("sign must be 'minus' or 'plus'");
}

std::string kind_repr(const SourceKind& k) {
  std::ostringstream out;
  if (k.tag == SourceKind::Tag::power) {
    out << "SourceKind.power(" << k.n << ")";
  } else {
    out << "SourceKind.exponential(" << k.lambda << ")";
  }
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Truncated fractional power-series solver for Lane-Emden-type "
      "equations";

  m.def("gamma", &fraclane::gamma, py::arg("x"),
        "Gamma(x) for finite x > 0");
  m.def("log_gamma", &log_gamma, py::arg("x"), "ln Gamma(x) for finite x > 0");
  m.def("gamma_ratio", &gamma_ratio, py::arg("num"), py::arg("den"),
        "Gamma(num)/Gamma(den), evaluated in log space");

  py::class_<FracSeries>(m, "FracSeries",
                         "Truncated series sum A_m x^(m*alpha)")
      .def(py::init<double, std::vector<double>>(), py::arg("alpha"),
           py::arg("coeffs"))
      .def_property_readonly("alpha", &FracSeries::alpha)
      .def_property_readonly("coeffs",
                             [](const FracSeries& s) { return s.coeffs(); })
      .def_property_readonly("order", &FracSeries::order)
      .def("coeff", &FracSeries::coeff, py::arg("m"),
           "Coefficient of X^m (zero outside the stored range)")
      .def("evaluate", &FracSeries::evaluate, py::arg("x"))
      .def("__len__", &FracSeries::size)
      .def("__repr__", [](const FracSeries& s) {
        std::ostringstream out;
        out << "FracSeries(alpha=" << s.alpha() << ", order=" << s.order()
            << ")";
        return out.str();
      });

  m.def(
      "linear_combine",
      [](const std::vector<std::tuple<double, int, FracSeries>>& terms) {
        std::vector<ScaledTerm> native;
        native.reserve(terms.size());
        for (const auto& [scale, shift, series] : terms) {
          native.push_back({scale, shift, series});
        }
        return linear_combine(native);
      },
      py::arg("terms"),
      "Sum of (scale, shift, series) addends: scale * X^shift * series");
  m.def("frac_product", &frac_product, py::arg("f"), py::arg("g"));
  m.def("frac_power", &frac_power, py::arg("f"), py::arg("n"));
  m.def("frac_exp", &frac_exp, py::arg("f"), py::arg("lam"));
  m.def("frac_deriv", &frac_deriv, py::arg("f"));

  py::class_<SourceKind>(m, "SourceKind")
      .def_static("power", &SourceKind::power, py::arg("n"))
      .def_static("exponential", &SourceKind::exponential, py::arg("lam"))
      .def_property_readonly(
          "is_power",
          [](const SourceKind& k) { return k.tag == SourceKind::Tag::power; })
      .def_readonly("n", &SourceKind::n)
      .def_readonly("lam", &SourceKind::lambda)
      .def("__eq__", [](const SourceKind& a,
                        const SourceKind& b) { return a == b; })
      .def("__repr__", &kind_repr);

  py::class_<SourceTerm>(m, "SourceTerm")
      .def(py::init([](double c, int s, const SourceKind& kind) {
             return SourceTerm{c, s, kind};
           }),
           py::arg("c"), py::arg("s"), py::arg("kind"))
      .def_readonly("c", &SourceTerm::c)
      .def_readonly("s", &SourceTerm::s)
      .def_readonly("kind", &SourceTerm::kind)
      .def("__eq__",
           [](const SourceTerm& a, const SourceTerm& b) { return a == b; })
      .def("__repr__", [](const SourceTerm& t) {
        std::ostringstream out;
        out << "SourceTerm(c=" << t.c << ", s=" << t.s << ", kind="
            << kind_repr(t.kind) << ")";
        return out.str();
      });

  py::class_<EquationSpec>(m, "EquationSpec")
      .def(py::init([](double alpha, double k,
                       const std::vector<SourceTerm>& terms,
                       const std::vector<double>& rhs, double y0, double dy0) {
             return EquationSpec{alpha, k, terms, rhs, y0, dy0};
           }),
           py::arg("alpha"), py::arg("k"), py::arg("terms"), py::arg("rhs"),
           py::arg("y0"), py::arg("dy0"))
      .def_readonly("alpha", &EquationSpec::alpha)
      .def_readonly("k", &EquationSpec::k)
      .def_readonly("terms", &EquationSpec::terms)
      .def_readonly("rhs", &EquationSpec::rhs)
      .def_readonly("y0", &EquationSpec::y0)
      .def_readonly("dy0", &EquationSpec::dy0)
      .def("__eq__",
           [](const EquationSpec& a, const EquationSpec& b) { return a == b; })
      .def("__repr__", [](const EquationSpec& s) {
        return "EquationSpec(" + spec_to_json(s).dump() + ")";
      });

  m.def("validate", &validate, py::arg("spec"),
        "List of violations; empty means solvable");
  m.def("parse_equation", &parse_equation, py::arg("text"), py::arg("alpha"),
        py::arg("y0"), py::arg("dy0"));
  m.def(
      "spec_to_json",
      [](const EquationSpec& spec) { return spec_to_json(spec).dump(2); },
      py::arg("spec"), "Serialise a spec to a JSON string");
  m.def(
      "spec_from_json",
      [](const std::string& text) {
        return spec_from_json(nlohmann::json::parse(text));
      },
      py::arg("text"), "Parse a spec from a JSON string");

  py::register_exception<ParseError>(m, "EquationParseError",
                                     PyExc_ValueError);

  py::class_<SeriesSolution>(m, "SeriesSolution")
      .def_readonly("spec", &SeriesSolution::spec)
      .def_readonly("series", &SeriesSolution::series)
      .def_readonly("compositions", &SeriesSolution::compositions);

  py::class_<ResidualReport>(m, "ResidualReport")
      .def_readonly("orders", &ResidualReport::orders)
      .def_readonly("residual", &ResidualReport::residual)
      .def_readonly("max_abs", &ResidualReport::max_abs)
      .def_readonly("scale", &ResidualReport::scale);

  m.def("lhs_factor", &lhs_factor, py::arg("m"), py::arg("alpha"),
        py::arg("k"));
  m.def("solve", &solve, py::arg("spec"), py::arg("terms") = 30,
        "March the truncated series solution up to the given order");
  m.def("residual", &residual, py::arg("solution"));

  m.def(
      "example_spec",
      [](int id, double alpha, std::optional<int> n, const std::string& sign) {
        return example_spec(id, alpha, n, sign_from_string(sign));
      },
      py::arg("id"), py::arg("alpha") = 1.0, py::arg("n") = py::none(),
      py::arg("sign") = "minus");
  m.def(
      "example_dsl",
      [](int id, std::optional<int> n, const std::string& sign) {
        return example_dsl(id, n, sign_from_string(sign));
      },
      py::arg("id"), py::arg("n") = py::none(), py::arg("sign") = "minus");
  m.def(
      "classical_reference",
      [](int id, double x, std::optional<int> n, const std::string& sign) {
        return classical_reference(id, x, n, sign_from_string(sign));
      },
      py::arg("id"), py::arg("x"), py::arg("n") = py::none(),
      py::arg("sign") = "minus");
  m.def("example_errata", &example_errata, py::arg("id"));
  m.def("catalog_ids", [] {
    std::vector<int> ids;
    for (const CatalogEntry& e : catalog_entries()) ids.push_back(e.id);
    return ids;
  });

#ifdef FRACLANE_VERSION
  m.attr("__version__") = FRACLANE_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
