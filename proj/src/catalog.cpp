#include "fraclane/catalog.hpp"

#include <cmath>
#include <stdexcept>

#include "fraclane/solver.hpp"

namespace fraclane {

namespace {

std::vector<CatalogEntry> build_entries() {
  std::vector<CatalogEntry> entries;

  entries.push_back(CatalogEntry{
      1,
      "linear drag benchmark with exp(x^2) limit",
      false,
      false,
      1.0,
      0.0,
      2.0,
      false,
      -1,
      {
          "The source is registered as -(4 x^2 + 6) y. The prefactor is "
          "often printed as -2(4 x^2 + 3), i.e. -8 x^2 y - 6 y, which "
          "contradicts the published expansion coefficients and the "
          "closed-form limit; the expansion corresponds to -4 x^2 y - 6 y.",
          "The limit at alpha = 1 is exp(+x^2); it sometimes appears in "
          "print with the sign flipped to exp(-x^2).",
      },
  });

  entries.push_back(CatalogEntry{
      2,
      "polytropic benchmark y^n, n in {0, 1}",
      true,
      false,
      1.0,
      0.0,
      3.0,
      false,
      -1,
      {},
  });

  entries.push_back(CatalogEntry{
      3,
      "forced linear benchmark with exact solution x^2 + x^3",
      false,
      false,
      0.0,
      0.0,
      2.0,
      false,
      -1,
      {},
  });

  entries.push_back(CatalogEntry{
      4,
      "y^n source with either sign",
      true,
      true,
      1.0,
      0.0,
      1.0,
      true,
      4,
      {},
  });

  entries.push_back(CatalogEntry{
      5,
      "quadratic source benchmark",
      false,
      false,
      1.0,
      0.0,
      1.0,
      false,
      -1,
      {
          "The quadratic source is registered as 4 y^2 without an x^2 "
          "prefactor: the published recurrence and coefficient values "
          "correspond to the unshifted source, while the displayed equation "
          "carries a spurious x^2 factor (which would leave the order-2 "
          "coefficient zero).",
          "The order-2 balance forces A_2 = -4 G(a+1) / (G(2a+1) [G(a+1) + "
          "2]); the positive value usually printed contradicts it.",
      },
  });

  entries.push_back(CatalogEntry{
      6,
      "cubic source with polynomial forcing, exact x^2 limit",
      false,
      false,
      0.0,
      0.0,
      2.0,
      false,
      -1,
      {
          "At alpha = 1 the consistent recurrence gives A_8 = 0 and the "
          "exact solution y = x^2; the eighth coefficient is sometimes "
          "printed as 1/72, which does not satisfy the order-8 balance.",
          "At fractional alpha the cubic composition gives Q_6 = 90 "
          "G(2a+1)^3 A_2^3 / G(6a+1), so A_8 = (r_6 - Q_6) / L(8) is "
          "generally nonzero; it vanishes only in the alpha = 1 limit.",
      },
  });

  entries.push_back(CatalogEntry{
      7,
      "isothermal benchmark with exp(-y) source",
      false,
      false,
      0.0,
      0.0,
      1.0,
      true,
      6,
      {},
  });

  return entries;
}

void require_variant(const CatalogEntry& entry, const std::optional<int>& n) {
  if (entry.needs_n && !n.has_value()) {
    throw std::invalid_argument("example " + std::to_string(entry.id) +
                                " requires the exponent variant n");
  }
  if (!entry.needs_n && n.has_value()) {
    throw std::invalid_argument("example " + std::to_string(entry.id) +
                                " takes no exponent variant");
  }
  if (entry.id == 2 && n.has_value() && *n != 0 && *n != 1) {
    throw std::invalid_argument("example 2 is registered for n in {0, 1}");
  }
  if (entry.needs_n && n.has_value() && *n < 0) {
    throw std::invalid_argument("example " + std::to_string(entry.id) +
                                ": n must be >= 0");
  }
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = build_entries();
  return entries;
}

const CatalogEntry& catalog_entry(int id) {
  for (const CatalogEntry& e : catalog_entries()) {
    if (e.id == id) return e;
  }
  throw std::invalid_argument("unknown example id " + std::to_string(id));
}

std::string example_dsl(int id, std::optional<int> n, SourceSign sign) {
  const CatalogEntry& entry = catalog_entry(id);
  require_variant(entry, n);
  switch (id) {
    case 1:
      return "D2y + (2/x)*Dy - 4*x^2*y - 6*y = 0";
    case 2:
      return *n == 0 ? "D2y + (2/x)*Dy + 1 = 0"
                     : "D2y + (2/x)*Dy + y = 0";
    case 3:
      return "D2y + (2/x)*Dy + y = 6 + 12*x^1 + x^2 + x^3";
    case 4: {
      std::string op = (sign == SourceSign::minus) ? "-" : "+";
      return "D2y + (2/x)*Dy " + op + " y^" + std::to_string(*n) + " = 0";
    }
    case 5:
      return "D2y + (2/x)*Dy + 4*y^2 = 0";
    case 6:
      return "D2y + (2/x)*Dy + y^3 = 6 + x^6";
    default:
      return "D2y + (2/x)*Dy - exp(-y) = 0";
  }
}

EquationSpec example_spec(int id, double alpha, std::optional<int> n,
                          SourceSign sign) {
  const CatalogEntry& entry = catalog_entry(id);
  require_variant(entry, n);
  EquationSpec spec;
  spec.alpha = alpha;
  spec.k = 2.0;
  spec.y0 = entry.y0;
  spec.dy0 = entry.dy0;
  switch (id) {
    case 1:
      spec.terms = {{-4.0, 2, SourceKind::power(1)},
                    {-6.0, 0, SourceKind::power(1)}};
      break;
    case 2:
      spec.terms = {{1.0, 0, SourceKind::power(*n)}};
      break;
    case 3:
      spec.terms = {{1.0, 0, SourceKind::power(1)}};
      spec.rhs = {6.0, 12.0, 1.0, 1.0};
      break;
    case 4: {
      double c = (sign == SourceSign::minus) ? -1.0 : 1.0;
      spec.terms = {{c, 0, SourceKind::power(*n)}};
      break;
    }
    case 5:
      spec.terms = {{4.0, 0, SourceKind::power(2)}};
      break;
    case 6:
      spec.terms = {{1.0, 0, SourceKind::power(3)}};
      spec.rhs = {6.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0};
      break;
    default:
      spec.terms = {{-1.0, 0, SourceKind::exponential(-1.0)}};
      break;
  }
  return spec;
}

double classical_reference(int id, double x, std::optional<int> n,
                           SourceSign sign) {
  const CatalogEntry& entry = catalog_entry(id);
  require_variant(entry, n);
  if (!std::isfinite(x) || x < 0.0 || x > entry.x_max) {
    throw std::domain_error("classical_reference: x outside [0, " +
                            std::to_string(entry.x_max) + "] for example " +
                            std::to_string(id));
  }
  switch (id) {
    case 1:
      return std::exp(x * x);
    case 2:
      if (*n == 0) return 1.0 - x * x / 6.0;
      return x == 0.0 ? 1.0 : std::sin(x) / x;
    case 3:
      return x * x + x * x * x;
    case 4: {
      double second = x * x / 6.0;
      double fourth = *n * std::pow(x, 4) / 120.0;
      return (sign == SourceSign::minus) ? 1.0 + second + fourth
                                         : 1.0 - second + fourth;
    }
    case 5: {
      // No independent closed form is known; the reference is the solver's
      // own alpha = 1 series (see the entry's errata).
      static const FracSeries series =
          solve(example_spec(5, 1.0), 30).series;
      return series.evaluate(x);
    }
    case 6:
      return x * x;
    default:
      return x * x / 6.0 - std::pow(x, 4) / 120.0 + std::pow(x, 6) / 1890.0;
  }
}

const std::vector<std::string>& example_errata(int id) {
  return catalog_entry(id).errata;
}

}  // namespace fraclane
