#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "fraclane/catalog.hpp"
#include "fraclane/equation.hpp"
#include "fraclane/solver.hpp"

using fraclane::catalog_entries;
using fraclane::catalog_entry;
using fraclane::CatalogEntry;
using fraclane::classical_reference;
using fraclane::EquationSpec;
using fraclane::example_dsl;
using fraclane::example_errata;
using fraclane::example_spec;
using fraclane::parse_equation;
using fraclane::solve;
using fraclane::SourceKind;
using fraclane::SourceSign;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace

TEST_CASE("the catalog registers seven examples with ids 1..7") {
  const auto& entries = catalog_entries();
  REQUIRE(entries.size() == 7);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(entries[i].id == static_cast<int>(i) + 1);
    CHECK(!entries[i].title.empty());
  }
  CHECK_THROWS_AS(catalog_entry(0), std::invalid_argument);
  CHECK_THROWS_AS(catalog_entry(8), std::invalid_argument);
}

TEST_CASE("variant flags and their enforcement") {
  CHECK(catalog_entry(2).needs_n);
  CHECK(catalog_entry(4).needs_n);
  CHECK(catalog_entry(4).has_sign);
  CHECK(!catalog_entry(1).needs_n);
  CHECK(!catalog_entry(7).has_sign);

  CHECK_THROWS_AS(example_spec(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(example_spec(1, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(example_spec(2, 1.0, 7), std::invalid_argument);
  CHECK_THROWS_AS(example_spec(4, 1.0, -1), std::invalid_argument);
}

TEST_CASE("registered specs carry the expected structure") {
  EquationSpec e1 = example_spec(1, 0.5);
  CHECK(e1.alpha == 0.5);
  CHECK(e1.k == 2.0);
  CHECK(e1.y0 == 1.0);
  CHECK(e1.dy0 == 0.0);
  REQUIRE(e1.terms.size() == 2);
  CHECK(e1.terms[0].c == -4.0);
  CHECK(e1.terms[0].s == 2);
  CHECK(e1.terms[0].kind == SourceKind::power(1));
  CHECK(e1.terms[1].c == -6.0);
  CHECK(e1.terms[1].s == 0);
  CHECK(e1.rhs.empty());

  EquationSpec e5 = example_spec(5, 1.0);
  REQUIRE(e5.terms.size() == 1);
  CHECK(e5.terms[0].c == 4.0);
  CHECK(e5.terms[0].s == 0);
  CHECK(e5.terms[0].kind == SourceKind::power(2));

  EquationSpec e6 = example_spec(6, 1.0);
  CHECK(e6.rhs == std::vector<double>{6.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0});
  CHECK(e6.terms[0].kind == SourceKind::power(3));

  EquationSpec e7 = example_spec(7, 1.0);
  CHECK(e7.y0 == 0.0);
  REQUIRE(e7.terms.size() == 1);
  CHECK(e7.terms[0].c == -1.0);
  CHECK(e7.terms[0].kind == SourceKind::exponential(-1.0));
}

TEST_CASE("the DSL text parses back to the registered spec") {
  struct Variant {
    int id;
    std::optional<int> n;
    SourceSign sign;
  };
  std::vector<Variant> variants = {
      {1, std::nullopt, SourceSign::minus},
      {2, 0, SourceSign::minus},
      {2, 1, SourceSign::minus},
      {3, std::nullopt, SourceSign::minus},
      {5, std::nullopt, SourceSign::minus},
      {6, std::nullopt, SourceSign::minus},
      {7, std::nullopt, SourceSign::minus},
  };
  for (int n : {0, 1, 2, 3, 5}) {
    variants.push_back({4, n, SourceSign::minus});
    variants.push_back({4, n, SourceSign::plus});
  }
  for (const Variant& v : variants) {
    const CatalogEntry& entry = catalog_entry(v.id);
    std::string text = example_dsl(v.id, v.n, v.sign);
    EquationSpec parsed =
        parse_equation(text, 0.75, entry.y0, entry.dy0);
    EquationSpec registered = example_spec(v.id, 0.75, v.n, v.sign);
    CHECK(parsed == registered);
  }
  CHECK(example_dsl(4, 3, SourceSign::minus).find("- y^3") !=
        std::string::npos);
  CHECK(example_dsl(4, 3, SourceSign::plus).find("+ y^3") !=
        std::string::npos);
}

TEST_CASE("classical reference frozen values") {
  CHECK(rel_err(classical_reference(1, 1.0), 2.718281828459045) <= 1e-14);
  CHECK(rel_err(classical_reference(2, 1.0, 1), 0.8414709848078965) <= 1e-14);
  CHECK(classical_reference(2, 1.0, 1) != 0.0);
  CHECK(classical_reference(2, 0.0, 1) == 1.0);
  CHECK(rel_err(classical_reference(2, 3.0, 0), -0.5) <= 1e-14);
  CHECK(rel_err(classical_reference(3, 2.0), 12.0) <= 1e-14);
  CHECK(rel_err(classical_reference(4, 1.0, 3, SourceSign::minus),
                1.0 + 1.0 / 6.0 + 3.0 / 120.0) <= 1e-14);
  CHECK(rel_err(classical_reference(4, 1.0, 3, SourceSign::plus),
                1.0 - 1.0 / 6.0 + 3.0 / 120.0) <= 1e-14);
  CHECK(classical_reference(6, 2.0) == 4.0);
  CHECK(rel_err(classical_reference(7, 0.5), 0.041154100529100526) <= 1e-14);
}

TEST_CASE("series solutions track exact references at alpha = 1") {
  struct Case {
    int id;
    std::optional<int> n;
  };
  for (const Case& c : {Case{1, std::nullopt}, Case{2, 0}, Case{2, 1},
                        Case{3, std::nullopt}, Case{6, std::nullopt}}) {
    auto sol = solve(example_spec(c.id, 1.0, c.n), 30);
    for (double x : {0.1, 0.5, 1.0}) {
      double got = sol.series.evaluate(x);
      double want = classical_reference(c.id, x, c.n);
      CHECK(std::abs(got - want) <= 1e-8 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("truncated references match the leading solver coefficients") {
  CHECK(catalog_entry(4).truncated_reference);
  CHECK(catalog_entry(4).reference_order == 4);
  CHECK(catalog_entry(7).truncated_reference);
  CHECK(catalog_entry(7).reference_order == 6);
  CHECK(!catalog_entry(1).truncated_reference);
  CHECK(catalog_entry(1).reference_order == -1);

  for (int n : {0, 1, 2, 3, 5}) {
    auto minus = solve(example_spec(4, 1.0, n, SourceSign::minus), 8).series;
    CHECK(std::abs(minus.coeff(2) - 1.0 / 6.0) <= 1e-12);
    CHECK(std::abs(minus.coeff(4) - n / 120.0) <= 1e-12);
    auto plus = solve(example_spec(4, 1.0, n, SourceSign::plus), 8).series;
    CHECK(std::abs(plus.coeff(2) + 1.0 / 6.0) <= 1e-12);
    CHECK(std::abs(plus.coeff(4) - n / 120.0) <= 1e-12);
  }

  auto iso = solve(example_spec(7, 1.0), 10).series;
  CHECK(std::abs(iso.coeff(2) - 1.0 / 6.0) <= 1e-12);
  CHECK(std::abs(iso.coeff(4) + 1.0 / 120.0) <= 1e-12);
  CHECK(std::abs(iso.coeff(6) - 1.0 / 1890.0) <= 1e-12);
}

TEST_CASE("references reject x outside their stated domain") {
  CHECK_THROWS_AS(classical_reference(1, 2.5), std::domain_error);
  CHECK_THROWS_AS(classical_reference(2, 3.5, 1), std::domain_error);
  CHECK_THROWS_AS(classical_reference(7, 1.5), std::domain_error);
  CHECK_THROWS_AS(classical_reference(3, -0.1), std::domain_error);
  // The boundary itself is included.
  CHECK(std::isfinite(classical_reference(1, 2.0)));
  CHECK(std::isfinite(classical_reference(7, 1.0)));
}

TEST_CASE("errata are recorded for the corrected registrations") {
  CHECK(!example_errata(1).empty());
  CHECK(!example_errata(5).empty());
  CHECK(!example_errata(6).empty());
  CHECK(example_errata(2).empty());
  CHECK(example_errata(3).empty());
  CHECK(example_errata(4).empty());
  CHECK(example_errata(7).empty());

  bool mentions_a8 = false;
  for (const std::string& note : example_errata(6)) {
    if (note.find("1/72") != std::string::npos) mentions_a8 = true;
  }
  CHECK(mentions_a8);

  bool mentions_a2 = false;
  for (const std::string& note : example_errata(5)) {
    if (note.find("A_2") != std::string::npos) mentions_a2 = true;
  }
  CHECK(mentions_a2);
}
