#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fraclane/equation.hpp"

namespace fraclane {

// Which sign the y^n source of example 4 carries.
enum class SourceSign { minus, plus };

// Metadata for one benchmark entry.
struct CatalogEntry {
  int id = 0;
  std::string title;
  bool needs_n = false;    // examples 2 and 4 take an exponent variant
  bool has_sign = false;   // example 4 exists with both source signs
  double y0 = 0.0;
  double dy0 = 0.0;
  double x_max = 1.0;      // classical_reference domain is [0, x_max]
  bool truncated_reference = false; // reference is a truncated series
  int reference_order = -1;         // highest X power of a truncated reference
  std::vector<std::string> errata;
};

// The seven registered benchmark problems, ordered by id.
const std::vector<CatalogEntry>& catalog_entries();

// Entry metadata by id; throws std::invalid_argument for unknown ids.
const CatalogEntry& catalog_entry(int id);

// DSL text of a benchmark equation. n is required for ids 2 (n in {0, 1})
// and 4 (n >= 0) and must be absent otherwise; sign applies to id 4 only.
std::string example_dsl(int id, std::optional<int> n = std::nullopt,
                        SourceSign sign = SourceSign::minus);

// Structurally built EquationSpec of a benchmark at the given alpha. The
// registered spec always equals parse_equation(example_dsl(...)) field for
// field.
EquationSpec example_spec(int id, double alpha,
                          std::optional<int> n = std::nullopt,
                          SourceSign sign = SourceSign::minus);

// Reference solution at alpha = 1:
//   1: exp(x^2)                             2, n=0: 1 - x^2/6
//   2, n=1: sin(x)/x                        3: x^2 + x^3
//   4: 1 -+ x^2/6 + n x^4/120 (truncated)   5: solver series (no closed form)
//   6: x^2                                  7: x^2/6 - x^4/120 + x^6/1890 (truncated)
// Throws std::domain_error outside [0, x_max].
double classical_reference(int id, double x,
                           std::optional<int> n = std::nullopt,
                           SourceSign sign = SourceSign::minus);

// Notes on defects in the printed statements of these benchmarks; empty for
// entries without known issues.
const std::vector<std::string>& example_errata(int id);

}  // namespace fraclane
