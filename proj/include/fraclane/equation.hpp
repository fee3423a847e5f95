#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace fraclane {

// Shape of one source term's composition F(y): an integer power y^n or an
// exponential exp(lambda * y).
struct SourceKind {
  enum class Tag { power, exponential };

  Tag tag = Tag::power;
  int n = 0;           // exponent when tag == power
  double lambda = 0.0; // scale when tag == exponential

  static SourceKind power(int n) { return {Tag::power, n, 0.0}; }
  static SourceKind exponential(double lambda) {
    return {Tag::exponential, 0, lambda};
  }

  bool operator==(const SourceKind&) const = default;
};

// One source term c * x^(s*alpha) * F(y).
struct SourceTerm {
  double c = 0.0;
  int s = 0;
  SourceKind kind;

  bool operator==(const SourceTerm&) const = default;
};

// A Lane-Emden-type equation in the fractional series calculus:
//
//   D2 y + (k / x^alpha) D y + sum_t c_t x^(s_t alpha) F_t(y) = sum_j r_j x^(j alpha)
//
// with initial values y(0) = y0 and (D y)(0) = dy0, where D is the fractional
// derivative of order alpha and D2 its twofold application.
struct EquationSpec {
  double alpha = 1.0;
  double k = 0.0;
  std::vector<SourceTerm> terms;
  std::vector<double> rhs; // r_0 .. r_d
  double y0 = 0.0;
  double dy0 = 0.0;

  bool operator==(const EquationSpec&) const = default;
};

// Returns human-readable violations; an empty vector means the spec is
// solvable. Checked rules: 0 < alpha <= 1; finite k, c, rhs, y0, dy0;
// power exponents >= 0; exp scales finite and nonzero; shifts s >= 0; and
// dy0 = 0 whenever k != 0 (the drag term is singular at the origin).
std::vector<std::string> validate(const EquationSpec& spec);

// Error raised by parse_equation, carrying the offset into the input text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A recognisable but unsupported source function, e.g. sin(y).
class UnsupportedTermError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Parses the whitespace-insensitive equation DSL
//
//   equation := "D2y" (sign term)* "=" poly
//   sign     := "+" | "-"
//   term     := drag | source
//   drag     := "(" number "/x" ")" "*" "Dy"
//   source   := [number "*"] ["x^" integer "*"] func
//   func     := "y" ["^" integer] | "exp(" ["-"] "y" ")" | "1"
//   poly     := number (sign [number "*"] "x^" integer | sign number)*
//
// Exponents are in X-units: "x^j" denotes x^(j*alpha). Example:
//   "D2y + (2/x)*Dy + y^3 = 6 + x^6"
// alpha, y0 and dy0 are not part of the text and are supplied alongside it.
EquationSpec parse_equation(std::string_view text, double alpha, double y0,
                            double dy0);

// JSON round trip. The schema is
//   {"alpha": a, "k": k,
//    "terms": [{"c": c, "s": s, "kind": {"power": n} | {"exp": lambda}}, ...],
//    "rhs": [r0, ...], "y0": y0, "dy0": dy0}
// with every field required. spec_from_json throws std::invalid_argument
// naming the offending field.
nlohmann::json spec_to_json(const EquationSpec& spec);
EquationSpec spec_from_json(const nlohmann::json& j);

}  // namespace fraclane
