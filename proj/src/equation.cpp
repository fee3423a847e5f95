#include "fraclane/equation.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "json.hpp"

namespace fraclane {

std::vector<std::string> validate(const EquationSpec& spec) {
  std::vector<std::string> v;
  if (!std::isfinite(spec.alpha) || spec.alpha <= 0.0 || spec.alpha > 1.0) {
    v.push_back("alpha out of range (need 0 < alpha <= 1)");
  }
  if (!std::isfinite(spec.k)) v.push_back("k is not finite");
  for (std::size_t i = 0; i < spec.terms.size(); ++i) {
    const SourceTerm& t = spec.terms[i];
    std::string where = "terms[" + std::to_string(i) + "]";
    if (!std::isfinite(t.c)) v.push_back(where + ".c is not finite");
    if (t.s < 0) v.push_back(where + ".s is negative");
    if (t.kind.tag == SourceKind::Tag::power) {
      if (t.kind.n < 0) v.push_back(where + ": power exponent is negative");
    } else {
      if (!std::isfinite(t.kind.lambda) || t.kind.lambda == 0.0) {
        v.push_back(where + ": exp scale must be finite and nonzero");
      }
    }
  }
  for (std::size_t j = 0; j < spec.rhs.size(); ++j) {
    if (!std::isfinite(spec.rhs[j])) {
      v.push_back("rhs[" + std::to_string(j) + "] is not finite");
    }
  }
  if (!std::isfinite(spec.y0)) v.push_back("y0 is not finite");
  if (!std::isfinite(spec.dy0)) v.push_back("dy0 is not finite");
  if (std::isfinite(spec.k) && std::isfinite(spec.dy0) && spec.k != 0.0 &&
      spec.dy0 != 0.0) {
    v.push_back(
        "nonzero first derivative with singular drag (k != 0 forces dy0 = 0)");
  }
  return v;
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat(std::string_view lit) {
    skip_ws();
    if (text_.substr(pos_).starts_with(lit)) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!eat(c)) fail(std::string("expected '") + c + "' (" + what + ")");
  }

  bool at_number() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  // Unsigned decimal number; signs are separate tokens in the grammar.
  double number() {
    skip_ws();
    if (!at_number()) fail("expected a number");
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  int integer() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      fail("expected a non-negative integer");
    }
    int value = 0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) fail("malformed integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  std::size_t pos() const noexcept { return pos_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_), pos_);
  }

  [[noreturn]] void fail_unsupported(const std::string& name,
                                     std::size_t at) const {
    throw UnsupportedTermError(
        "unsupported source function '" + name + "' at position " +
            std::to_string(at),
        at);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// drag := "(" number "/x" ")" "*" "Dy"
double parse_drag(Cursor& c) {
  c.expect('(', "drag term");
  double k = c.number();
  c.expect('/', "drag term");
  c.expect('x', "drag term");
  c.expect(')', "drag term");
  c.expect('*', "drag term");
  if (!c.eat("Dy")) c.fail("expected 'Dy' after the drag factor");
  return k;
}

// source := [number "*"] ["x^" integer "*"] func
SourceTerm parse_source(Cursor& c, double sign) {
  SourceTerm t;
  t.c = sign;
  t.s = 0;
  if (c.at_number()) {
    double v = c.number();
    if (!c.eat('*')) {
      // A bare number is the constant source "1" (or a scaled one).
      t.c = sign * v;
      t.kind = SourceKind::power(0);
      return t;
    }
    t.c = sign * v;
  }
  if (c.peek() == 'x') {
    c.eat('x');
    c.expect('^', "x power");
    t.s = c.integer();
    c.expect('*', "x power");
  }
  c.skip_ws();
  std::size_t func_at = c.pos();
  if (c.peek() == 'y') {
    c.eat('y');
    t.kind = c.eat('^') ? SourceKind::power(c.integer()) : SourceKind::power(1);
  } else if (c.peek() == '1') {
    c.eat('1');
    t.kind = SourceKind::power(0);
  } else {
    std::string name = c.identifier();
    if (name == "exp") {
      c.expect('(', "exp source");
      double lambda = c.eat('-') ? -1.0 : 1.0;
      c.expect('y', "exp source");
      c.expect(')', "exp source");
      t.kind = SourceKind::exponential(lambda);
    } else if (!name.empty()) {
      c.fail_unsupported(name, func_at);
    } else {
      c.fail("expected a source function (y, y^n, exp(y), exp(-y) or 1)");
    }
  }
  return t;
}

// poly := number (sign [number "*"] "x^" integer | sign number)*
// A leading sign and a leading x^j term are accepted as a convenience.
std::vector<double> parse_poly(Cursor& c) {
  std::vector<double> rhs;
  auto add = [&rhs](int power, double value) {
    if (rhs.size() <= static_cast<std::size_t>(power)) {
      rhs.resize(static_cast<std::size_t>(power) + 1, 0.0);
    }
    rhs[static_cast<std::size_t>(power)] += value;
  };
  auto element = [&](double sign) {
    if (c.at_number()) {
      double v = c.number();
      if (c.eat('*')) {
        c.expect('x', "polynomial term");
        c.expect('^', "polynomial term");
        add(c.integer(), sign * v);
      } else {
        add(0, sign * v);
      }
    } else if (c.peek() == 'x') {
      c.eat('x');
      c.expect('^', "polynomial term");
      add(c.integer(), sign);
    } else {
      c.fail("expected a polynomial term");
    }
  };
  double lead = 1.0;
  if (c.eat('-')) {
    lead = -1.0;
  } else {
    c.eat('+');
  }
  element(lead);
  while (true) {
    if (c.eat('+')) {
      element(1.0);
    } else if (c.eat('-')) {
      element(-1.0);
    } else {
      break;
    }
  }
  while (!rhs.empty() && rhs.back() == 0.0) rhs.pop_back();
  return rhs;
}

}  // namespace

EquationSpec parse_equation(std::string_view text, double alpha, double y0,
                            double dy0) {
  Cursor c(text);
  if (!c.eat("D2y")) c.fail("equation must start with 'D2y'");
  EquationSpec spec;
  spec.alpha = alpha;
  spec.y0 = y0;
  spec.dy0 = dy0;
  while (true) {
    char next = c.peek();
    if (next == '=') break;
    double sign;
    if (c.eat('+')) {
      sign = 1.0;
    } else if (c.eat('-')) {
      sign = -1.0;
    } else {
      c.fail("expected '+', '-' or '='");
    }
    if (c.peek() == '(') {
      spec.k += sign * parse_drag(c);
    } else {
      spec.terms.push_back(parse_source(c, sign));
    }
  }
  c.expect('=', "equation");
  spec.rhs = parse_poly(c);
  if (!c.at_end()) c.fail("unexpected trailing input");
  return spec;
}

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) {
    throw std::invalid_argument(std::string("spec json: missing field \"") +
                                field + "\"");
  }
  return j.at(field);
}

double number_field(const json& j, const char* field) {
  const json& v = require_field(j, field);
  if (!v.is_number()) {
    throw std::invalid_argument(std::string("spec json: field \"") + field +
                                "\" must be a number");
  }
  return v.get<double>();
}

int integer_field(const json& j, const char* field) {
  const json& v = require_field(j, field);
  if (!v.is_number_integer()) {
    throw std::invalid_argument(std::string("spec json: field \"") + field +
                                "\" must be an integer");
  }
  return v.get<int>();
}

}  // namespace

nlohmann::json spec_to_json(const EquationSpec& spec) {
  json terms = json::array();
  for (const SourceTerm& t : spec.terms) {
    json kind;
    if (t.kind.tag == SourceKind::Tag::power) {
      kind = json{{"power", t.kind.n}};
    } else {
      kind = json{{"exp", t.kind.lambda}};
    }
    terms.push_back(json{{"c", t.c}, {"s", t.s}, {"kind", kind}});
  }
  return json{{"alpha", spec.alpha}, {"k", spec.k},   {"terms", terms},
              {"rhs", spec.rhs},     {"y0", spec.y0}, {"dy0", spec.dy0}};
}

EquationSpec spec_from_json(const nlohmann::json& j) {
  EquationSpec spec;
  spec.alpha = number_field(j, "alpha");
  spec.k = number_field(j, "k");
  const json& terms = require_field(j, "terms");
  if (!terms.is_array()) {
    throw std::invalid_argument("spec json: field \"terms\" must be an array");
  }
  for (const json& jt : terms) {
    SourceTerm t;
    t.c = number_field(jt, "c");
    t.s = integer_field(jt, "s");
    const json& kind = require_field(jt, "kind");
    if (kind.is_object() && kind.size() == 1 && kind.contains("power")) {
      t.kind = SourceKind::power(integer_field(kind, "power"));
    } else if (kind.is_object() && kind.size() == 1 && kind.contains("exp")) {
      t.kind = SourceKind::exponential(number_field(kind, "exp"));
    } else {
      throw std::invalid_argument(
          "spec json: field \"kind\" must be {\"power\": n} or {\"exp\": "
          "lambda}");
    }
    spec.terms.push_back(t);
  }
  const json& rhs = require_field(j, "rhs");
  if (!rhs.is_array()) {
    throw std::invalid_argument("spec json: field \"rhs\" must be an array");
  }
  for (const json& jr : rhs) {
    if (!jr.is_number()) {
      throw std::invalid_argument(
          "spec json: field \"rhs\" must contain numbers");
    }
    spec.rhs.push_back(jr.get<double>());
  }
  spec.y0 = number_field(j, "y0");
  spec.dy0 = number_field(j, "dy0");
  return spec;
}

}  // namespace fraclane
