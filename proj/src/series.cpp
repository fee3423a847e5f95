#include "fraclane/series.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fraclane/gamma.hpp"

namespace fraclane {

namespace detail {

GammaGrid::GammaGrid(double alpha) : alpha_(alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) {
    throw std::domain_error("GammaGrid: alpha must satisfy 0 < alpha <= 1");
  }
}

double GammaGrid::lg_alpha(int j) {
  for (int i = static_cast<int>(lga_.size()); i <= j; ++i) {
    lga_.push_back(log_gamma(i * alpha_ + 1.0));
  }
  return lga_[static_cast<std::size_t>(j)];
}

double GammaGrid::lg_fact(int j) {
  for (int i = static_cast<int>(lgf_.size()); i <= j; ++i) {
    lgf_.push_back(log_gamma(i + 1.0));
  }
  return lgf_[static_cast<std::size_t>(j)];
}

namespace {

double at_or_zero(std::span<const double> v, int i) {
  return (i >= 0 && i < static_cast<int>(v.size()))
             ? v[static_cast<std::size_t>(i)]
             : 0.0;
}

}  // namespace

double product_coeff(std::span<const double> f, std::span<const double> g,
                     int k, GammaGrid& grid) {
  // Pairs (j, k-j) share one weight and are added as f_j g_i + f_i g_j, which
  // keeps the whole sum bitwise symmetric in f and g.
  double total = 0.0;
  for (int j = 0; 2 * j <= k; ++j) {
    int i = k - j;
    double w = std::exp(grid.lg_fact(k) - grid.lg_fact(j) - grid.lg_fact(i) +
                        grid.lg_alpha(j) + grid.lg_alpha(i) -
                        grid.lg_alpha(k));
    double cross = (j == i) ? at_or_zero(f, j) * at_or_zero(g, i)
                            : at_or_zero(f, j) * at_or_zero(g, i) +
                                  at_or_zero(f, i) * at_or_zero(g, j);
    total += w * cross;
  }
  return total;
}

namespace {

// Error-free transformations (Knuth two-sum, fma-based product). Together
// they keep Comp values accurate to ~2^-106, which is what lets the power
// recurrence feed its own output back without accumulating rounding.
Comp two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

Comp quick_two_sum(double a, double b) {  // requires |a| >= |b| or a == 0
  double s = a + b;
  return {s, b - (s - a)};
}

void comp_add(Comp& acc, const Comp& t) {
  Comp s = two_sum(acc.hi, t.hi);
  s.lo += acc.lo + t.lo;
  acc = quick_two_sum(s.hi, s.lo);
}

Comp two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

Comp comp_mul(const Comp& a, double b) {
  double p = a.hi * b;
  double e = std::fma(a.hi, b, -p);
  return quick_two_sum(p, std::fma(a.lo, b, e));
}

Comp comp_mul(const Comp& a, const Comp& b) {
  double p = a.hi * b.hi;
  double e = std::fma(a.hi, b.hi, -p);
  e += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p, e);
}

Comp comp_div(const Comp& a, double b) {
  double q1 = a.hi / b;
  double r = std::fma(-q1, b, a.hi) + a.lo;
  return quick_two_sum(q1, r / b);
}

}  // namespace

PowerSeq::PowerSeq(int n, int max_order, double alpha)
    : grid_(alpha), n_(n) {
  // The rescaled form is usable only while Gamma(i a + 1)/i! and its
  // reciprocal stay comfortably inside double range for every index in the
  // window (the margin keeps rescaled values of representable coefficients
  // out of the subnormal band).
  double worst = 0.0;
  for (int i = 0; i <= max_order; ++i) {
    worst = std::min(worst, grid_.lg_alpha(i) - grid_.lg_fact(i));
  }
  hat_mode_ = worst > -600.0;
  if (hat_mode_) {
    hatf_.reserve(static_cast<std::size_t>(max_order) + 1);
    unhatf_.reserve(static_cast<std::size_t>(max_order) + 1);
    for (int i = 0; i <= max_order; ++i) {
      if (i <= 170) {
        // Both gamma values are finite here (Gamma(171) < DBL_MAX); the
        // direct ratio is a few ulp, much tighter than exp of a log
        // difference.
        double ga = fraclane::gamma(i * grid_.alpha() + 1.0);
        double gf = fraclane::gamma(i + 1.0);
        hatf_.push_back(ga / gf);
        unhatf_.push_back(gf / ga);
      } else {
        double d = grid_.lg_alpha(i) - grid_.lg_fact(i);
        hatf_.push_back(std::exp(d));
        unhatf_.push_back(std::exp(-d));
      }
    }
  }
  q_.reserve(static_cast<std::size_t>(max_order) + 1);
  raw_.reserve(static_cast<std::size_t>(max_order) + 1);
}

double PowerSeq::append(std::span<const double> a) {
  int m = size();
  if (m == 0) {
    double q0 = std::pow(a[0], static_cast<double>(n_));
    q_.push_back(Comp{q0, 0.0});
    raw_.push_back(q0);
    return q0;
  }
  Comp acc;
  int top = std::min(m, static_cast<int>(a.size()) - 1);
  for (int i = 1; i <= top; ++i) {
    double ai = a[static_cast<std::size_t>(i)];
    if (ai == 0.0) continue;
    double coef =
        static_cast<double>(static_cast<long long>(n_ + 1) * i - m);
    if (coef == 0.0) continue;
    // Every product and the divisions stay in compensated form: the
    // recurrence can amplify per-term perturbations by ~1e7, so even 1-ulp
    // rounding inside the loop would surface at ~1e-9 in the result.
    if (hat_mode_) {
      Comp s = comp_mul(two_prod(hatf_[static_cast<std::size_t>(i)], ai),
                        coef);
      comp_add(acc, comp_mul(q_[static_cast<std::size_t>(m - i)], s));
    } else {
      // Log-space weight of the original formulation; (m-1)! instead of
      // m!/m, so the division below is by a[0] alone.
      double w =
          std::exp(grid_.lg_fact(m - 1) + grid_.lg_alpha(m - i) +
                   grid_.lg_alpha(i) - grid_.lg_fact(i) -
                   grid_.lg_fact(m - i) - grid_.lg_alpha(m));
      comp_add(acc, comp_mul(q_[static_cast<std::size_t>(m - i)],
                             coef * w * ai));
    }
  }
  Comp qm = hat_mode_
                ? comp_div(comp_div(acc, static_cast<double>(m)), a[0])
                : comp_div(acc, a[0]);
  q_.push_back(qm);
  double raw = hat_mode_
                   ? (qm.hi + qm.lo) * unhatf_[static_cast<std::size_t>(m)]
                   : qm.hi + qm.lo;
  raw_.push_back(raw);
  return raw;
}

double exp_next(std::span<const double> a, std::span<const double> r,
                double lambda, GammaGrid& grid) {
  int l = static_cast<int>(r.size());
  double sum = 0.0;
  for (int i = 1; i <= l; ++i) {
    double ai = at_or_zero(a, i);
    if (ai == 0.0) continue;
    double w =
        std::exp(grid.lg_fact(l - 1) + grid.lg_alpha(i) +
                 grid.lg_alpha(l - i) - grid.lg_fact(i - 1) -
                 grid.lg_fact(l - i) - grid.lg_alpha(l));
    sum += w * ai * r[static_cast<std::size_t>(l - i)];
  }
  return lambda * sum;
}

}  // namespace detail

FracSeries::FracSeries(double alpha, std::vector<double> coeffs)
    : alpha_(alpha), coeffs_(std::move(coeffs)) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) {
    throw std::domain_error("FracSeries: alpha must satisfy 0 < alpha <= 1");
  }
  for (std::size_t m = 0; m < coeffs_.size(); ++m) {
    if (!std::isfinite(coeffs_[m])) {
      throw std::invalid_argument("FracSeries: coefficient " +
                                  std::to_string(m) + " is not finite");
    }
  }
}

double FracSeries::coeff(int m) const noexcept {
  if (m < 0 || m >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(m)];
}

double FracSeries::evaluate(double x) const {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error("FracSeries::evaluate: x must be finite and >= 0");
  }
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t m = 0; m < coeffs_.size(); ++m) {
    double term = coeffs_[m] * std::pow(x, alpha_ * static_cast<double>(m));
    double next = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - next) + term;
    } else {
      comp += (term - next) + sum;
    }
    sum = next;
  }
  return sum + comp;
}

namespace {

void require_same_alpha(const FracSeries& f, const FracSeries& g,
                        const char* fn) {
  if (f.alpha() != g.alpha()) {
    throw std::invalid_argument(std::string(fn) +
                                ": operands have different alpha");
  }
}

}  // namespace

FracSeries linear_combine(const std::vector<ScaledTerm>& terms) {
  if (terms.empty()) {
    throw std::invalid_argument("linear_combine: at least one term required");
  }
  double alpha = terms.front().series.alpha();
  int out_order = std::numeric_limits<int>::max();
  for (const ScaledTerm& t : terms) {
    if (t.series.alpha() != alpha) {
      throw std::invalid_argument("linear_combine: mixed alpha values");
    }
    if (t.shift < 0) {
      throw std::invalid_argument("linear_combine: negative shift");
    }
    if (!std::isfinite(t.scale)) {
      throw std::invalid_argument("linear_combine: non-finite scale");
    }
    out_order = std::min(out_order, t.series.order() + t.shift);
  }
  if (out_order < 0) return FracSeries(alpha, {});
  std::vector<double> out(static_cast<std::size_t>(out_order) + 1, 0.0);
  for (int m = 0; m <= out_order; ++m) {
    double c = 0.0;
    for (const ScaledTerm& t : terms) {
      int j = m - t.shift;
      if (j >= 0 && j <= t.series.order()) {
        c += t.scale * t.series.coeffs()[static_cast<std::size_t>(j)];
      }
    }
    out[static_cast<std::size_t>(m)] = c;
  }
  return FracSeries(alpha, std::move(out));
}

FracSeries frac_product(const FracSeries& f, const FracSeries& g) {
  require_same_alpha(f, g, "frac_product");
  int out_order = std::min(f.order(), g.order());
  if (out_order < 0) return FracSeries(f.alpha(), {});
  detail::GammaGrid grid(f.alpha());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(out_order) + 1);
  for (int k = 0; k <= out_order; ++k) {
    out.push_back(detail::product_coeff(f.coeffs(), g.coeffs(), k, grid));
  }
  return FracSeries(f.alpha(), std::move(out));
}

FracSeries frac_power(const FracSeries& f, int n) {
  if (n < 0) {
    throw std::domain_error("frac_power: exponent must be >= 0");
  }
  if (n == 0) {
    std::vector<double> one(std::max<std::size_t>(f.size(), 1), 0.0);
    one[0] = 1.0;
    return FracSeries(f.alpha(), std::move(one));
  }
  if (n == 1 || f.size() == 0) return f;
  if (f.coeffs()[0] != 0.0) {
    // Miller-type recurrence; the input is a finite polynomial in X, so the
    // power is extended to its full order n*M.
    long long full = static_cast<long long>(n) * f.order();
    if (full > 1'000'000) {
      throw std::invalid_argument("frac_power: result order n*M too large");
    }
    int out_order = static_cast<int>(full);
    detail::PowerSeq seq(n, out_order, f.alpha());
    std::vector<double> q;
    q.reserve(static_cast<std::size_t>(out_order) + 1);
    for (int m = 0; m <= out_order; ++m) {
      q.push_back(seq.append(f.coeffs()));
    }
    return FracSeries(f.alpha(), std::move(q));
  }
  // A_0 = 0: the recurrence would divide by zero, fall back to repeated
  // products (truncated to order M like any binary operation).
  FracSeries acc = f;
  for (int i = 2; i <= n; ++i) acc = frac_product(acc, f);
  return acc;
}

FracSeries frac_exp(const FracSeries& f, double lambda) {
  if (!std::isfinite(lambda)) {
    throw std::domain_error("frac_exp: lambda must be finite");
  }
  if (f.size() == 0) return f;
  detail::GammaGrid grid(f.alpha());
  std::vector<double> r;
  r.reserve(f.size());
  r.push_back(std::exp(lambda * f.coeffs()[0]));
  for (int l = 1; l <= f.order(); ++l) {
    r.push_back(detail::exp_next(f.coeffs(), r, lambda, grid));
  }
  return FracSeries(f.alpha(), std::move(r));
}

FracSeries frac_deriv(const FracSeries& f) {
  if (f.size() <= 1) return FracSeries(f.alpha(), {});
  detail::GammaGrid grid(f.alpha());
  std::vector<double> out;
  out.reserve(f.size() - 1);
  for (int m = 1; m <= f.order(); ++m) {
    double factor = std::exp(grid.lg_alpha(m) - grid.lg_alpha(m - 1));
    out.push_back(f.coeffs()[static_cast<std::size_t>(m)] * factor);
  }
  return FracSeries(f.alpha(), std::move(out));
}

}  // namespace fraclane
