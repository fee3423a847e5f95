#pragma once

#include <span>
#include <vector>

namespace fraclane {

// Truncated fractional power series
//
//   F(x) = sum_{m=0}^{M} A_m X^m,   X = x^alpha,   0 < alpha <= 1.
//
// The coefficient vector stores A_0..A_M; an empty vector is the zero series
// with no determined orders. Coefficients beyond M are *unknown*, not zero:
// binary operations truncate to the shorter operand instead of zero-padding.
class FracSeries {
 public:
  // Throws std::domain_error unless 0 < alpha <= 1, and std::invalid_argument
  // if any coefficient is non-finite.
  FracSeries(double alpha, std::vector<double> coeffs);

  double alpha() const noexcept { return alpha_; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  // Highest stored order M; -1 for the empty (zero) series.
  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  // Coefficient of X^m; zero outside the stored range.
  double coeff(int m) const noexcept;

  // sum_m A_m x^(m*alpha) for x >= 0, accumulated in ascending order with
  // compensated (Neumaier) summation. Throws std::domain_error for x < 0.
  double evaluate(double x) const;

 private:
  double alpha_;
  std::vector<double> coeffs_;
};

// One addend of a linear combination: scale * X^shift * series.
struct ScaledTerm {
  double scale = 1.0;
  int shift = 0;
  FracSeries series;
};

// sum_t scale_t X^(shift_t) F_t. All terms must share alpha and have
// shift >= 0; the result is truncated to min_t(order_t + shift_t).
FracSeries linear_combine(const std::vector<ScaledTerm>& terms);

// Product in the fractional sense:
//   H_k = 1/Gamma(k a + 1) * sum_j C(k,j) Gamma(j a + 1) Gamma((k-j) a + 1) F_j G_{k-j},
// which reduces to the ordinary Cauchy product at alpha = 1. Truncated to
// min(M_F, M_G). Commutative with bitwise-equal coefficients.
FracSeries frac_product(const FracSeries& f, const FracSeries& g);

// F^n for integer n >= 0. n = 0 gives the constant one series, n = 1 returns
// F unchanged. For A_0 != 0 a Miller-type recurrence treats F as an exact
// polynomial and extends the result to order n*M; for A_0 = 0 the result is
// the (n-1)-fold frac_product, truncated to order M.
FracSeries frac_power(const FracSeries& f, int n);

// exp(lambda * F) via the recurrence
//   R_0 = exp(lambda A_0),
//   R_l = lambda (l-1)!/Gamma(l a + 1) *
//         sum_{i=1}^{l} Gamma(i a + 1) Gamma((l-i) a + 1) / ((i-1)! (l-i)!) A_i R_{l-i},
// truncated to order M.
FracSeries frac_exp(const FracSeries& f, double lambda);

// Fractional derivative: the coefficient of X^(m-1) in the result is
// A_m Gamma(m a + 1) / Gamma((m-1) a + 1). The order drops by one; the
// derivative of a constant series is the empty series.
FracSeries frac_deriv(const FracSeries& f);

namespace detail {

// Per-operation cache of ln Gamma(j a + 1) and ln j!. Instances are cheap and
// local to one operation, so the lazy growth needs no synchronisation.
class GammaGrid {
 public:
  explicit GammaGrid(double alpha);
  double lg_alpha(int j);  // ln Gamma(j * alpha + 1)
  double lg_fact(int j);   // ln j!
  double alpha() const noexcept { return alpha_; }

 private:
  double alpha_;
  std::vector<double> lga_;
  std::vector<double> lgf_;
};

// H_k of frac_product, reading f[0..k] and g[0..k] (absent entries are zero).
// Summed over symmetric index pairs so that swapping f and g is bitwise
// neutral.
double product_coeff(std::span<const double> f, std::span<const double> g,
                     int k, GammaGrid& grid);

// A compensated value hi + lo with |lo| <= ulp(hi)/2.
struct Comp {
  double hi = 0.0;
  double lo = 0.0;
};

// Incremental evaluator of the power recurrence: with Q = F^n and A_0 != 0,
//   Q_m = 1/(Gamma(m a + 1) A_0) * sum_{i=1}^{m}
//         (m-1)! Gamma((m-i) a + 1) Gamma(i a + 1) / (i! (m-i)!) (i n - m + i) A_i Q_{m-i}.
//
// Rescaling every coefficient by Gamma(i a + 1)/i! maps the weighted sum onto
// the classical power recurrence of the ordinary Cauchy algebra, whose weights
// are small exact integers. The evaluator works in that rescaled form and
// keeps the recurrence history compensated (double-double), so rounding of
// earlier Q values does not amplify through the feedback; without this the
// recurrence loses ~1e-9 relative accuracy against repeated products on
// adversarial data. When the rescaling factors leave the representable range
// (orders in the hundreds and beyond at small alpha) it falls back to the
// direct log-space weights, which stay finite at any order.
class PowerSeq {
 public:
  // n >= 2; max_order is the highest index append will be asked for. The
  // rescaled/log-space choice is made once from max_order, so two evaluators
  // with the same mode produce bitwise-identical prefixes.
  PowerSeq(int n, int max_order, double alpha);

  // Q_m for m == size(), reading a[0..m] (a[0] != 0; entries past the end of
  // a count as zero). The history grows by one.
  double append(std::span<const double> a);

  int size() const noexcept { return static_cast<int>(raw_.size()); }

 private:
  GammaGrid grid_;
  int n_;
  bool hat_mode_ = true;
  std::vector<double> hatf_;    // Gamma(i a + 1) / i!
  std::vector<double> unhatf_;  // i! / Gamma(i a + 1)
  std::vector<Comp> q_;         // recurrence history (rescaled in hat mode)
  std::vector<double> raw_;     // values handed out
};

// Next exponential coefficient R_l (l = r.size()) of exp(lambda F).
double exp_next(std::span<const double> a, std::span<const double> r,
                double lambda, GammaGrid& grid);

}  // namespace detail

}  // namespace fraclane
