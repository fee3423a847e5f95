#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fraclane/equation.hpp"
#include "fraclane/series.hpp"

namespace fraclane {

// Numerical failure during the coefficient march.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, int order)
      : std::runtime_error(what), order_(order) {}
  int order() const noexcept { return order_; }

 private:
  int order_;
};

// |A_m| exceeded 1e300 (or became non-finite) at order m.
class MarchOverflowError : public SolverError {
 public:
  explicit MarchOverflowError(int order)
      : SolverError("series coefficient overflow at order " +
                        std::to_string(order),
                    order) {}
};

// The left-hand factor L(m) vanished or was non-finite; cannot occur for
// k >= 0 but negative drag coefficients can hit it.
class SingularFactorError : public SolverError {
 public:
  explicit SingularFactorError(int order)
      : SolverError("singular left-hand factor at order " +
                        std::to_string(order),
                    order) {}
};

// Factor multiplying A_m once the equation is scaled by X^2:
//   L(m) = Gamma(m a + 1) [ 1/Gamma((m-2) a + 1) + k/Gamma((m-1) a + 1) ],
// evaluated through gamma_ratio. Requires m >= 2 and 0 < alpha <= 1.
double lhs_factor(int m, double alpha, double k);

// A solved truncated series together with its originating spec and the
// per-term composition series (y^n or exp(lambda y)) used by the march.
struct SeriesSolution {
  EquationSpec spec;
  FracSeries series;
  std::vector<FracSeries> compositions; // one per spec.terms entry
};

// Marches the balance of X^m coefficients
//   L(m) A_m + sum_t c_t Q^(t)_{m-2-s_t} = r_{m-2},   m = 2..M,
// from A_0 = y0 and A_1 = dy0 / Gamma(a + 1). Composition series are extended
// one order per step, so A_m never depends on coefficients above m and
// re-solving with a smaller M reproduces the prefix bitwise.
//
// Throws std::invalid_argument for M < 2 or a spec with validation
// violations, MarchOverflowError / SingularFactorError on numerical failure.
SeriesSolution solve(const EquationSpec& spec, int M = 30);

// Per-order coefficients of the defect series
//   X^2 [ D2 y + (k/x^a) D y + sum_t c_t x^(s_t a) F_t(y) - RHS ]
// for the checked orders, plus the largest coefficient magnitude and the
// largest single contribution ("scale") encountered while assembling it.
struct ResidualReport {
  std::vector<int> orders;
  std::vector<double> residual;
  double max_abs = 0.0;
  double scale = 0.0;
};

// Rebuilds every composition independently with frac_power / frac_exp and
// assembles the defect through frac_deriv and linear_combine; orders 2..M are
// reported (everything below is fixed by the initial values).
ResidualReport residual(const SeriesSolution& sol);

}  // namespace fraclane
