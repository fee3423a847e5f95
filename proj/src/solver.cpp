#include "fraclane/solver.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "fraclane/gamma.hpp"

namespace fraclane {

double lhs_factor(int m, double alpha, double k) {
  if (m < 2) throw std::domain_error("lhs_factor: m must be >= 2");
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) {
    throw std::domain_error("lhs_factor: alpha must satisfy 0 < alpha <= 1");
  }
  if (!std::isfinite(k)) throw std::domain_error("lhs_factor: k not finite");
  double top = m * alpha + 1.0;
  return gamma_ratio(top, (m - 2) * alpha + 1.0) +
         k * gamma_ratio(top, (m - 1) * alpha + 1.0);
}

namespace {

// Composition series Q of one source term, grown one order per march step so
// that Q_j only ever reads solution coefficients A_0..A_j.
class CompositionTracker {
 public:
  CompositionTracker(const SourceKind& kind, double y0, double alpha,
                     int max_order)
      : kind_(kind), grid_(alpha) {
    if (kind.tag == SourceKind::Tag::power) {
      if (kind.n == 0) {
        mode_ = Mode::constant_one;
      } else if (kind.n == 1) {
        mode_ = Mode::identity;
      } else if (y0 != 0.0) {
        mode_ = Mode::recurrence;
        power_.emplace(kind.n, max_order, alpha);
      } else {
        mode_ = Mode::products;
        powers_.resize(static_cast<std::size_t>(kind.n) - 1);
      }
    } else {
      mode_ = Mode::exponential;
    }
  }

  void extend_to(std::span<const double> a, int order) {
    while (static_cast<int>(q_.size()) <= order) {
      int j = static_cast<int>(q_.size());
      switch (mode_) {
        case Mode::constant_one:
          q_.push_back(j == 0 ? 1.0 : 0.0);
          break;
        case Mode::identity:
          q_.push_back(a[static_cast<std::size_t>(j)]);
          break;
        case Mode::recurrence:
          q_.push_back(power_->append(a));
          break;
        case Mode::products:
          for (std::size_t p = 0; p < powers_.size(); ++p) {
            std::span<const double> lhs =
                (p == 0) ? a : std::span<const double>(powers_[p - 1]);
            powers_[p].push_back(detail::product_coeff(lhs, a, j, grid_));
          }
          q_.push_back(powers_.back().back());
          break;
        case Mode::exponential:
          if (j == 0) {
            q_.push_back(std::exp(kind_.lambda * a[0]));
          } else {
            q_.push_back(detail::exp_next(a, q_, kind_.lambda, grid_));
          }
          break;
      }
    }
  }

  double coeff(int j) const {
    if (j < 0) return 0.0;
    return q_[static_cast<std::size_t>(j)];
  }

  std::vector<double> take() && { return std::move(q_); }

 private:
  enum class Mode { constant_one, identity, recurrence, products, exponential };

  SourceKind kind_;
  Mode mode_ = Mode::identity;
  detail::GammaGrid grid_;
  std::optional<detail::PowerSeq> power_;   // recurrence state (y0 != 0)
  std::vector<std::vector<double>> powers_; // partial powers y^2..y^n
  std::vector<double> q_;
};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

}  // namespace

SeriesSolution solve(const EquationSpec& spec, int M) {
  if (auto violations = validate(spec); !violations.empty()) {
    throw std::invalid_argument("invalid equation spec: " + join(violations));
  }
  if (M < 2) throw std::invalid_argument("solve: M must be >= 2");

  std::vector<double> a;
  a.reserve(static_cast<std::size_t>(M) + 1);
  a.push_back(spec.y0);
  a.push_back(spec.dy0 / gamma(spec.alpha + 1.0));

  std::vector<CompositionTracker> trackers;
  trackers.reserve(spec.terms.size());
  for (const SourceTerm& t : spec.terms) {
    trackers.emplace_back(t.kind, spec.y0, spec.alpha, M - 2);
  }

  for (int m = 2; m <= M; ++m) {
    for (CompositionTracker& tracker : trackers) {
      tracker.extend_to(a, m - 2);
    }
    double lhs = lhs_factor(m, spec.alpha, spec.k);
    if (lhs == 0.0 || !std::isfinite(lhs)) throw SingularFactorError(m);
    double source = 0.0;
    for (std::size_t t = 0; t < spec.terms.size(); ++t) {
      source += spec.terms[t].c * trackers[t].coeff(m - 2 - spec.terms[t].s);
    }
    double r = (m - 2 < static_cast<int>(spec.rhs.size()))
                   ? spec.rhs[static_cast<std::size_t>(m - 2)]
                   : 0.0;
    double am = (r - source) / lhs;
    if (!std::isfinite(am) || std::abs(am) > 1e300) {
      throw MarchOverflowError(m);
    }
    a.push_back(am);
  }

  std::vector<FracSeries> compositions;
  compositions.reserve(trackers.size());
  for (CompositionTracker& tracker : trackers) {
    compositions.emplace_back(spec.alpha, std::move(tracker).take());
  }
  return SeriesSolution{spec, FracSeries(spec.alpha, std::move(a)),
                        std::move(compositions)};
}

ResidualReport residual(const SeriesSolution& sol) {
  const EquationSpec& spec = sol.spec;
  const FracSeries& y = sol.series;
  int M = y.order();
  if (M < 2) {
    throw std::invalid_argument("residual: solution must have order >= 2");
  }

  FracSeries d1 = frac_deriv(y);
  FracSeries d2 = frac_deriv(d1);

  std::vector<ScaledTerm> parts;
  parts.push_back({1.0, 2, d2});
  parts.push_back({spec.k, 1, d1});
  for (const SourceTerm& t : spec.terms) {
    FracSeries comp = (t.kind.tag == SourceKind::Tag::power)
                          ? frac_power(y, t.kind.n)
                          : frac_exp(y, t.kind.lambda);
    parts.push_back({t.c, t.s + 2, std::move(comp)});
  }
  // The right-hand side is an exact polynomial, so padding it with true
  // zeros up to the solution order is legitimate.
  std::vector<double> rhs = spec.rhs;
  if (rhs.size() < static_cast<std::size_t>(M - 1)) {
    rhs.resize(static_cast<std::size_t>(M - 1), 0.0);
  }
  parts.push_back({-1.0, 2, FracSeries(spec.alpha, std::move(rhs))});

  FracSeries defect = linear_combine(parts);

  ResidualReport report;
  for (int m = 2; m <= defect.order(); ++m) {
    report.orders.push_back(m);
    double rm = defect.coeffs()[static_cast<std::size_t>(m)];
    report.residual.push_back(rm);
    report.max_abs = std::max(report.max_abs, std::abs(rm));
    for (const ScaledTerm& part : parts) {
      double contribution = part.scale * part.series.coeff(m - part.shift);
      report.scale = std::max(report.scale, std::abs(contribution));
    }
  }
  return report;
}

}  // namespace fraclane
