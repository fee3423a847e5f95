#include "fraclane/gamma.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fraclane {

namespace {

void require_positive_finite(double x, const char* fn) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::domain_error(std::string(fn) +
                            ": argument must be finite and positive, got " +
                            std::to_string(x));
  }
}

// ln Gamma for x > 0. lgamma_r avoids the signgam global that plain lgamma
// writes; the sign is always +1 on this domain.
double lgamma_positive(double x) {
#if defined(__GLIBC__) || defined(__APPLE__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

}  // namespace

double gamma(double x) {
  require_positive_finite(x, "gamma");
  double g = std::tgamma(x);
  if (!std::isfinite(g)) {
    throw std::overflow_error("gamma: result overflows at x = " +
                              std::to_string(x));
  }
  return g;
}

double log_gamma(double x) {
  require_positive_finite(x, "log_gamma");
  return lgamma_positive(x);
}

double gamma_ratio(double num, double den) {
  require_positive_finite(num, "gamma_ratio");
  require_positive_finite(den, "gamma_ratio");
  double r = std::exp(lgamma_positive(num) - lgamma_positive(den));
  if (!std::isfinite(r)) {
    throw std::overflow_error("gamma_ratio: Gamma(" + std::to_string(num) +
                              ")/Gamma(" + std::to_string(den) +
                              ") overflows");
  }
  return r;
}

}  // namespace fraclane
