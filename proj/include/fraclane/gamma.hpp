#pragma once

namespace fraclane {

// Gamma(x) for finite x > 0.
// Throws std::domain_error for x <= 0 or non-finite x, and std::overflow_error
// where Gamma(x) exceeds the double range (x above ~171.6); it never silently
// returns an infinity.
double gamma(double x);

// ln Gamma(x) for finite x > 0. Same domain policy as gamma().
double log_gamma(double x);

// Gamma(num) / Gamma(den) for finite num, den > 0, evaluated in log space as
// exp(log_gamma(num) - log_gamma(den)). The ratio stays accurate where the
// individual Gamma values would overflow, e.g. gamma_ratio(501, 500) == 500.
double gamma_ratio(double num, double den);

}  // namespace fraclane
