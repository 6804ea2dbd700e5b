#pragma once

namespace qgc {

/// Upper regularized incomplete gamma function Q(a, x) for a > 0, x >= 0,
/// computed by the power series for x < a+1 and by a continued fraction
/// otherwise. Relative accuracy is much better than 1e-6 over the chi-square
/// range used here; values below roughly 1e-308 underflow to 0.
double regularized_gamma_q(double a, double x);

/// Lower counterpart P(a, x) = 1 - Q(a, x).
double regularized_gamma_p(double a, double x);

}  // namespace qgc
