#pragma once

namespace hdw::stats {

/// Standard normal CDF.
double normal_cdf(double x);

/// 1 - Phi(x), computed from erfc so the far tail keeps full precision.
double normal_upper_tail(double x);

/// Phi^{-1}(u) for u in (0, 1).
double normal_quantile(double u);

}  // namespace hdw::stats
