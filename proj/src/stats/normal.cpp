#include "hdw/stats/normal.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "hdw/core.hpp"

namespace hdw::stats {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_upper_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw ParameterError("normal quantile needs u in (0, 1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

}  // namespace hdw::stats
