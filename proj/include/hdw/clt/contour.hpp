#pragma once

#include "hdw/core.hpp"
#include "hdw/rmt/spectral_distribution.hpp"

namespace hdw::clt {

/// Interval [lo, hi] guaranteed to contain the support of F^{c,H}, from the
/// (1 -+ sqrt c)^2 edge bounds applied to the extreme population eigenvalues.
/// Negative population eigenvalues extend the interval symmetrically.
struct SupportBound {
  double lo;
  double hi;
};

SupportBound support_bound(double c, const rmt::SpectralDistribution& h);
SupportBound merge(SupportBound a, SupportBound b);

/// Rectangle {x_left, x_right} x [-half_height, half_height], positively
/// oriented.
struct ContourSpec {
  double x_left;
  double x_right;
  double half_height;
  int nodes;
};

/// Contour quadrature: nodes z_k and complex weights dz_k, so that
/// oint f(z) dz ~= sum_k f(z_k) dz_k.
struct ContourNodes {
  Eigen::VectorXcd z;
  Eigen::VectorXcd dz;
};

/// x_right = 1.2 hi; x_left = 1.2 lo for lo < 0, -0.5 for lo == 0 and
/// lo / 2 for lo > 0.
ContourSpec enclosing_contour(SupportBound bound, double half_height = 1.0, int nodes = 800);

/// Expanded copy that strictly contains `inner` (no shared points).
ContourSpec scaled_contour(const ContourSpec& inner, double factor);

/// Throws ParameterError when the rectangle meets or misses part of `bound`.
void check_encloses(const ContourSpec& spec, SupportBound bound);

/// Each edge is split into 16-point Gauss-Legendre panels, with panel counts
/// proportional to edge length; vertical edges get an even count so no node
/// sits on the real axis.
ContourNodes discretize(const ContourSpec& spec);

}  // namespace hdw::clt
