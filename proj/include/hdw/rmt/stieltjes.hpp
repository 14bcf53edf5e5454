#pragma once

#include <optional>

#include "hdw/core.hpp"
#include "hdw/rmt/spectral_distribution.hpp"

namespace hdw::rmt {

struct SolverConfig {
  double tol = 1e-10;     ///< residual tolerance for the Silverstein equation
  int max_iter = 10000;   ///< total iteration budget (fixed-point + Newton)
  double damping = 0.5;   ///< weight of the new fixed-point iterate, in (0, 1]

  void validate() const;
};

/// A solved point: m is the Stieltjes transform of F^{c,H} at z, m_bar the
/// companion transform with m_bar = -(1 - c)/z + c m.
struct StieltjesPoint {
  cplx z;
  cplx m;
  cplx m_bar;
  double residual = 0.0;
  int iterations = 0;
};

/// Smoothing height used for Stieltjes inversion in lsd_density.
inline constexpr double kDensitySmoothing = 1e-4;

/// |z + 1/m_bar - c int t/(1 + t m_bar) dH|
double silverstein_residual(cplx z, cplx m_bar, double c, const SpectralDistribution& h);

/// Solve z = -1/m_bar + c int t/(1 + t m_bar) dH(t) for m_bar in the upper
/// half plane, Im z > 0.
///
/// Damped fixed-point iteration m_bar <- 1/(-z + c int t/(1 + t m_bar) dH),
/// started from `initial` (default i). Iterates that fall out of the upper
/// half plane are reflected to their conjugate. Once the residual is small
/// the iterate is polished with safeguarded Newton steps.
///
/// Throws ParameterError for Im z <= 0 or c <= 0 and SolverError when the
/// residual stays above cfg.tol after cfg.max_iter iterations.
StieltjesPoint solve_silverstein(cplx z, double c, const SpectralDistribution& h,
                                 const SolverConfig& cfg = {},
                                 std::optional<cplx> initial = std::nullopt);

/// solve_silverstein extended to the lower half plane by m(conj z) = conj m(z).
StieltjesPoint companion_transform(cplx z, double c, const SpectralDistribution& h,
                                   const SolverConfig& cfg = {},
                                   std::optional<cplx> initial = std::nullopt);

/// d m_bar / dz from implicit differentiation of the Silverstein equation.
cplx companion_derivative(cplx m_bar, double c, const SpectralDistribution& h);

/// Density of F^{c,H} at x, (1/pi) Im m(x + i eps) with eps = kDensitySmoothing.
/// The solve is continued down from Im z = 1 so the small-eps solve starts
/// next to its root.
double lsd_density(double x, double c, const SpectralDistribution& h, const SolverConfig& cfg = {});

}  // namespace hdw::rmt
