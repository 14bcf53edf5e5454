#pragma once

#include <optional>

#include "hdw/clt/contour.hpp"
#include "hdw/clt/moments.hpp"
#include "hdw/clt/polynomial.hpp"
#include "hdw/rmt/spectral_distribution.hpp"
#include "hdw/rmt/stieltjes.hpp"

namespace hdw::clt {

struct ContourOptions {
  int nodes = 800;
  double half_height = 1.0;
  /// Outer contour of the double integral is the inner one scaled by this.
  double outer_scale = 1.15;
  /// Replaces the default rectangle; must still enclose the support bound.
  std::optional<ContourSpec> inner;
};

/// The kernels of the CLT mean and covariance, evaluated on demand through
/// the Silverstein solver.
///
///   g1(z) = c m^3 int t^2/(1+tm)^3 dH_r,  g2(z) = c m^2 int t^2/(1+tm)^2 dH_r,
///   a(z1, z2) = c int t1 t2 m_r(z1) m_s(z2) / ((1+t1 m_r(z1))(1+t2 m_s(z2))) dH_rs
///
/// with m = m_bar the companion transform for the relevant marginal.
class CltFunctionals {
 public:
  CltFunctionals(double c, rmt::JointSpectralDistribution h_rs, rmt::SolverConfig cfg = {});
  /// Single population law (H_rs on the diagonal).
  CltFunctionals(double c, const rmt::SpectralDistribution& h, rmt::SolverConfig cfg = {});

  double c() const noexcept { return c_; }
  const rmt::SpectralDistribution& h_r() const noexcept { return h_r_; }
  const rmt::SpectralDistribution& h_s() const noexcept { return h_s_; }

  cplx m_bar_r(cplx z) const;
  cplx m_bar_s(cplx z) const;
  cplx g1(cplx z) const;
  cplx g2(cplx z) const;
  cplx a(cplx z1, cplx z2) const;

 private:
  double c_;
  rmt::JointSpectralDistribution h_rs_;
  rmt::SpectralDistribution h_r_;
  rmt::SpectralDistribution h_s_;
  rmt::SolverConfig cfg_;
};

cplx eval_a(cplx z1, cplx z2, double c, const rmt::JointSpectralDistribution& h_rs,
            const rmt::SolverConfig& cfg = {});

/// E X_f = -(1/2 pi i) oint f g1 [alpha/((1-g2)(1-alpha g2)) + beta/(1-g2)] dz.
double clt_mean(const Polynomial& f, double c, const rmt::SpectralDistribution& h,
                const MomentProfile& mp, const rmt::SolverConfig& cfg = {},
                const ContourOptions& contour = {});

/// Cov(X_f1, X_f2) = (1/4 pi^2) oint oint f1(z1) f2(z2) d^2 g / dz1 dz2 dz1 dz2
/// with g = log(1-a) + log(1-alpha a) - beta a.
///
/// With `companion_side` the solver runs at ratio 1/c, i.e. the roles of the
/// dimension and the sample size are exchanged. This is the orientation of
/// the lag statistics, whose population matrices are n x n.
double clt_cov(const Polynomial& f1, const Polynomial& f2, double c,
               const rmt::JointSpectralDistribution& h_rs, const MomentProfile& mp,
               const rmt::SolverConfig& cfg = {}, bool companion_side = false,
               const ContourOptions& contour = {});

/// int f dF^{c,H}, the centering term of the linear spectral statistic.
double lsd_moment(const Polynomial& f, double c, const rmt::SpectralDistribution& h,
                  const rmt::SolverConfig& cfg = {}, const ContourOptions& contour = {});

}  // namespace hdw::clt
