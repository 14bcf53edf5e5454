#include "hdw/rmt/stieltjes.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace hdw::rmt {

namespace {

constexpr double kNewtonSwitch = 1e-4;

cplx silverstein_map(cplx z, cplx m_bar, double c, const SpectralDistribution& h) {
  return z + 1.0 / m_bar - c * h.resolvent1(m_bar);
}

cplx into_upper_half(cplx m) {
  if (m.imag() > 0.0) return m;
  if (m.imag() < 0.0) return std::conj(m);
  return {m.real(), std::numeric_limits<double>::epsilon() * (1.0 + std::abs(m.real()))};
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw ParameterError("solver tolerance must be positive");
  if (max_iter < 1) throw ParameterError("solver max_iter must be >= 1");
  if (!(damping > 0.0 && damping <= 1.0)) throw ParameterError("solver damping must lie in (0, 1]");
}

double silverstein_residual(cplx z, cplx m_bar, double c, const SpectralDistribution& h) {
  return std::abs(silverstein_map(z, m_bar, c, h));
}

StieltjesPoint solve_silverstein(cplx z, double c, const SpectralDistribution& h,
                                 const SolverConfig& cfg, std::optional<cplx> initial) {
  cfg.validate();
  if (!(z.imag() > 0.0)) throw ParameterError("Silverstein solver needs Im z > 0");
  if (!(c > 0.0)) throw ParameterError("dimension ratio c must be positive");

  cplx m = into_upper_half(initial.value_or(cplx{0.0, 1.0}));
  cplx f = silverstein_map(z, m, c, h);
  double res = std::abs(f);
  int it = 0;
  while (res >= cfg.tol && it < cfg.max_iter) {
    ++it;
    if (res < kNewtonSwitch) {
      const cplx df = -1.0 / (m * m) + c * h.resolvent2(m);
      const cplx trial = m - f / df;
      if (trial.imag() > 0.0 && std::isfinite(trial.real())) {
        const cplx ft = silverstein_map(z, trial, c, h);
        if (std::abs(ft) < res) {
          m = trial;
          f = ft;
          res = std::abs(ft);
          continue;
        }
      }
    }
    const cplx target = 1.0 / (-z + c * h.resolvent1(m));
    m = into_upper_half((1.0 - cfg.damping) * m + cfg.damping * target);
    f = silverstein_map(z, m, c, h);
    res = std::abs(f);
    if (!std::isfinite(res)) break;
  }
  if (!(res < cfg.tol)) {
    std::ostringstream os;
    os << "Silverstein solver did not converge at z=" << z << " (residual " << res << " after "
       << it << " iterations)";
    throw SolverError(os.str(), res, it);
  }
  StieltjesPoint pt;
  pt.z = z;
  pt.m_bar = m;
  pt.m = (m + (1.0 - c) / z) / c;
  pt.residual = res;
  pt.iterations = it;
  return pt;
}

StieltjesPoint companion_transform(cplx z, double c, const SpectralDistribution& h,
                                   const SolverConfig& cfg, std::optional<cplx> initial) {
  if (z.imag() > 0.0) return solve_silverstein(z, c, h, cfg, initial);
  if (z.imag() == 0.0) throw ParameterError("companion transform needs Im z != 0");
  std::optional<cplx> init;
  if (initial) init = std::conj(*initial);
  StieltjesPoint pt = solve_silverstein(std::conj(z), c, h, cfg, init);
  pt.z = z;
  pt.m = std::conj(pt.m);
  pt.m_bar = std::conj(pt.m_bar);
  return pt;
}

cplx companion_derivative(cplx m_bar, double c, const SpectralDistribution& h) {
  // z(m) = -1/m + c int t/(1+tm) dH  =>  dz/dm = 1/m^2 - c int t^2/(1+tm)^2 dH
  return 1.0 / (1.0 / (m_bar * m_bar) - c * h.resolvent2(m_bar));
}

double lsd_density(double x, double c, const SpectralDistribution& h, const SolverConfig& cfg) {
  constexpr std::array<double, 5> heights{1.0, 1e-1, 1e-2, 1e-3, kDensitySmoothing};
  std::optional<cplx> guess;
  StieltjesPoint pt;
  for (double y : heights) {
    pt = solve_silverstein({x, y}, c, h, cfg, guess);
    guess = pt.m_bar;
  }
  return pt.m.imag() / std::numbers::pi;
}

}  // namespace hdw::rmt
