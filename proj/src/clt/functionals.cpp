#include "hdw/clt/functionals.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hdw::clt {

namespace {

constexpr double kMeanResidue = 1e-8;
constexpr double kCovResidue = 1e-6;
constexpr double kSingularGap = 1e-10;

struct NodeSolution {
  Eigen::VectorXcd m_bar;
  Eigen::VectorXcd dm_bar;
  Eigen::VectorXcd m;
};

// Walks the contour in order and warm-starts each solve from its neighbour.
NodeSolution solve_nodes(const ContourNodes& nodes, double c, const rmt::SpectralDistribution& h,
                         const rmt::SolverConfig& cfg) {
  const Index n = nodes.z.size();
  NodeSolution out{Eigen::VectorXcd(n), Eigen::VectorXcd(n), Eigen::VectorXcd(n)};
  std::optional<cplx> guess;
  for (Index k = 0; k < n; ++k) {
    const rmt::StieltjesPoint pt = rmt::companion_transform(nodes.z(k), c, h, cfg, guess);
    out.m_bar(k) = pt.m_bar;
    out.m(k) = pt.m;
    out.dm_bar(k) = rmt::companion_derivative(pt.m_bar, c, h);
    guess = pt.m_bar;
  }
  return out;
}

ContourSpec inner_contour(SupportBound bound, const ContourOptions& opt) {
  if (opt.inner) {
    check_encloses(*opt.inner, bound);
    return *opt.inner;
  }
  ContourSpec s = enclosing_contour(bound, opt.half_height, opt.nodes);
  check_encloses(s, bound);
  return s;
}

Eigen::VectorXcd weighted_values(const Polynomial& f, const ContourNodes& nodes) {
  Eigen::VectorXcd u(nodes.z.size());
  for (Index k = 0; k < u.size(); ++k) u(k) = f(nodes.z(k)) * nodes.dz(k);
  return u;
}

double real_part_checked(cplx value, double tol, const char* what) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw SingularityError(std::string(what) + ": contour quadrature produced a non-finite value");
  }
  if (std::abs(value.imag()) > tol * std::max(1.0, std::abs(value.real()))) {
    std::ostringstream os;
    os << what << ": imaginary residue " << value.imag() << " exceeds tolerance; refine the contour";
    throw SingularityError(os.str());
  }
  return value.real();
}

cplx mean_kernel(cplx z, const Polynomial& f, cplx g1, cplx g2, const MomentProfile& mp) {
  const cplx one_g2 = 1.0 - g2;
  cplx bracket = mp.beta_x / one_g2;
  if (mp.alpha_x != 0.0) bracket += mp.alpha_x / (one_g2 * (1.0 - mp.alpha_x * g2));
  return f(z) * g1 * bracket;
}

}  // namespace

CltFunctionals::CltFunctionals(double c, rmt::JointSpectralDistribution h_rs, rmt::SolverConfig cfg)
    : c_(c),
      h_rs_(std::move(h_rs)),
      h_r_(h_rs_.marginal(0)),
      h_s_(h_rs_.marginal(1)),
      cfg_(cfg) {
  if (!(c > 0.0)) throw ParameterError("dimension ratio c must be positive");
  cfg_.validate();
}

CltFunctionals::CltFunctionals(double c, const rmt::SpectralDistribution& h, rmt::SolverConfig cfg)
    : c_(c), h_rs_(rmt::JointSpectralDistribution::diagonal(h)), h_r_(h), h_s_(h), cfg_(cfg) {
  if (!(c > 0.0)) throw ParameterError("dimension ratio c must be positive");
  cfg_.validate();
}

cplx CltFunctionals::m_bar_r(cplx z) const { return rmt::companion_transform(z, c_, h_r_, cfg_).m_bar; }

cplx CltFunctionals::m_bar_s(cplx z) const { return rmt::companion_transform(z, c_, h_s_, cfg_).m_bar; }

cplx CltFunctionals::g1(cplx z) const {
  const cplx m = m_bar_r(z);
  const cplx integral = h_r_.integrate([m](double t) {
    const cplx d = 1.0 + t * m;
    return cplx(t * t) / (d * d * d);
  });
  return c_ * m * m * m * integral;
}

cplx CltFunctionals::g2(cplx z) const {
  const cplx m = m_bar_r(z);
  return c_ * m * m * h_r_.resolvent2(m);
}

cplx CltFunctionals::a(cplx z1, cplx z2) const {
  const cplx m1 = m_bar_r(z1);
  const cplx m2 = m_bar_s(z2);
  cplx acc{};
  for (const auto& at : h_rs_.atoms()) {
    acc += at.weight * (at.t1 * m1 / (1.0 + at.t1 * m1)) * (at.t2 * m2 / (1.0 + at.t2 * m2));
  }
  return c_ * acc;
}

cplx eval_a(cplx z1, cplx z2, double c, const rmt::JointSpectralDistribution& h_rs,
            const rmt::SolverConfig& cfg) {
  if (z1.imag() == 0.0 || z2.imag() == 0.0) throw ParameterError("eval_a needs Im z != 0");
  return CltFunctionals(c, h_rs, cfg).a(z1, z2);
}

double clt_mean(const Polynomial& f, double c, const rmt::SpectralDistribution& h,
                const MomentProfile& mp, const rmt::SolverConfig& cfg, const ContourOptions& contour) {
  cfg.validate();
  if (mp.alpha_x == 0.0 && mp.beta_x == 0.0) return 0.0;
  const ContourNodes nodes = discretize(inner_contour(support_bound(c, h), contour));
  const NodeSolution sol = solve_nodes(nodes, c, h, cfg);

  cplx acc{};
  for (Index k = 0; k < nodes.z.size(); ++k) {
    const cplx m = sol.m_bar(k);
    const cplx r3 = h.integrate([m](double t) {
      const cplx d = 1.0 + t * m;
      return cplx(t * t) / (d * d * d);
    });
    const cplx g1 = c * m * m * m * r3;
    const cplx g2 = c * m * m * h.resolvent2(m);
    acc += mean_kernel(nodes.z(k), f, g1, g2, mp) * nodes.dz(k);
  }
  const cplx value = -acc / cplx(0.0, 2.0 * std::numbers::pi);
  return real_part_checked(value, kMeanResidue, "clt_mean");
}

double clt_cov(const Polynomial& f1, const Polynomial& f2, double c,
               const rmt::JointSpectralDistribution& h_rs, const MomentProfile& mp,
               const rmt::SolverConfig& cfg, bool companion_side, const ContourOptions& contour) {
  cfg.validate();
  if (!(c > 0.0)) throw ParameterError("dimension ratio c must be positive");
  const double ce = companion_side ? 1.0 / c : c;
  const rmt::SpectralDistribution h_r = h_rs.marginal(0);
  const rmt::SpectralDistribution h_s = h_rs.marginal(1);

  const SupportBound bound = merge(support_bound(ce, h_r), support_bound(ce, h_s));
  const ContourSpec inner = inner_contour(bound, contour);
  const ContourNodes n1 = discretize(inner);
  const ContourNodes n2 = discretize(scaled_contour(inner, contour.outer_scale));
  const NodeSolution s1 = solve_nodes(n1, ce, h_r, cfg);
  const NodeSolution s2 = solve_nodes(n2, ce, h_s, cfg);

  const auto& atoms = h_rs.atoms();
  const Index na = static_cast<Index>(atoms.size());
  Eigen::VectorXd w(na);
  for (Index k = 0; k < na; ++k) w(k) = atoms[k].weight;

  // A(j,k) = t m/(1+tm) and B(j,k) = dA/dz at node j, atom k.
  auto kernels = [&](const NodeSolution& s, bool first, Eigen::MatrixXcd& A, Eigen::MatrixXcd& B) {
    const Index nn = s.m_bar.size();
    A.resize(nn, na);
    B.resize(nn, na);
    for (Index k = 0; k < na; ++k) {
      const double t = first ? atoms[k].t1 : atoms[k].t2;
      for (Index j = 0; j < nn; ++j) {
        const cplx d = 1.0 + t * s.m_bar(j);
        A(j, k) = t * s.m_bar(j) / d;
        B(j, k) = t * s.dm_bar(j) / (d * d);
      }
    }
  };
  Eigen::MatrixXcd A1, B1, A2, B2;
  kernels(s1, true, A1, B1);
  kernels(s2, false, A2, B2);

  const Eigen::MatrixXcd WA2 = w.asDiagonal() * A2.transpose();
  const Eigen::MatrixXcd WB2 = w.asDiagonal() * B2.transpose();
  const Eigen::MatrixXcd a = ce * (A1 * WA2);
  const Eigen::MatrixXcd a1 = ce * (B1 * WA2);
  const Eigen::MatrixXcd a2 = ce * (A1 * WB2);
  const Eigen::MatrixXcd a12 = ce * (B1 * WB2);

  const double alpha = mp.alpha_x;
  const double beta = mp.beta_x;
  const Eigen::ArrayXXcd one_a = 1.0 - a.array();
  double gap = one_a.abs().minCoeff();
  Eigen::ArrayXXcd g = -a12.array() / one_a - a1.array() * a2.array() / one_a.square();
  if (alpha != 0.0) {
    const Eigen::ArrayXXcd one_aa = 1.0 - alpha * a.array();
    gap = std::min(gap, one_aa.abs().minCoeff());
    g -= alpha * a12.array() / one_aa + alpha * alpha * a1.array() * a2.array() / one_aa.square();
  }
  if (beta != 0.0) g -= beta * a12.array();
  if (gap < kSingularGap) {
    throw SingularityError("a(z1, z2) reaches 1 on the contour grid; increase the contour separation");
  }

  const Eigen::VectorXcd u1 = weighted_values(f1, n1);
  const Eigen::VectorXcd u2 = weighted_values(f2, n2);
  const cplx total = (u1.transpose() * (g.matrix() * u2))(0, 0);
  return real_part_checked(total / (4.0 * std::numbers::pi * std::numbers::pi), kCovResidue, "clt_cov");
}

double lsd_moment(const Polynomial& f, double c, const rmt::SpectralDistribution& h,
                  const rmt::SolverConfig& cfg, const ContourOptions& contour) {
  cfg.validate();
  const ContourNodes nodes = discretize(inner_contour(support_bound(c, h), contour));
  const NodeSolution sol = solve_nodes(nodes, c, h, cfg);
  cplx acc{};
  for (Index k = 0; k < nodes.z.size(); ++k) acc += f(nodes.z(k)) * sol.m(k) * nodes.dz(k);
  const cplx value = -acc / cplx(0.0, 2.0 * std::numbers::pi);
  return real_part_checked(value, kMeanResidue, "lsd_moment");
}

}  // namespace hdw::clt
