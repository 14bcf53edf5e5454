#pragma once

#include <string>
#include <vector>

#include "hdw/core.hpp"
#include "hdw/rmt/quadrature.hpp"

namespace hdw::rmt {

struct Atom {
  double value;
  double weight;
};

/// Population spectral law H: a point mass, a finite discrete law, or the
/// arcsine law on (-1, 1).
///
/// Text form (used by the CLI): `point 1.0`, `discrete v1 w1 v2 w2 ...`,
/// `arcsine`.
class SpectralDistribution {
 public:
  enum class Kind { point_mass, discrete, arcsine };

  static SpectralDistribution point_mass(double value);
  static SpectralDistribution discrete(std::vector<Atom> atoms);
  static SpectralDistribution arcsine();

  static SpectralDistribution parse(const std::string& text);
  std::string to_string() const;

  Kind kind() const noexcept { return kind_; }
  /// Atoms of point/discrete laws; empty for arcsine.
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

  double support_min() const;
  double support_max() const;

  /// Finite atom list: the law itself, or Gauss-Chebyshev nodes for arcsine.
  std::vector<Atom> discretized(int nodes = kArcsineNodes) const;

  /// int f dH; arcsine integrals use Gauss-Chebyshev quadrature.
  template <typename F>
  auto integrate(F&& f) const {
    if (kind_ == Kind::arcsine) return arcsine_integral(f);
    using R = decltype(f(0.0));
    R acc{};
    for (const auto& a : atoms_) acc += a.weight * f(a.value);
    return acc;
  }

  double mean() const;

  /// int t / (1 + t m) dH(t)
  cplx resolvent1(cplx m) const;
  /// int t^2 / (1 + t m)^2 dH(t), the m-derivative of -resolvent1
  cplx resolvent2(cplx m) const;

 private:
  SpectralDistribution(Kind kind, std::vector<Atom> atoms);
  Kind kind_;
  std::vector<Atom> atoms_;
};

struct JointAtom {
  double t1;
  double t2;
  double weight;
};

/// Joint law H_rs of paired population eigenvalues for two commuting
/// (simultaneously diagonal) population matrices.
class JointSpectralDistribution {
 public:
  explicit JointSpectralDistribution(std::vector<JointAtom> atoms);

  /// (t1, t2) = (value, t) with t ~ h2; models the pair (value * I, T).
  static JointSpectralDistribution with_point(double value, const SpectralDistribution& h2);
  /// (t, t) with t ~ h.
  static JointSpectralDistribution diagonal(const SpectralDistribution& h);
  /// (T_r(t), T_s(t)) with t arcsine, discretized at Gauss-Chebyshev nodes.
  /// This is the joint law of the spectra of the symmetrized lag-r and
  /// lag-s shift matrices.
  static JointSpectralDistribution chebyshev_pair(unsigned r, unsigned s,
                                                  int nodes = kArcsineNodes);

  const std::vector<JointAtom>& atoms() const noexcept { return atoms_; }
  JointSpectralDistribution swapped() const;

  /// Marginal law of coordinate 0 (t1) or 1 (t2), with equal values merged.
  SpectralDistribution marginal(int which) const;

 private:
  std::vector<JointAtom> atoms_;
};

}  // namespace hdw::rmt
