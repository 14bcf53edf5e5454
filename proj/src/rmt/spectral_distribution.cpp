#include "hdw/rmt/spectral_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "hdw/rmt/chebyshev.hpp"

namespace hdw::rmt {

namespace {

constexpr double kWeightTol = 1e-12;

void validate_atoms(const std::vector<Atom>& atoms) {
  if (atoms.empty()) throw ParameterError("spectral distribution needs at least one atom");
  double total = 0.0;
  for (const auto& a : atoms) {
    if (!std::isfinite(a.value)) throw ParameterError("atom value must be finite");
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) {
      throw ParameterError("atom weights must be nonnegative");
    }
    total += a.weight;
  }
  if (std::abs(total - 1.0) > kWeightTol) {
    throw ParameterError("atom weights must sum to 1");
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

SpectralDistribution::SpectralDistribution(Kind kind, std::vector<Atom> atoms)
    : kind_(kind), atoms_(std::move(atoms)) {}

SpectralDistribution SpectralDistribution::point_mass(double value) {
  if (!std::isfinite(value)) throw ParameterError("point mass value must be finite");
  return {Kind::point_mass, {{value, 1.0}}};
}

SpectralDistribution SpectralDistribution::discrete(std::vector<Atom> atoms) {
  validate_atoms(atoms);
  return {Kind::discrete, std::move(atoms)};
}

SpectralDistribution SpectralDistribution::arcsine() { return {Kind::arcsine, {}}; }

SpectralDistribution SpectralDistribution::parse(const std::string& text) {
  std::istringstream is(text);
  std::string head;
  if (!(is >> head)) throw ParameterError("empty spectral distribution spec");
  auto read_all = [&is] {
    std::vector<double> v;
    std::string tok;
    while (is >> tok) {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw ParameterError("bad number '" + tok + "' in spectral distribution spec");
      }
      if (used != tok.size()) throw ParameterError("bad number '" + tok + "'");
      v.push_back(x);
    }
    return v;
  };
  if (head == "point") {
    const auto v = read_all();
    if (v.size() != 1) throw ParameterError("'point' takes exactly one value");
    return point_mass(v[0]);
  }
  if (head == "discrete") {
    const auto v = read_all();
    if (v.empty() || v.size() % 2 != 0) {
      throw ParameterError("'discrete' takes value/weight pairs");
    }
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < v.size(); i += 2) atoms.push_back({v[i], v[i + 1]});
    return discrete(std::move(atoms));
  }
  if (head == "arcsine") {
    if (!read_all().empty()) throw ParameterError("'arcsine' takes no arguments");
    return arcsine();
  }
  throw ParameterError("unknown spectral distribution kind '" + head + "'");
}

std::string SpectralDistribution::to_string() const {
  switch (kind_) {
    case Kind::point_mass:
      return "point " + fmt(atoms_.front().value);
    case Kind::arcsine:
      return "arcsine";
    case Kind::discrete: {
      std::string s = "discrete";
      for (const auto& a : atoms_) s += " " + fmt(a.value) + " " + fmt(a.weight);
      return s;
    }
  }
  return {};
}

double SpectralDistribution::support_min() const {
  if (kind_ == Kind::arcsine) return -1.0;
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& a : atoms_) {
    if (a.weight > 0.0) lo = std::min(lo, a.value);
  }
  return lo;
}

double SpectralDistribution::support_max() const {
  if (kind_ == Kind::arcsine) return 1.0;
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& a : atoms_) {
    if (a.weight > 0.0) hi = std::max(hi, a.value);
  }
  return hi;
}

std::vector<Atom> SpectralDistribution::discretized(int nodes) const {
  if (kind_ != Kind::arcsine) return atoms_;
  const Eigen::VectorXd x = gauss_chebyshev_nodes(nodes);
  std::vector<Atom> out;
  out.reserve(static_cast<std::size_t>(nodes));
  for (Index k = 0; k < x.size(); ++k) out.push_back({x(k), 1.0 / nodes});
  return out;
}

double SpectralDistribution::mean() const {
  return integrate([](double t) { return t; });
}

cplx SpectralDistribution::resolvent1(cplx m) const {
  if (kind_ == Kind::arcsine) {
    // int dH / (1 + t m) = 1 / sqrt(1 - m^2) on the principal branch, whose
    // cut {m real, |m| >= 1} is exactly where the integral is singular.
    // int t dH / (1 + t m) = (1 - 1/s) / m = -m / (s (1 + s)).
    const cplx s = std::sqrt(1.0 - m * m);
    return -m / (s * (1.0 + s));
  }
  cplx acc{};
  for (const auto& a : atoms_) acc += a.weight * a.value / (1.0 + a.value * m);
  return acc;
}

cplx SpectralDistribution::resolvent2(cplx m) const {
  if (kind_ == Kind::arcsine) {
    const cplx s = std::sqrt(1.0 - m * m);
    const cplx onep = 1.0 + s;
    return (s * s * onep + m * m * (1.0 + 2.0 * s)) / (s * s * s * onep * onep);
  }
  cplx acc{};
  for (const auto& a : atoms_) {
    const cplx d = 1.0 + a.value * m;
    acc += a.weight * a.value * a.value / (d * d);
  }
  return acc;
}

// ---------------------------------------------------------------------------

JointSpectralDistribution::JointSpectralDistribution(std::vector<JointAtom> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw ParameterError("joint distribution needs at least one atom");
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.t1) || !std::isfinite(a.t2)) {
      throw ParameterError("joint atom values must be finite");
    }
    if (!(a.weight >= 0.0)) throw ParameterError("joint atom weights must be nonnegative");
    total += a.weight;
  }
  if (std::abs(total - 1.0) > kWeightTol) throw ParameterError("joint weights must sum to 1");
}

JointSpectralDistribution JointSpectralDistribution::with_point(double value,
                                                                const SpectralDistribution& h2) {
  std::vector<JointAtom> atoms;
  for (const auto& a : h2.discretized()) atoms.push_back({value, a.value, a.weight});
  return JointSpectralDistribution(std::move(atoms));
}

JointSpectralDistribution JointSpectralDistribution::diagonal(const SpectralDistribution& h) {
  std::vector<JointAtom> atoms;
  for (const auto& a : h.discretized()) atoms.push_back({a.value, a.value, a.weight});
  return JointSpectralDistribution(std::move(atoms));
}

JointSpectralDistribution JointSpectralDistribution::chebyshev_pair(unsigned r, unsigned s,
                                                                    int nodes) {
  if (r < 1 || s < 1) throw ParameterError("Chebyshev orders must be positive");
  const Eigen::VectorXd x = gauss_chebyshev_nodes(nodes);
  std::vector<JointAtom> atoms;
  atoms.reserve(static_cast<std::size_t>(nodes));
  for (Index k = 0; k < x.size(); ++k) {
    atoms.push_back({chebyshev_eval(r, x(k)), chebyshev_eval(s, x(k)), 1.0 / nodes});
  }
  return JointSpectralDistribution(std::move(atoms));
}

JointSpectralDistribution JointSpectralDistribution::swapped() const {
  std::vector<JointAtom> atoms;
  atoms.reserve(atoms_.size());
  for (const auto& a : atoms_) atoms.push_back({a.t2, a.t1, a.weight});
  return JointSpectralDistribution(std::move(atoms));
}

SpectralDistribution JointSpectralDistribution::marginal(int which) const {
  if (which != 0 && which != 1) throw ParameterError("marginal index must be 0 or 1");
  std::vector<Atom> raw;
  raw.reserve(atoms_.size());
  for (const auto& a : atoms_) raw.push_back({which == 0 ? a.t1 : a.t2, a.weight});
  std::sort(raw.begin(), raw.end(), [](const Atom& x, const Atom& y) { return x.value < y.value; });
  std::vector<Atom> merged;
  for (const auto& a : raw) {
    if (!merged.empty() && std::abs(merged.back().value - a.value) <= 1e-14) {
      merged.back().weight += a.weight;
    } else {
      merged.push_back(a);
    }
  }
  if (merged.size() == 1) return SpectralDistribution::point_mass(merged.front().value);
  // re-normalize the accumulated rounding before validation
  double total = 0.0;
  for (const auto& a : merged) total += a.weight;
  for (auto& a : merged) a.weight /= total;
  return SpectralDistribution::discrete(std::move(merged));
}

}  // namespace hdw::rmt
