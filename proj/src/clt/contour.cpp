#include "hdw/clt/contour.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hdw/rmt/quadrature.hpp"

namespace hdw::clt {

namespace {

constexpr int kPanelNodes = 16;

void add_edge(cplx a, cplx b, int panels, const rmt::GaussLegendreRule& rule, ContourNodes& out,
              Index& pos) {
  for (int p = 0; p < panels; ++p) {
    const cplx pa = a + (b - a) * (static_cast<double>(p) / panels);
    const cplx pb = a + (b - a) * (static_cast<double>(p + 1) / panels);
    const cplx mid = 0.5 * (pa + pb);
    const cplx half = 0.5 * (pb - pa);
    for (Index k = 0; k < rule.nodes.size(); ++k) {
      out.z(pos) = mid + half * rule.nodes(k);
      out.dz(pos) = half * rule.weights(k);
      ++pos;
    }
  }
}

}  // namespace

SupportBound support_bound(double c, const rmt::SpectralDistribution& h) {
  if (!(c > 0.0)) throw ParameterError("dimension ratio c must be positive");
  const double up = std::pow(1.0 + std::sqrt(c), 2);
  const double down = c < 1.0 ? std::pow(1.0 - std::sqrt(c), 2) : 0.0;
  const double tmin = h.support_min();
  const double tmax = h.support_max();
  SupportBound b{};
  b.hi = tmax > 0.0 ? up * tmax : down * tmax;
  b.lo = tmin < 0.0 ? up * tmin : down * tmin;
  return b;
}

SupportBound merge(SupportBound a, SupportBound b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

ContourSpec enclosing_contour(SupportBound bound, double half_height, int nodes) {
  if (!(half_height > 0.0)) throw ParameterError("contour half height must be positive");
  if (nodes < 4 * kPanelNodes) throw ParameterError("contour needs at least 64 nodes");
  ContourSpec s{};
  s.half_height = half_height;
  s.nodes = nodes;
  if (bound.hi > 0.0) {
    s.x_right = 1.2 * bound.hi;
  } else if (bound.hi < 0.0) {
    s.x_right = bound.hi / 1.2;
  } else {
    s.x_right = 0.5;
  }
  if (bound.lo < 0.0) {
    s.x_left = 1.2 * bound.lo;
  } else if (bound.lo == 0.0) {
    s.x_left = -0.5;
  } else {
    s.x_left = 0.5 * bound.lo;
  }
  return s;
}

ContourSpec scaled_contour(const ContourSpec& inner, double factor) {
  if (!(factor > 1.0)) throw ParameterError("outer contour scale must exceed 1");
  ContourSpec s = inner;
  s.x_right = inner.x_right > 0.0 ? inner.x_right * factor : inner.x_right / factor;
  s.x_left = inner.x_left < 0.0 ? inner.x_left * factor : inner.x_left / factor;
  s.half_height = inner.half_height * factor;
  return s;
}

void check_encloses(const ContourSpec& spec, SupportBound bound) {
  if (!(spec.x_left < bound.lo && spec.x_right > bound.hi && spec.half_height > 0.0)) {
    std::ostringstream os;
    os << "contour [" << spec.x_left << ", " << spec.x_right << "] does not enclose the support estimate ["
       << bound.lo << ", " << bound.hi << "]";
    throw ParameterError(os.str());
  }
}

ContourNodes discretize(const ContourSpec& spec) {
  const double width = spec.x_right - spec.x_left;
  const double height = 2.0 * spec.half_height;
  if (!(width > 0.0 && height > 0.0)) throw ParameterError("degenerate contour rectangle");
  const int panels = std::max(4, spec.nodes / kPanelNodes);
  const double perimeter = 2.0 * (width + height);
  int horiz = std::max(1, static_cast<int>(std::lround(panels * width / perimeter)));
  int vert = std::max(2, static_cast<int>(std::lround(panels * height / perimeter)));
  if (vert % 2 != 0) ++vert;

  static const rmt::GaussLegendreRule rule = rmt::gauss_legendre(kPanelNodes);
  const Index total = static_cast<Index>(2 * (horiz + vert)) * kPanelNodes;
  ContourNodes out{Eigen::VectorXcd(total), Eigen::VectorXcd(total)};
  const double v = spec.half_height;
  const cplx bl{spec.x_left, -v}, br{spec.x_right, -v}, tr{spec.x_right, v}, tl{spec.x_left, v};
  Index pos = 0;
  add_edge(bl, br, horiz, rule, out, pos);
  add_edge(br, tr, vert, rule, out, pos);
  add_edge(tr, tl, horiz, rule, out, pos);
  add_edge(tl, bl, vert, rule, out, pos);
  return out;
}

}  // namespace hdw::clt
