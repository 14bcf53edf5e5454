#pragma once

#include <cmath>
#include <functional>
#include <numbers>

#include "hdw/core.hpp"

namespace hdw::rmt {

/// Default node count for arcsine-law quadrature.
inline constexpr int kArcsineNodes = 256;

/// Gauss-Chebyshev nodes cos((2k-1) pi / 2K), k = 1..K, each with weight 1/K.
Eigen::VectorXd gauss_chebyshev_nodes(int nodes = kArcsineNodes);

/// int f dH for the arcsine law H'(t) = 1/(pi sqrt(1-t^2)) on (-1, 1).
/// Exact for polynomials of degree < 2 * nodes.
template <typename F>
auto arcsine_integral(F&& f, int nodes = kArcsineNodes) {
  using R = decltype(f(0.0));
  R acc{};
  for (int k = 1; k <= nodes; ++k) {
    acc += f(std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * nodes)));
  }
  return acc / static_cast<double>(nodes);
}

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Golub-Welsch construction of the n-point Gauss-Legendre rule.
GaussLegendreRule gauss_legendre(int n);

}  // namespace hdw::rmt
