#include "hdw/rmt/quadrature.hpp"

namespace hdw::rmt {

Eigen::VectorXd gauss_chebyshev_nodes(int nodes) {
  if (nodes < 1) throw ParameterError("quadrature needs at least one node");
  Eigen::VectorXd x(nodes);
  for (int k = 1; k <= nodes; ++k) {
    x(k - 1) = std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * nodes));
  }
  return x;
}

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw ParameterError("quadrature needs at least one node");
  // Jacobi matrix of the Legendre recurrence
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    j(k, k - 1) = b;
    j(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  GaussLegendreRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights = 2.0 * es.eigenvectors().row(0).transpose().array().square();
  return rule;
}

}  // namespace hdw::rmt
