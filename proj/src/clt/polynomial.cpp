#include "hdw/clt/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace hdw::clt {

Polynomial::Polynomial(Eigen::VectorXd coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) coeffs_ = Eigen::VectorXd::Zero(1);
  if (!coeffs_.allFinite()) throw ParameterError("polynomial coefficients must be finite");
  if (degree() > kMaxDegree) throw ParameterError("polynomial degree exceeds 8");
}

Polynomial::Polynomial(std::initializer_list<double> coeffs)
    : Polynomial(Eigen::Map<const Eigen::VectorXd>(coeffs.begin(), static_cast<Index>(coeffs.size()))) {}

Polynomial Polynomial::monomial(int k) {
  if (k < 0 || k > kMaxDegree) throw ParameterError("monomial degree out of range");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(k + 1);
  c(k) = 1.0;
  return Polynomial(std::move(c));
}

int Polynomial::degree() const {
  for (Index k = coeffs_.size() - 1; k > 0; --k) {
    if (coeffs_(k) != 0.0) return static_cast<int>(k);
  }
  return 0;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  const Index n = std::max(a.coeffs_.size(), b.coeffs_.size());
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  c.head(a.coeffs_.size()) += a.coeffs_;
  c.head(b.coeffs_.size()) += b.coeffs_;
  return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& a) { return Polynomial(Eigen::VectorXd(s * a.coeffs_)); }

}  // namespace hdw::clt
