#pragma once

#include <initializer_list>

#include "hdw/core.hpp"

namespace hdw::clt {

/// Dense real polynomial sum_k coeffs[k] x^k, degree at most kMaxDegree.
class Polynomial {
 public:
  static constexpr int kMaxDegree = 8;

  Polynomial() : coeffs_(Eigen::VectorXd::Zero(1)) {}
  explicit Polynomial(Eigen::VectorXd coeffs);
  Polynomial(std::initializer_list<double> coeffs);

  /// x^k
  static Polynomial monomial(int k);

  int degree() const;
  const Eigen::VectorXd& coeffs() const noexcept { return coeffs_; }

  template <typename Scalar>
  Scalar operator()(const Scalar& x) const {
    Scalar acc(coeffs_(coeffs_.size() - 1));
    for (Index k = coeffs_.size() - 2; k >= 0; --k) acc = acc * x + Scalar(coeffs_(k));
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& a);

 private:
  Eigen::VectorXd coeffs_;
};

}  // namespace hdw::clt
