#include "hdw/clt/closed_form.hpp"

namespace hdw::clt {

namespace {

void check_common(int q, double c, double nu4) {
  if (q < 1) throw ParameterError("number of lags q must be >= 1");
  if (!(c > 0.0)) throw ParameterError("dimension ratio c must be positive");
  if (!(nu4 >= 1.0)) throw ParameterError("nu4 must be >= 1");
}

}  // namespace

double lag_cov_closed_form(int r, int s, double c, double beta_x) {
  if (r < 1 || s < 1) throw ParameterError("lags must be >= 1");
  if (!(c > 0.0)) throw ParameterError("dimension ratio c must be positive");
  if (r == s) return (1.0 + 1.5 * c * (beta_x + 2.0)) / (c * c);
  return (beta_x + 2.0) / c;
}

JointCovMatrix joint_lag_cov_matrix(int q, double c, double nu4) {
  check_common(q, c, nu4);
  const double off = c * (nu4 - 1.0);
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(q, q, off);
  m.diagonal().setConstant(1.0 + 1.5 * off);
  return {q, c, std::move(m)};
}

double s_variance(int q, double c, double nu4) {
  check_common(q, c, nu4);
  const double qq = q;
  return qq + c * (nu4 - 1.0) * (qq * qq + qq / 2.0);
}

}  // namespace hdw::clt
