#pragma once

#include "hdw/core.hpp"

namespace hdw::clt {

/// Limiting covariance of the lag-r and lag-s quadratic statistics
/// tr(M_r^2), tr(M_s^2): (1 + 1.5 c (beta_x + 2)) / c^2 for r = s,
/// (beta_x + 2) / c otherwise.
double lag_cov_closed_form(int r, int s, double c, double beta_x);

/// Covariance of the normalized lag statistics (L_1, ..., L_q):
/// diagonal 1 + 1.5 c (nu4 - 1), off-diagonal c (nu4 - 1).
struct JointCovMatrix {
  int q;
  double c;
  Eigen::MatrixXd entries;
};

JointCovMatrix joint_lag_cov_matrix(int q, double c, double nu4);

/// Variance of the multi-lag statistic: q + c (nu4 - 1)(q^2 + q/2).
double s_variance(int q, double c, double nu4);

}  // namespace hdw::clt
