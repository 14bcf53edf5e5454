#include "hdw/rmt/shift.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hdw::rmt {

namespace {

void check_lag(Index n, Index tau) {
  if (n < 2 || tau < 1 || tau >= n) {
    throw ParameterError("lag tau=" + std::to_string(tau) + " must satisfy 1 <= tau < n=" +
                         std::to_string(n));
  }
}

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// cos(2 pi k / n) for 0 <= k < n, reduced to |angle| <= pi/2 so the
// quarter points come out as exact 0 and -1.
double cos_two_pi_ratio(Index k, Index n) {
  const double pi = std::numbers::pi;
  const double nn = static_cast<double>(n);
  if (4 * k == n || 4 * k == 3 * n) return 0.0;
  if (4 * k < n) return std::cos(2.0 * pi * static_cast<double>(k) / nn);
  if (4 * k < 3 * n) return -std::cos(pi * static_cast<double>(2 * k - n) / nn);
  return std::cos(2.0 * pi * static_cast<double>(n - k) / nn);
}

}  // namespace

Eigen::MatrixXd shift_matrix(Index n, Index tau) {
  check_lag(n, tau);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  d.topRightCorner(n - tau, n - tau).setIdentity();
  d.bottomLeftCorner(tau, tau).setIdentity();
  return d;
}

Eigen::MatrixXd toeplitz_band(Index n, Index tau) {
  check_lag(n, tau);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i + tau < n; ++i) {
    c(i, i + tau) = 0.5;
    c(i + tau, i) = 0.5;
  }
  return c;
}

std::vector<double> symmetrized_shift_spectrum(Index n, Index tau) {
  check_lag(n, tau);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (Index t = 1; t <= n; ++t) {
    out[static_cast<std::size_t>(t - 1)] = cos_two_pi_ratio((tau * t) % n, n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> symmetrized_shift_eigenvalues(Index n, Index tau) {
  const Eigen::MatrixXd d = shift_matrix(n, tau);
  return sorted_eigenvalues(0.5 * (d + d.transpose()));
}

double szego_moment(Index n, Index tau, int s) {
  if (s < 1) throw ParameterError("moment order must be positive");
  const auto ev = sorted_eigenvalues(toeplitz_band(n, tau));
  double acc = 0.0;
  for (double l : ev) acc += std::pow(l, s);
  return acc / static_cast<double>(n);
}

double szego_limit(int s) {
  if (s < 1) throw ParameterError("moment order must be positive");
  if (s % 2 != 0) return 0.0;
  // binom(s, s/2) / 2^s built incrementally to avoid overflow
  double v = 1.0;
  for (int k = 1; k <= s / 2; ++k) {
    v *= static_cast<double>(s / 2 + k) / static_cast<double>(k);
    v *= 0.25;
  }
  return v;
}

}  // namespace hdw::rmt
