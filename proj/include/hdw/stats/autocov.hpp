#pragma once

#include <utility>

#include <Eigen/Eigenvalues>

#include "hdw/core.hpp"

namespace hdw::stats {

/// p x n sample, one observation x_t per column.
class TimeSeriesSample {
 public:
  explicit TimeSeriesSample(Eigen::MatrixXd data) : data_(std::move(data)) {
    if (data_.rows() < 1) throw ParameterError("sample needs p >= 1");
    if (data_.cols() < 2) throw ParameterError("sample needs n >= 2");
    if (!data_.allFinite()) throw ParameterError("sample contains non-finite entries");
  }

  Index p() const noexcept { return data_.rows(); }
  Index n() const noexcept { return data_.cols(); }
  const Eigen::MatrixXd& data() const noexcept { return data_; }

  /// Copy with each coordinate's sample mean removed. The null theory
  /// assumes mean-zero data, so this is a preprocessing convenience only.
  TimeSeriesSample centered() const {
    Eigen::MatrixXd c = data_.colwise() - data_.rowwise().mean();
    return TimeSeriesSample(std::move(c));
  }

 private:
  Eigen::MatrixXd data_;
};

struct SymmetrizedAutocov {
  Index lag;
  Eigen::MatrixXd matrix;
};

namespace detail {

inline void check_lag(Index lag, Index n) {
  if (lag < 1 || lag >= n) throw ParameterError("lag must satisfy 1 <= tau < n");
}

}  // namespace detail

/// (1/n) sum_t x_t x_{t-tau}^T with circular indexing x_t = x_{n+t} for t <= 0.
template <typename Derived>
Eigen::MatrixXd lag_autocov(const Eigen::MatrixBase<Derived>& X, Index lag) {
  const Index n = X.cols();
  detail::check_lag(lag, n);
  Eigen::MatrixXd shifted(X.rows(), n);
  shifted.leftCols(lag) = X.rightCols(lag);
  shifted.rightCols(n - lag) = X.leftCols(n - lag);
  return (X * shifted.transpose()) / static_cast<double>(n);
}

inline Eigen::MatrixXd lag_autocov(const TimeSeriesSample& X, Index lag) { return lag_autocov(X.data(), lag); }

template <typename Derived>
SymmetrizedAutocov symmetrize(const Eigen::MatrixBase<Derived>& S, Index lag) {
  if (S.rows() != S.cols()) throw ParameterError("symmetrize needs a square matrix");
  Eigen::MatrixXd m = 0.5 * (S + S.transpose());
  return {lag, std::move(m)};
}

/// tr(M_tau M_tau^T) = ||M_tau||_F^2.
template <typename Derived>
double lag_stat(const Eigen::MatrixBase<Derived>& X, Index lag) {
  return symmetrize(lag_autocov(X, lag), lag).matrix.squaredNorm();
}

inline double lag_stat(const TimeSeriesSample& X, Index lag) { return lag_stat(X.data(), lag); }

/// Same value as lag_stat, through the eigenvalues of M_tau.
template <typename Derived>
double lag_stat_spectral(const Eigen::MatrixBase<Derived>& X, Index lag) {
  const SymmetrizedAutocov m = symmetrize(lag_autocov(X, lag), lag);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.matrix, Eigen::EigenvaluesOnly);
  return es.eigenvalues().squaredNorm();
}

/// sum_{tau=1}^q lag_stat(X, tau), summed in lag order.
template <typename Derived>
double multi_lag_stat(const Eigen::MatrixBase<Derived>& X, Index q) {
  detail::check_lag(q, X.cols());
  double acc = 0.0;
  for (Index lag = 1; lag <= q; ++lag) acc += lag_stat(X, lag);
  return acc;
}

inline double multi_lag_stat(const TimeSeriesSample& X, Index q) { return multi_lag_stat(X.data(), q); }

/// (n/p) multi_lag_stat - q p / 2; approximately N(q/2, s(c)) under white noise.
template <typename Derived>
double phi_stat(const Eigen::MatrixBase<Derived>& X, Index q) {
  const double p = static_cast<double>(X.rows());
  const double n = static_cast<double>(X.cols());
  return n / p * multi_lag_stat(X, q) - static_cast<double>(q) * p / 2.0;
}

inline double phi_stat(const TimeSeriesSample& X, Index q) { return phi_stat(X.data(), q); }

}  // namespace hdw::stats
