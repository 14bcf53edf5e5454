#pragma once

#include <vector>

#include "hdw/core.hpp"

namespace hdw::rmt {

/// Circular shift D_tau = [[0, I_{n-tau}], [I_tau, 0]]; row i carries its
/// single one in column (i + tau) mod n. D_tau = D_1^tau and D D^T = I.
Eigen::MatrixXd shift_matrix(Index n, Index tau);

/// Banded Toeplitz C_{n,tau}: 1/2 on the +-tau diagonals, no circular wrap.
Eigen::MatrixXd toeplitz_band(Index n, Index tau);

/// Exact spectrum of (D_tau + D_tau^T)/2, i.e. {cos(2 pi tau t / n)} for
/// t = 1..n, sorted ascending.
std::vector<double> symmetrized_shift_spectrum(Index n, Index tau);

/// Sorted eigenvalues of (D_tau + D_tau^T)/2 from a dense symmetric solve.
std::vector<double> symmetrized_shift_eigenvalues(Index n, Index tau);

/// (1/n) sum_t l_t^s over the eigenvalues of toeplitz_band(n, tau).
double szego_moment(Index n, Index tau, int s);

/// Large-n limit of szego_moment: (1/2pi) int_0^{2pi} cos^s(tau x) dx.
/// Independent of tau: binom(s, s/2) / 2^s for even s, 0 for odd s.
double szego_limit(int s);

}  // namespace hdw::rmt
