#pragma once

namespace hdw::clt {

/// Entry moments that enter the CLT mean and covariance.
/// nu4 = E|x|^4, alpha_x = |E x^2|^2, beta_x = E|x|^4 - |E x^2|^2 - 2.
struct MomentProfile {
  double nu4;
  double alpha_x;
  double beta_x;

  /// Real-valued entries: alpha_x = 1, beta_x = nu4 - 3.
  static MomentProfile real(double nu4);
  /// Circularly-symmetric complex entries (E x^2 = 0): alpha_x = 0, beta_x = nu4 - 2.
  static MomentProfile complex_circular(double nu4);
  /// Arbitrary (alpha_x, beta_x); nu4 is recovered as beta_x + alpha_x + 2.
  static MomentProfile general(double alpha_x, double beta_x);
};

}  // namespace hdw::clt
