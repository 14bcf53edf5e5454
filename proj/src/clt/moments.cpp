#include "hdw/clt/moments.hpp"

#include "hdw/core.hpp"

namespace hdw::clt {

namespace {

MomentProfile checked(MomentProfile mp) {
  if (!(mp.alpha_x >= 0.0 && mp.alpha_x <= 1.0)) throw ParameterError("alpha_x must lie in [0, 1]");
  if (!(mp.beta_x >= -2.0)) throw ParameterError("beta_x must be >= -2");
  return mp;
}

}  // namespace

MomentProfile MomentProfile::real(double nu4) {
  if (!(nu4 >= 1.0)) throw ParameterError("nu4 must be >= 1");
  return checked({nu4, 1.0, nu4 - 3.0});
}

MomentProfile MomentProfile::complex_circular(double nu4) {
  if (!(nu4 >= 1.0)) throw ParameterError("nu4 must be >= 1");
  return checked({nu4, 0.0, nu4 - 2.0});
}

MomentProfile MomentProfile::general(double alpha_x, double beta_x) {
  return checked({beta_x + alpha_x + 2.0, alpha_x, beta_x});
}

}  // namespace hdw::clt
