#pragma once

#include <cstdint>

namespace hdw::rmt {

/// Chebyshev polynomial of the first kind, T_order(t), by the three-term
/// recurrence T_{k+1} = 2t T_k - T_{k-1}. Works for real and complex scalars.
template <typename Scalar>
Scalar chebyshev_eval(unsigned order, const Scalar& t) {
  if (order == 0) return Scalar(1);
  Scalar prev(1);
  Scalar cur = t;
  for (unsigned k = 1; k < order; ++k) {
    Scalar next = Scalar(2) * t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace hdw::rmt
