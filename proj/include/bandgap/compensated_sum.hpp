#pragma once

#include <cmath>

namespace bandgap {

/// Neumaier's variant of Kahan summation: the compensation stays correct when
/// the incoming term is larger in magnitude than the running sum, which
/// happens constantly when summing signed half-period panels.
template <typename Real>
struct CompensatedSum {
  Real sum = Real{0};
  Real compensation = Real{0};

  void add(Real value) {
    const Real t = sum + value;
    if (std::abs(sum) >= std::abs(value)) {
      compensation += (sum - t) + value;
    } else {
      compensation += (value - t) + sum;
    }
    sum = t;
  }

  CompensatedSum& operator+=(Real value) {
    add(value);
    return *this;
  }

  Real result() const { return sum + compensation; }
};

}  // namespace bandgap
