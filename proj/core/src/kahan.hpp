#pragma once

namespace singseries {
namespace detail {

// Compensated summation in extended precision. Deterministic: the result
// depends only on the order of add() calls.
struct Kahan {
  long double sum = 0.0L;
  long double carry = 0.0L;

  void add(long double x) {
    long double y = x - carry;
    long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace detail
}  // namespace singseries
