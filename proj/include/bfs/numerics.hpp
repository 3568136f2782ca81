#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace bfs {

/// Thrown when an evaluation produces a non-finite value; the message names
/// the offending node or (element, point) location.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Neumaier-compensated sum over a contiguous range. The summation order is
/// fixed by index, so results are reproducible regardless of how the terms
/// were produced (e.g. by parallel per-element loops).
inline double compensated_sum(std::span<const double> terms) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : terms) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace bfs
