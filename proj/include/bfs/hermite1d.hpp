#pragma once

#include <array>

namespace bfs {

/// Values (or derivatives) of the four cubic Hermite basis functions at one point.
using HermiteValues = std::array<double, 4>;

/// Affine map between an actual interval [a, b] and the reference interval [0, 1].
struct IntervalMap {
  double a;
  double b;

  IntervalMap(double a_, double b_);  // throws std::invalid_argument if b <= a

  double h() const { return b - a; }
  double to_reference(double x) const { return (x - a) / (b - a); }
};

/// Reference-interval Hermite basis: order-th derivative (order 0, 1 or 2) of
/// H1..H4 at xhat. H1, H2 interpolate endpoint values, H3, H4 endpoint slopes.
HermiteValues eval_ref(double xhat, int order);

/// Basis on the actual interval [a, b]: H1, H2 pick up a 1/h^order factor,
/// H3, H4 an h^(1-order) factor, so coefficients equal nodal values/slopes.
HermiteValues eval_actual(double x, const IntervalMap& map, int order);

/// Range validator for reference coordinates. Evaluation itself does not
/// clamp or check; callers of the hot path guarantee the range.
bool in_reference_interval(double xhat);

}  // namespace bfs
