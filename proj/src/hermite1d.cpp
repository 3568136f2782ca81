#include "bfs/hermite1d.hpp"

#include <cmath>
#include <stdexcept>

namespace bfs {
namespace {

// Expanded monomial coefficients (c0 + c1 t + c2 t^2 + c3 t^3) of the cubic
// Hermite basis and of its first and second derivatives. Differentiation is
// done on the coefficients, not numerically.
constexpr double kCoeffs[3][4][4] = {
    {{1, 0, -3, 2}, {0, 0, 3, -2}, {0, 1, -2, 1}, {0, 0, -1, 1}},
    {{0, -6, 6, 0}, {0, 6, -6, 0}, {1, -4, 3, 0}, {0, -2, 3, 0}},
    {{-6, 12, 0, 0}, {6, -12, 0, 0}, {-4, 6, 0, 0}, {-2, 6, 0, 0}},
};

}  // namespace

IntervalMap::IntervalMap(double a_, double b_) : a(a_), b(b_) {
  if (!(b > a)) throw std::invalid_argument("IntervalMap: degenerate interval (b <= a)");
}

HermiteValues eval_ref(double xhat, int order) {
  if (order < 0 || order > 2) throw std::invalid_argument("eval_ref: order must be 0, 1 or 2");
  HermiteValues out;
  for (int f = 0; f < 4; ++f) {
    const double* c = kCoeffs[order][f];
    out[f] = ((c[3] * xhat + c[2]) * xhat + c[1]) * xhat + c[0];
  }
  return out;
}

HermiteValues eval_actual(double x, const IntervalMap& map, int order) {
  const double h = map.h();
  HermiteValues v = eval_ref(map.to_reference(x), order);
  double s12 = 1.0;  // H1, H2: 1/h^order
  double s34 = h;    // H3, H4: h^(1-order)
  for (int k = 0; k < order; ++k) {
    s12 /= h;
    s34 /= h;
  }
  v[0] *= s12;
  v[1] *= s12;
  v[2] *= s34;
  v[3] *= s34;
  return v;
}

bool in_reference_interval(double xhat) {
  return std::isfinite(xhat) && xhat >= 0.0 && xhat <= 1.0;
}

}  // namespace bfs
