#include "bfs/bfs_basis.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace bfs {
namespace {

// Tensor factor pairs (j_i, k_i), 1-based, grouped four at a time by DOF type.
constexpr std::array<std::array<int, 2>, kNumBasis> kIndexPairs = {{
    {1, 1}, {2, 1}, {2, 2}, {1, 2},  // values at N1..N4
    {3, 1}, {4, 1}, {4, 2}, {3, 2},  // d/dx
    {1, 3}, {2, 3}, {2, 4}, {1, 4},  // d/dy
    {3, 3}, {4, 3}, {4, 4}, {3, 4},  // d2/dxdy
}};

void check_points(std::span<const Point2> points) {
  for (size_t p = 0; p < points.size(); ++p) {
    if (!std::isfinite(points[p].x) || !std::isfinite(points[p].y))
      throw std::invalid_argument("shapefun/shapeder: non-finite coordinate at point " +
                                  std::to_string(p));
  }
}

}  // namespace

std::pair<int, int> index_map(int i) {
  if (i < 1 || i > kNumBasis) throw std::invalid_argument("index_map: index must be in 1..16");
  return {kIndexPairs[i - 1][0], kIndexPairs[i - 1][1]};
}

double dof_scale(int i, const ElementSize& size) {
  if (i < 1 || i > kNumBasis) throw std::invalid_argument("dof_scale: index must be in 1..16");
  check_element_size(size);
  switch ((i - 1) / 4) {
    case 0: return 1.0;
    case 1: return size.hx;
    case 2: return size.hy;
    default: return size.hx * size.hy;
  }
}

ShapeTable shapefun(std::span<const Point2> points, const ElementSize& size) {
  check_element_size(size);
  check_points(points);
  const int np = static_cast<int>(points.size());
  ShapeTable table(np);
  std::array<double, kNumBasis> scale;
  for (int i = 0; i < kNumBasis; ++i) scale[i] = dof_scale(i + 1, size);

  for (int p = 0; p < np; ++p) {
    const HermiteValues hx = eval_ref(points[p].x, 0);
    const HermiteValues hy = eval_ref(points[p].y, 0);
    for (int i = 0; i < kNumBasis; ++i) {
      const auto [j, k] = kIndexPairs[i];
      table(i, p) = scale[i] * hx[j - 1] * hy[k - 1];
    }
  }
  return table;
}

DerivTable shapeder(std::span<const Point2> points, const ElementSize& size) {
  check_element_size(size);
  check_points(points);
  const int np = static_cast<int>(points.size());
  DerivTable table(np);
  std::array<double, kNumBasis> scale;
  for (int i = 0; i < kNumBasis; ++i) scale[i] = dof_scale(i + 1, size);

  const double ihx = 1.0 / size.hx;
  const double ihy = 1.0 / size.hy;
  for (int p = 0; p < np; ++p) {
    const HermiteValues hx0 = eval_ref(points[p].x, 0);
    const HermiteValues hx1 = eval_ref(points[p].x, 1);
    const HermiteValues hx2 = eval_ref(points[p].x, 2);
    const HermiteValues hy0 = eval_ref(points[p].y, 0);
    const HermiteValues hy1 = eval_ref(points[p].y, 1);
    const HermiteValues hy2 = eval_ref(points[p].y, 2);
    for (int i = 0; i < kNumBasis; ++i) {
      const auto [j, k] = kIndexPairs[i];
      const double s = scale[i];
      table(kSlotDx, i, p) = s * hx1[j - 1] * ihx * hy0[k - 1];
      table(kSlotDy, i, p) = s * hx0[j - 1] * hy1[k - 1] * ihy;
      table(kSlotDxx, i, p) = s * hx2[j - 1] * ihx * ihx * hy0[k - 1];
      table(kSlotDyy, i, p) = s * hx0[j - 1] * hy2[k - 1] * ihy * ihy;
      table(kSlotDxy, i, p) = s * hx1[j - 1] * ihx * hy1[k - 1] * ihy;
    }
  }
  return table;
}

bool in_reference_square(const Point2& p) {
  return in_reference_interval(p.x) && in_reference_interval(p.y);
}

}  // namespace bfs
