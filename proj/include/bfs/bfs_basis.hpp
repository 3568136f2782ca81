#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bfs/geometry.hpp"
#include "bfs/hermite1d.hpp"

namespace bfs {

inline constexpr int kNumBasis = 16;

// Derivative slot order used by DerivTable and everything downstream.
inline constexpr int kSlotDx = 0;
inline constexpr int kSlotDy = 1;
inline constexpr int kSlotDxx = 2;
inline constexpr int kSlotDyy = 3;
inline constexpr int kSlotDxy = 4;
inline constexpr int kNumDerivSlots = 5;

/// 1-based pair (j, k) of 1D Hermite factors for basis function i in 1..16.
/// The ordering groups the basis by DOF type: i=1..4 values at nodes N1..N4,
/// 5..8 d/dx, 9..12 d/dy, 13..16 d2/dxdy.
std::pair<int, int> index_map(int i);

/// Scale attached to basis i (1-based) so that its coefficient equals the
/// nodal value of the matching DOF on an hx-by-hy rectangle: 1 for value
/// DOFs, hx for d/dx, hy for d/dy, hx*hy for the mixed DOF.
double dof_scale(int i, const ElementSize& size);

/// 16 x np table of basis values; row r holds basis function r+1, points are
/// contiguous per row so coefficient-row times table is a dense product.
class ShapeTable {
 public:
  ShapeTable() = default;
  explicit ShapeTable(int np) : np_(np), values_(static_cast<size_t>(kNumBasis) * np, 0.0) {}

  int num_points() const { return np_; }
  double operator()(int i, int p) const { return values_[static_cast<size_t>(i) * np_ + p]; }
  double& operator()(int i, int p) { return values_[static_cast<size_t>(i) * np_ + p]; }
  std::span<const double> row(int i) const {
    return {values_.data() + static_cast<size_t>(i) * np_, static_cast<size_t>(np_)};
  }

 private:
  int np_ = 0;
  std::vector<double> values_;
};

/// 16 x np x 5 table of basis derivatives. Slots are stored as contiguous
/// 16 x np matrices in the order dx, dy, dxx, dyy, dxy.
class DerivTable {
 public:
  DerivTable() = default;
  explicit DerivTable(int np)
      : np_(np), values_(static_cast<size_t>(kNumDerivSlots) * kNumBasis * np, 0.0) {}

  int num_points() const { return np_; }
  double operator()(int slot, int i, int p) const { return values_[index(slot, i, p)]; }
  double& operator()(int slot, int i, int p) { return values_[index(slot, i, p)]; }
  std::span<const double> row(int slot, int i) const {
    return {values_.data() + index(slot, i, 0), static_cast<size_t>(np_)};
  }

 private:
  size_t index(int slot, int i, int p) const {
    return (static_cast<size_t>(slot) * kNumBasis + i) * np_ + p;
  }

  int np_ = 0;
  std::vector<double> values_;
};

/// Evaluate all 16 scaled BFS basis functions at reference points.
/// Empty point sets give an empty table; non-finite coordinates are rejected.
ShapeTable shapefun(std::span<const Point2> points, const ElementSize& size);

/// Evaluate the five derivative slots of all 16 scaled basis functions.
/// Derivatives are with respect to actual coordinates on an hx-by-hy rectangle.
DerivTable shapeder(std::span<const Point2> points, const ElementSize& size);

/// Range validator for reference points (debug/test use; evaluation does not check).
bool in_reference_square(const Point2& p);

}  // namespace bfs
