#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "bfs/bfs_basis.hpp"
#include "oracles.hpp"

using bfs::DerivTable;
using bfs::ElementSize;
using bfs::index_map;
using bfs::kNumBasis;
using bfs::Point2;
using bfs::ShapeTable;
using bfs::shapeder;
using bfs::shapefun;

namespace {

// The reference corners in local node order N1..N4.
constexpr Point2 kCorners[4] = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};

}  // namespace

TEST_CASE("index map follows the published ordering") {
  CHECK(index_map(1) == std::pair{1, 1});
  CHECK(index_map(2) == std::pair{2, 1});
  CHECK(index_map(3) == std::pair{2, 2});
  CHECK(index_map(4) == std::pair{1, 2});
  CHECK(index_map(5) == std::pair{3, 1});
  CHECK(index_map(6) == std::pair{4, 1});
  CHECK(index_map(13) == std::pair{3, 3});
  CHECK(index_map(16) == std::pair{3, 4});

  std::set<std::pair<int, int>> pairs;
  for (int i = 1; i <= 16; ++i) pairs.insert(index_map(i));
  CHECK(pairs.size() == 16);  // bijection onto {1..4}^2

  CHECK_THROWS_AS(index_map(0), std::invalid_argument);
  CHECK_THROWS_AS(index_map(17), std::invalid_argument);
}

TEST_CASE("dof scale per index group") {
  const ElementSize size{2.0, 3.0};
  CHECK(bfs::dof_scale(1, size) == 1.0);
  CHECK(bfs::dof_scale(4, size) == 1.0);
  CHECK(bfs::dof_scale(5, size) == 2.0);
  CHECK(bfs::dof_scale(8, size) == 2.0);
  CHECK(bfs::dof_scale(9, size) == 3.0);
  CHECK(bfs::dof_scale(13, size) == 6.0);
  CHECK(bfs::dof_scale(16, size) == 6.0);
  CHECK_THROWS_AS(bfs::dof_scale(5, ElementSize{0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("shapefun basics") {
  const ElementSize unit{1.0, 1.0};

  SUBCASE("midpoint value of the first basis function") {
    const Point2 pts[1] = {{0.5, 0.5}};
    const ShapeTable t = shapefun(pts, unit);
    CHECK(t(0, 0) == 0.25);  // H1hat(0.5)^2
  }

  SUBCASE("unit vector at the first node") {
    const Point2 pts[1] = {{0.0, 0.0}};
    const ShapeTable t = shapefun(pts, ElementSize{2.0, 3.0});
    CHECK(t(0, 0) == 1.0);
    for (int i = 1; i < kNumBasis; ++i) CHECK(t(i, 0) == 0.0);
  }

  SUBCASE("value rows sum to one everywhere") {
    std::mt19937 rng(3);
    std::vector<Point2> pts;
    for (int k = 0; k < 50; ++k)
      pts.push_back({oracles::uniform(rng, 0.0, 1.0), oracles::uniform(rng, 0.0, 1.0)});
    const ShapeTable t = shapefun(pts, ElementSize{0.7, 1.9});
    for (size_t p = 0; p < pts.size(); ++p) {
      const double sum = t(0, p) + t(1, p) + t(2, p) + t(3, p);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
  }

  SUBCASE("empty point set gives an empty table") {
    const ShapeTable t = shapefun({}, unit);
    CHECK(t.num_points() == 0);
  }

  SUBCASE("non-finite coordinates are rejected") {
    const Point2 pts[1] = {{std::nan(""), 0.5}};
    CHECK_THROWS_AS(shapefun(pts, unit), std::invalid_argument);
  }
}

TEST_CASE("shapeder basics") {
  SUBCASE("table dimensions") {
    const Point2 pts[1] = {{0.5, 0.5}};
    const DerivTable t = shapeder(pts, ElementSize{2.0, 3.0});
    CHECK(t.num_points() == 1);
    CHECK(bfs::kNumDerivSlots == 5);
  }

  SUBCASE("dx slot is the fifth unit vector at the first node") {
    const Point2 pts[1] = {{0.0, 0.0}};
    const DerivTable t = shapeder(pts, ElementSize{2.5, 0.8});
    for (int i = 0; i < kNumBasis; ++i) {
      const double expected = (i == 4) ? 1.0 : 0.0;
      CHECK(t(bfs::kSlotDx, i, 0) == doctest::Approx(expected).epsilon(1e-15));
    }
  }

  SUBCASE("value rows of the dx slot sum to zero") {
    std::mt19937 rng(5);
    std::vector<Point2> pts;
    for (int k = 0; k < 50; ++k)
      pts.push_back({oracles::uniform(rng, 0.0, 1.0), oracles::uniform(rng, 0.0, 1.0)});
    const ElementSize size{0.3, 2.0};
    const DerivTable t = shapeder(pts, size);
    for (size_t p = 0; p < pts.size(); ++p) {
      const double sum = t(bfs::kSlotDx, 0, p) + t(bfs::kSlotDx, 1, p) + t(bfs::kSlotDx, 2, p) +
                         t(bfs::kSlotDx, 3, p);
      CHECK(std::abs(sum) <= 1e-13 / size.hx);
    }
  }
}

TEST_CASE("reference square validator") {
  CHECK(bfs::in_reference_square({0.0, 1.0}));
  CHECK(bfs::in_reference_square({0.5, 0.25}));
  CHECK_FALSE(bfs::in_reference_square({1.5, 0.5}));
  CHECK_FALSE(bfs::in_reference_square({0.5, -0.01}));
  CHECK_FALSE(bfs::in_reference_square({std::nan(""), 0.5}));
}

TEST_CASE("generalized Kronecker delta of the scaled basis") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const ElementSize size{oracles::log_uniform(rng, 1e-2, 1e2),
                           oracles::log_uniform(rng, 1e-2, 1e2)};
    const ShapeTable st = shapefun(kCorners, size);
    const DerivTable dt = shapeder(kCorners, size);
    // Functional m: value/dx/dy/dxy (blocks of 4) at corner m%4.
    for (int m = 0; m < kNumBasis; ++m) {
      const int corner = m % 4;
      for (int i = 0; i < kNumBasis; ++i) {
        double applied;
        switch (m / 4) {
          case 0: applied = st(i, corner); break;
          case 1: applied = dt(bfs::kSlotDx, i, corner); break;
          case 2: applied = dt(bfs::kSlotDy, i, corner); break;
          default: applied = dt(bfs::kSlotDxy, i, corner); break;
        }
        const double expected = (m == i) ? 1.0 : 0.0;
        CHECK(std::abs(applied - expected) <= 1e-12);
      }
    }
  }
}

TEST_CASE("bicubic reproduction from nodal degrees of freedom") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const oracles::TestPoly p = oracles::random_poly(rng, 3, 3);
    const oracles::TestPoly px = p.dx();
    const oracles::TestPoly py = p.dy();
    const oracles::TestPoly pxy = px.dy();

    const double ax = oracles::uniform(rng, -2.0, 2.0);
    const double ay = oracles::uniform(rng, -2.0, 2.0);
    const ElementSize size{oracles::log_uniform(rng, 0.3, 3.0),
                           oracles::log_uniform(rng, 0.3, 3.0)};

    // Coefficients are the raw nodal values; the basis carries the scaling.
    double coeffs[kNumBasis];
    for (int k = 0; k < 4; ++k) {
      const double x = ax + kCorners[k].x * size.hx;
      const double y = ay + kCorners[k].y * size.hy;
      coeffs[k] = p.eval(x, y);
      coeffs[4 + k] = px.eval(x, y);
      coeffs[8 + k] = py.eval(x, y);
      coeffs[12 + k] = pxy.eval(x, y);
    }

    std::vector<Point2> pts;
    for (int k = 0; k < 50; ++k)
      pts.push_back({oracles::uniform(rng, 0.0, 1.0), oracles::uniform(rng, 0.0, 1.0)});
    const ShapeTable t = shapefun(pts, size);
    for (size_t q = 0; q < pts.size(); ++q) {
      double value = 0.0;
      for (int i = 0; i < kNumBasis; ++i) value += coeffs[i] * t(i, q);
      const double exact = p.eval(ax + pts[q].x * size.hx, ay + pts[q].y * size.hy);
      CHECK(std::abs(value - exact) <= 1e-11 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("derivative slots match central differences of shapefun") {
  std::mt19937 rng(29);
  const double step = 1e-4;
  for (int trial = 0; trial < 100; ++trial) {
    const ElementSize size{oracles::log_uniform(rng, 0.1, 10.0),
                           oracles::log_uniform(rng, 0.1, 10.0)};
    const double x = oracles::uniform(rng, 0.01, 0.99);
    const double y = oracles::uniform(rng, 0.01, 0.99);

    const Point2 center[1] = {{x, y}};
    const Point2 stencil[8] = {{x + step, y}, {x - step, y}, {x, y + step}, {x, y - step},
                               {x + step, y + step}, {x + step, y - step},
                               {x - step, y + step}, {x - step, y - step}};
    const DerivTable dt = shapeder(center, size);
    const ShapeTable sc = shapefun(center, size);
    const ShapeTable ss = shapefun(stencil, size);

    for (int slot = 0; slot < bfs::kNumDerivSlots; ++slot) {
      double scale = 0.0;
      for (int i = 0; i < kNumBasis; ++i) scale = std::max(scale, std::abs(dt(slot, i, 0)));
      for (int i = 0; i < kNumBasis; ++i) {
        double fd;
        switch (slot) {
          case bfs::kSlotDx: fd = (ss(i, 0) - ss(i, 1)) / (2 * step * size.hx); break;
          case bfs::kSlotDy: fd = (ss(i, 2) - ss(i, 3)) / (2 * step * size.hy); break;
          case bfs::kSlotDxx:
            fd = (ss(i, 0) - 2 * sc(i, 0) + ss(i, 1)) / (step * step * size.hx * size.hx);
            break;
          case bfs::kSlotDyy:
            fd = (ss(i, 2) - 2 * sc(i, 0) + ss(i, 3)) / (step * step * size.hy * size.hy);
            break;
          default:
            fd = (ss(i, 4) - ss(i, 5) - ss(i, 6) + ss(i, 7)) /
                 (4 * step * step * size.hx * size.hy);
            break;
        }
        CHECK(std::abs(fd - dt(slot, i, 0)) <= 1e-5 * std::max(scale, 1e-12));
      }
    }
  }
}
