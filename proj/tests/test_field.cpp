#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bfs/field.hpp"
#include "bfs/numerics.hpp"
#include "oracles.hpp"

using bfs::AnalyticField;
using bfs::C1Field;
using bfs::eval_in_element;
using bfs::interpolate;
using bfs::Matrix;
using bfs::Point2;
using bfs::RectMesh;
using bfs::uniform_mesh;

namespace {

AnalyticField quartic() {
  AnalyticField f;
  f.value = [](double x, double y) {
    return (1 - x * x) * (1 - x * x) * (1 - y * y) * (1 - y * y);
  };
  f.dx = [](double x, double y) { return -4 * x * (1 - x * x) * (1 - y * y) * (1 - y * y); };
  f.dy = [](double x, double y) { return -4 * y * (1 - x * x) * (1 - x * x) * (1 - y * y); };
  f.dxy = [](double x, double y) { return 16 * x * y * (1 - x * x) * (1 - y * y); };
  return f;
}

int find_node(const RectMesh& mesh, double x, double y) {
  for (int k = 0; k < mesh.num_nodes(); ++k)
    if (mesh.node(k).x == x && mesh.node(k).y == y) return k;
  FAIL("node not found");
  return -1;
}

C1Field random_field(const RectMesh& mesh, std::mt19937& rng) {
  C1Field f(mesh);
  for (int k = 0; k < mesh.num_nodes(); ++k)
    for (int c = 0; c < 4; ++c) f.dof(k, c) = oracles::uniform(rng, -1.0, 1.0);
  return f;
}

}  // namespace

TEST_CASE("interpolation fills the nodal DOF matrix") {
  const RectMesh mesh = uniform_mesh(-1, 1, -1, 1, 4, 4);
  const C1Field field = interpolate(quartic(), mesh);

  const int center = find_node(mesh, 0.0, 0.0);
  CHECK(field.dof(center, 0) == 1.0);
  CHECK(field.dof(center, 1) == 0.0);
  CHECK(field.dof(center, 2) == 0.0);
  CHECK(field.dof(center, 3) == 0.0);

  const int mid = find_node(mesh, 0.5, 0.5);
  CHECK(field.dof(mid, 0) == doctest::Approx(0.31640625).epsilon(1e-15));

  for (int k = 0; k < mesh.num_nodes(); ++k) {
    const Point2& p = mesh.node(k);
    if (std::abs(p.x) == 1.0 || std::abs(p.y) == 1.0) CHECK(field.dof(k, 0) == 0.0);
  }
}

TEST_CASE("interpolation rejects non-finite samples naming the node") {
  const RectMesh mesh = uniform_mesh(0, 1, 0, 1, 2, 2);
  AnalyticField bad;
  bad.value = [](double x, double y) { return 1.0 / ((x - 0.5) + (y - 0.5)); };
  bad.dx = [](double, double) { return 0.0; };
  bad.dy = [](double, double) { return 0.0; };
  bad.dxy = [](double, double) { return 0.0; };
  CHECK_THROWS_AS((void)interpolate(bad, mesh), bfs::NumericalError);
  try {
    (void)interpolate(bad, mesh);
  } catch (const bfs::NumericalError& e) {
    CHECK(std::string(e.what()).find("node") != std::string::npos);
  }
}

TEST_CASE("missing analytic derivatives fall back to finite differences") {
  const RectMesh mesh = uniform_mesh(-1, 1, -1, 1, 2, 2);
  AnalyticField value_only;
  value_only.value = quartic().value;
  const C1Field fd = interpolate(value_only, mesh);
  const C1Field exact = interpolate(quartic(), mesh);
  for (int k = 0; k < mesh.num_nodes(); ++k)
    for (int c = 0; c < 4; ++c)
      CHECK(fd.dof(k, c) == doctest::Approx(exact.dof(k, c)).epsilon(1e-6).scale(1.0));
}

TEST_CASE("gather maps nodal DOFs to the basis ordering") {
  SUBCASE("single element, single DOF") {
    const RectMesh mesh = uniform_mesh(0, 1, 0, 1, 1, 1);
    C1Field field(mesh);
    // d/dx DOF at local node N2 = global node 1 -> basis index 6 (0-based 5).
    field.dof(1, 1) = 1.0;
    const bfs::ElementCoeffs coeffs = bfs::gather(field);
    for (int i = 0; i < bfs::kNumBasis; ++i)
      CHECK(coeffs.row(0)[i] == ((i == 5) ? 1.0 : 0.0));
  }

  SUBCASE("shared node shows up in all four element rows") {
    const RectMesh mesh = uniform_mesh(-1, 1, -1, 1, 2, 2);
    C1Field field(mesh);
    const int center = find_node(mesh, 0.0, 0.0);
    for (int c = 0; c < 4; ++c) field.dof(center, c) = 10.0 + c;
    const bfs::ElementCoeffs coeffs = bfs::gather(field);
    for (int e = 0; e < 4; ++e) {
      const auto& el = mesh.element(e);
      int local = -1;
      for (int k = 0; k < 4; ++k)
        if (el[k] == center) local = k;
      REQUIRE(local >= 0);
      for (int g = 0; g < 4; ++g) CHECK(coeffs.row(e)[4 * g + local] == 10.0 + g);
    }
  }

  SUBCASE("scatter of gather with averaging is the identity") {
    std::mt19937 rng(31);
    const RectMesh mesh = uniform_mesh(-1, 1, -1, 1, 2, 2);
    const C1Field field = random_field(mesh, rng);
    const bfs::ElementCoeffs coeffs = bfs::gather(field);
    std::vector<double> sums(mesh.num_nodes() * 4, 0.0);
    std::vector<int> counts(mesh.num_nodes(), 0);
    for (int e = 0; e < mesh.num_elements(); ++e) {
      const auto& el = mesh.element(e);
      for (int k = 0; k < 4; ++k) {
        counts[el[k]] += 1;
        for (int g = 0; g < 4; ++g) sums[el[k] * 4 + g] += coeffs.row(e)[4 * g + k];
      }
    }
    for (int n = 0; n < mesh.num_nodes(); ++n)
      for (int g = 0; g < 4; ++g)
        CHECK(sums[n * 4 + g] / counts[n] == doctest::Approx(field.dof(n, g)).epsilon(1e-15));
  }
}

TEST_CASE("batch evaluation") {
  std::mt19937 rng(37);
  std::vector<Point2> pts;
  for (int k = 0; k < 9; ++k)
    pts.push_back({oracles::uniform(rng, 0.0, 1.0), oracles::uniform(rng, 0.0, 1.0)});

  SUBCASE("constant field evaluates to the constant with zero derivatives") {
    const RectMesh mesh = uniform_mesh(-1, 1, -1, 1, 2, 2);
    AnalyticField one;
    one.value = [](double, double) { return 1.0; };
    one.dx = one.dy = one.dxy = [](double, double) { return 0.0; };
    const C1Field field = interpolate(one, mesh);
    const Matrix vals = bfs::eval_values(field, pts);
    for (double v : vals.data) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    const bfs::DerivEval d = bfs::eval_derivatives(field, pts);
    for (const Matrix* m : {&d.dx, &d.dy, &d.dxx, &d.dyy, &d.dxy})
      for (double v : m->data) CHECK(std::abs(v) <= 1e-13);
  }

  SUBCASE("bicubic x^3 y^3 on a single element is reproduced with derivatives") {
    const RectMesh mesh = uniform_mesh(0, 1, 0, 1, 1, 1);
    AnalyticField cube;
    cube.value = [](double x, double y) { return x * x * x * y * y * y; };
    cube.dx = [](double x, double y) { return 3 * x * x * y * y * y; };
    cube.dy = [](double x, double y) { return 3 * x * x * x * y * y; };
    cube.dxy = [](double x, double y) { return 9 * x * x * y * y; };
    const C1Field field = interpolate(cube, mesh);
    const Matrix vals = bfs::eval_values(field, pts);
    const bfs::DerivEval d = bfs::eval_derivatives(field, pts);
    for (size_t p = 0; p < pts.size(); ++p) {
      const double x = pts[p].x, y = pts[p].y;
      CHECK(vals(0, p) == doctest::Approx(x * x * x * y * y * y).epsilon(1e-12).scale(1.0));
      CHECK(d.dx(0, p) == doctest::Approx(3 * x * x * y * y * y).epsilon(1e-12).scale(1.0));
      CHECK(d.dy(0, p) == doctest::Approx(3 * x * x * x * y * y).epsilon(1e-12).scale(1.0));
      CHECK(d.dxy(0, p) == doctest::Approx(9 * x * x * y * y).epsilon(1e-12).scale(1.0));
      CHECK(d.dxx(0, p) == doctest::Approx(6 * x * y * y * y).epsilon(1e-11).scale(1.0));
      CHECK(d.dyy(0, p) == doctest::Approx(6 * y * x * x * x).epsilon(1e-11).scale(1.0));
    }
  }

  SUBCASE("batch kernels match the pointwise reference") {
    std::mt19937 rng2(41);
    const RectMesh mesh = uniform_mesh(-1.5, 0.5, 0.0, 3.0, 4, 4);
    const C1Field field = random_field(mesh, rng2);
    const Matrix a = bfs::eval_values(field, pts);
    const Matrix b = bfs::serial::eval_values(field, pts);
    for (size_t k = 0; k < a.data.size(); ++k)
      CHECK(a.data[k] == doctest::Approx(b.data[k]).epsilon(1e-13).scale(1.0));

    const bfs::DerivEval da = bfs::eval_derivatives(field, pts);
    const bfs::DerivEval db = bfs::serial::eval_derivatives(field, pts);
    const Matrix* pa[5] = {&da.dx, &da.dy, &da.dxx, &da.dyy, &da.dxy};
    const Matrix* pb[5] = {&db.dx, &db.dy, &db.dxx, &db.dyy, &db.dxy};
    for (int s = 0; s < 5; ++s)
      for (size_t k = 0; k < pa[s]->data.size(); ++k)
        CHECK(pa[s]->data[k] == doctest::Approx(pb[s]->data[k]).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("interpolant of the quartic peaks at the center elements") {
  const RectMesh mesh = uniform_mesh(-1, 1, -1, 1, 16, 16);
  const C1Field field = interpolate(quartic(), mesh);
  const Point2 mid[1] = {{0.5, 0.5}};
  const Matrix vals = bfs::eval_values(field, mid);
  const auto mids = bfs::element_midpoints(mesh);

  double best = -1.0;
  int best_e = -1;
  double boundary_max = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    if (vals(e, 0) > best) {
      best = vals(e, 0);
      best_e = e;
    }
    if (std::abs(mids[e].x) > 0.9 || std::abs(mids[e].y) > 0.9)
      boundary_max = std::max(boundary_max, vals(e, 0));
  }
  // Maximum sits in one of the four elements around the origin.
  CHECK(std::abs(mids[best_e].x) == doctest::Approx(1.0 / 16).epsilon(1e-12));
  CHECK(std::abs(mids[best_e].y) == doctest::Approx(1.0 / 16).epsilon(1e-12));
  CHECK(boundary_max < 0.1 * best);
}

TEST_CASE("straight second derivatives may jump across edges, the mixed one does not") {
  std::mt19937 rng(97);
  const RectMesh mesh = uniform_mesh(-1, 1, -1, 1, 4, 4);
  const C1Field field = random_field(mesh, rng);
  double max_dxx_jump = 0.0, max_dxy_jump = 0.0;
  for (int ei = 0; ei < mesh.num_edges(); ++ei) {
    const bfs::Edge& ed = mesh.edges()[ei];
    if (ed.elem_left < 0 || ed.elem_right < 0 || ed.horizontal) continue;
    const double t = 0.37;
    const bfs::PointValues l =
        eval_in_element(field, ed.elem_left, bfs::edge_reference_point(mesh, ei, ed.elem_left, t));
    const bfs::PointValues r = eval_in_element(field, ed.elem_right,
                                               bfs::edge_reference_point(mesh, ei, ed.elem_right, t));
    max_dxx_jump = std::max(max_dxx_jump, std::abs(l.dxx - r.dxx));
    max_dxy_jump = std::max(max_dxy_jump, std::abs(l.dxy - r.dxy));
  }
  CHECK(max_dxx_jump > 1e-3);    // vxx is genuinely discontinuous across vertical edges
  CHECK(max_dxy_jump <= 1e-12);  // while the mixed derivative stays continuous
}

TEST_CASE("edge midpoint values of the quartic peak near the center") {
  const RectMesh mesh = uniform_mesh(-1, 1, -1, 1, 16, 16);
  const C1Field field = interpolate(quartic(), mesh);
  const double ts[1] = {0.5};
  const Matrix vals = bfs::eval_on_edges(field, ts);
  const auto mids = bfs::edge_midpoints(mesh);
  double best = -1.0, boundary_max = 0.0;
  int best_i = -1;
  for (int i = 0; i < mesh.num_edges(); ++i) {
    if (vals(i, 0) > best) {
      best = vals(i, 0);
      best_i = i;
    }
    if (std::abs(mids[i].x) > 0.9 || std::abs(mids[i].y) > 0.9)
      boundary_max = std::max(boundary_max, vals(i, 0));
  }
  CHECK(std::abs(mids[best_i].x) <= 1.0 / 16 + 1e-12);
  CHECK(std::abs(mids[best_i].y) <= 1.0 / 16 + 1e-12);
  CHECK(boundary_max < 0.1 * best);
}

TEST_CASE("C1 continuity across interior edges for random fields") {
  std::mt19937 rng(43);
  const RectMesh mesh = uniform_mesh(-1, 1, -1, 1, 2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const C1Field field = random_field(mesh, rng);
    for (int ei = 0; ei < mesh.num_edges(); ++ei) {
      const bfs::Edge& ed = mesh.edges()[ei];
      if (ed.elem_left < 0 || ed.elem_right < 0) continue;
      for (int s = 0; s <= 20; ++s) {
        const double t = static_cast<double>(s) / 20;
        const bfs::PointValues l = eval_in_element(
            field, ed.elem_left, bfs::edge_reference_point(mesh, ei, ed.elem_left, t));
        const bfs::PointValues r = eval_in_element(
            field, ed.elem_right, bfs::edge_reference_point(mesh, ei, ed.elem_right, t));
        CHECK(l.v == doctest::Approx(r.v).epsilon(1e-10).scale(1.0));
        CHECK(l.dx == doctest::Approx(r.dx).epsilon(1e-10).scale(1.0));
        CHECK(l.dy == doctest::Approx(r.dy).epsilon(1e-10).scale(1.0));
      }
      // The mixed derivative is shared at the edge endpoints (nodes).
      for (double t : {0.0, 1.0}) {
        const bfs::PointValues l = eval_in_element(
            field, ed.elem_left, bfs::edge_reference_point(mesh, ei, ed.elem_left, t));
        const bfs::PointValues r = eval_in_element(
            field, ed.elem_right, bfs::edge_reference_point(mesh, ei, ed.elem_right, t));
        CHECK(l.dxy == doctest::Approx(r.dxy).epsilon(1e-10).scale(1.0));
      }
    }
  }
}

TEST_CASE("interpolation of a field's own trace reproduces the DOF matrix") {
  std::mt19937 rng(47);
  const RectMesh mesh = uniform_mesh(-1, 1, -1, 1, 4, 4);
  const C1Field field = random_field(mesh, rng);

  // Treat the FE field as an analytic function by locating the element.
  const auto locate = [&](double x, double y) {
    const double hx = mesh.element_size().hx, hy = mesh.element_size().hy;
    int i = std::min(3, std::max(0, static_cast<int>(std::floor((x + 1.0) / hx))));
    int j = std::min(3, std::max(0, static_cast<int>(std::floor((y + 1.0) / hy))));
    const int e = j * 4 + i;
    const Point2 o = mesh.element_origin(e);
    return std::pair{e, Point2{(x - o.x) / hx, (y - o.y) / hy}};
  };
  AnalyticField wrapped;
  wrapped.value = [&](double x, double y) {
    const auto [e, ref] = locate(x, y);
    return eval_in_element(field, e, ref).v;
  };
  wrapped.dx = [&](double x, double y) {
    const auto [e, ref] = locate(x, y);
    return eval_in_element(field, e, ref).dx;
  };
  wrapped.dy = [&](double x, double y) {
    const auto [e, ref] = locate(x, y);
    return eval_in_element(field, e, ref).dy;
  };
  wrapped.dxy = [&](double x, double y) {
    const auto [e, ref] = locate(x, y);
    return eval_in_element(field, e, ref).dxy;
  };

  const C1Field again = interpolate(wrapped, mesh);
  for (int k = 0; k < mesh.num_nodes(); ++k)
    for (int c = 0; c < 4; ++c) CHECK(again.dof(k, c) == field.dof(k, c));
}

TEST_CASE("edge evaluation") {
  const RectMesh mesh = uniform_mesh(-1, 1, -1, 1, 2, 2);

  SUBCASE("constant field gives the constant on every edge") {
    AnalyticField one;
    one.value = [](double, double) { return 1.0; };
    one.dx = one.dy = one.dxy = [](double, double) { return 0.0; };
    const C1Field field = interpolate(one, mesh);
    const double ts[3] = {0.0, 0.5, 1.0};
    const Matrix vals = bfs::eval_on_edges(field, ts);
    CHECK(vals.rows == mesh.num_edges());
    CHECK(vals.cols == 3);
    for (double v : vals.data) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("both incident elements give the same edge values") {
    std::mt19937 rng(53);
    const C1Field field = random_field(mesh, rng);
    for (int ei = 0; ei < mesh.num_edges(); ++ei) {
      const bfs::Edge& ed = mesh.edges()[ei];
      if (ed.elem_left < 0 || ed.elem_right < 0) continue;
      for (double t : {0.1, 0.5, 0.9}) {
        const double a = bfs::eval_edge_from_element(field, ei, ed.elem_left, t);
        const double b = bfs::eval_edge_from_element(field, ei, ed.elem_right, t);
        CHECK(a == doctest::Approx(b).epsilon(1e-11).scale(1.0));
      }
    }
  }

  SUBCASE("eval_on_edges uses the lower-index incident element") {
    std::mt19937 rng(59);
    const C1Field field = random_field(mesh, rng);
    const double ts[2] = {0.25, 0.75};
    const Matrix vals = bfs::eval_on_edges(field, ts);
    for (int ei = 0; ei < mesh.num_edges(); ++ei) {
      const bfs::Edge& ed = mesh.edges()[ei];
      int elem = ed.elem_left < 0 ? ed.elem_right
                                  : (ed.elem_right < 0 ? ed.elem_left
                                                       : std::min(ed.elem_left, ed.elem_right));
      for (int k = 0; k < 2; ++k)
        CHECK(vals(ei, k) ==
              doctest::Approx(bfs::eval_edge_from_element(field, ei, elem, ts[k])).epsilon(1e-14));
    }
  }
}

TEST_CASE("DOF matrices are validated") {
  const RectMesh mesh = uniform_mesh(0, 1, 0, 1, 1, 1);
  CHECK_THROWS_AS(C1Field(mesh, std::vector<double>(7, 0.0)), std::invalid_argument);
  std::vector<double> bad(16, 0.0);
  bad[5] = std::nan("");
  CHECK_THROWS_AS(C1Field(mesh, bad), bfs::NumericalError);
}
