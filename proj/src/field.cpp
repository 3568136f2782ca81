#include "bfs/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bfs/numerics.hpp"

namespace bfs {
namespace {

const char* kDofNames[4] = {"v", "dv/dx", "dv/dy", "d2v/dxdy"};

void check_finite_dofs(std::span<const double> dofs) {
  for (size_t k = 0; k < dofs.size(); ++k)
    if (!std::isfinite(dofs[k]))
      throw NumericalError("C1Field: non-finite DOF (" + std::string(kDofNames[k % 4]) +
                           ") at node " + std::to_string(k / 4));
}

// Gather the 16 local coefficients of element e: nodal values first, then
// x-derivatives, y-derivatives and mixed derivatives, each at N1..N4.
inline void gather_row(const C1Field& field, const std::array<int, 4>& elem, double* out) {
  for (int g = 0; g < 4; ++g)
    for (int k = 0; k < 4; ++k) out[4 * g + k] = field.dof(elem[k], g);
}

struct NodalSample {
  double v, dx, dy, dxy;
};

// Evaluates the analytic field at one point, falling back to central
// differences with the given step for missing derivative callables.
NodalSample sample_analytic(const AnalyticField& f, double x, double y, double step) {
  NodalSample s{};
  s.v = f.value(x, y);
  if (f.dx)
    s.dx = f.dx(x, y);
  else
    s.dx = (f.value(x + step, y) - f.value(x - step, y)) / (2.0 * step);
  if (f.dy)
    s.dy = f.dy(x, y);
  else
    s.dy = (f.value(x, y + step) - f.value(x, y - step)) / (2.0 * step);
  if (f.dxy)
    s.dxy = f.dxy(x, y);
  else if (f.dx)
    s.dxy = (f.dx(x, y + step) - f.dx(x, y - step)) / (2.0 * step);
  else if (f.dy)
    s.dxy = (f.dy(x + step, y) - f.dy(x - step, y)) / (2.0 * step);
  else
    s.dxy = (f.value(x + step, y + step) - f.value(x + step, y - step) -
             f.value(x - step, y + step) + f.value(x - step, y - step)) /
            (4.0 * step * step);
  return s;
}

void store_sample(C1Field& field, int node, const NodalSample& s) {
  field.dof(node, 0) = s.v;
  field.dof(node, 1) = s.dx;
  field.dof(node, 2) = s.dy;
  field.dof(node, 3) = s.dxy;
}

void check_interpolated(const C1Field& field) {
  for (int k = 0; k < field.num_nodes(); ++k)
    for (int c = 0; c < 4; ++c)
      if (!std::isfinite(field.dof(k, c)))
        throw NumericalError("interpolate: non-finite " + std::string(kDofNames[c]) +
                             " at node " + std::to_string(k) + " (" +
                             std::to_string(field.mesh().node(k).x) + ", " +
                             std::to_string(field.mesh().node(k).y) + ")");
}

}  // namespace

C1Field::C1Field(const RectMesh& mesh)
    : mesh_(&mesh), dofs_(static_cast<size_t>(mesh.num_nodes()) * 4, 0.0) {}

C1Field::C1Field(const RectMesh& mesh, std::vector<double> dofs)
    : mesh_(&mesh), dofs_(std::move(dofs)) {
  if (dofs_.size() != static_cast<size_t>(mesh.num_nodes()) * 4)
    throw std::invalid_argument("C1Field: DOF matrix must be num_nodes x 4");
  check_finite_dofs(dofs_);
}

C1Field interpolate(const AnalyticField& f, const RectMesh& mesh) {
  if (!f.value) throw std::invalid_argument("interpolate: value callable is required");
  const ElementSize size = mesh.element_size();
  const double step = 1e-5 * std::min(size.hx, size.hy);
  C1Field field(mesh);
  const int n = mesh.num_nodes();
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) {
    const Point2& p = mesh.node(k);
    store_sample(field, k, sample_analytic(f, p.x, p.y, step));
  }
  check_interpolated(field);
  return field;
}

ElementCoeffs gather(const C1Field& field) {
  const RectMesh& mesh = field.mesh();
  const int ne = mesh.num_elements();
  ElementCoeffs out;
  out.num_elements = ne;
  out.coeffs.resize(static_cast<size_t>(ne) * kNumBasis);
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e)
    gather_row(field, mesh.element(e), out.coeffs.data() + static_cast<size_t>(e) * kNumBasis);
  return out;
}

Matrix eval_values(const C1Field& field, std::span<const Point2> ref_points) {
  const RectMesh& mesh = field.mesh();
  const ShapeTable table = shapefun(ref_points, mesh.element_size());
  const int ne = mesh.num_elements();
  const int np = table.num_points();
  Matrix out(ne, np);
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    double c[kNumBasis];
    gather_row(field, mesh.element(e), c);
    double* dst = out.row(e);
    for (int i = 0; i < kNumBasis; ++i) {
      const double ci = c[i];
      const double* src = table.row(i).data();
      for (int p = 0; p < np; ++p) dst[p] += ci * src[p];
    }
  }
  return out;
}

DerivEval eval_derivatives(const C1Field& field, std::span<const Point2> ref_points) {
  const RectMesh& mesh = field.mesh();
  const DerivTable table = shapeder(ref_points, mesh.element_size());
  const int ne = mesh.num_elements();
  const int np = table.num_points();
  DerivEval out{Matrix(ne, np), Matrix(ne, np), Matrix(ne, np), Matrix(ne, np), Matrix(ne, np)};
  Matrix* slots[kNumDerivSlots] = {&out.dx, &out.dy, &out.dxx, &out.dyy, &out.dxy};
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    double c[kNumBasis];
    gather_row(field, mesh.element(e), c);
    for (int s = 0; s < kNumDerivSlots; ++s) {
      double* dst = slots[s]->row(e);
      for (int i = 0; i < kNumBasis; ++i) {
        const double ci = c[i];
        const double* src = table.row(s, i).data();
        for (int p = 0; p < np; ++p) dst[p] += ci * src[p];
      }
    }
  }
  return out;
}

PointValues eval_in_element(const C1Field& field, int element, const Point2& ref) {
  const RectMesh& mesh = field.mesh();
  const Point2 pts[1] = {ref};
  const ShapeTable st = shapefun(pts, mesh.element_size());
  const DerivTable dt = shapeder(pts, mesh.element_size());
  double c[kNumBasis];
  gather_row(field, mesh.element(element), c);
  PointValues out;
  for (int i = 0; i < kNumBasis; ++i) {
    out.v += c[i] * st(i, 0);
    out.dx += c[i] * dt(kSlotDx, i, 0);
    out.dy += c[i] * dt(kSlotDy, i, 0);
    out.dxx += c[i] * dt(kSlotDxx, i, 0);
    out.dyy += c[i] * dt(kSlotDyy, i, 0);
    out.dxy += c[i] * dt(kSlotDxy, i, 0);
  }
  return out;
}

Matrix eval_on_edges(const C1Field& field, std::span<const double> ts) {
  const RectMesh& mesh = field.mesh();
  const int nt = static_cast<int>(ts.size());
  const int nedge = mesh.num_edges();

  // The reference trace of an edge depends only on which side of the element
  // it is; precompute the four possible point sets.
  std::vector<Point2> side_pts[4];
  for (int k = 0; k < nt; ++k) {
    side_pts[0].push_back({ts[k], 0.0});  // bottom
    side_pts[1].push_back({1.0, ts[k]});  // right
    side_pts[2].push_back({ts[k], 1.0});  // top
    side_pts[3].push_back({0.0, ts[k]});  // left
  }
  ShapeTable side_table[4];
  for (int s = 0; s < 4; ++s) side_table[s] = shapefun(side_pts[s], mesh.element_size());

  Matrix out(nedge, nt);
#pragma omp parallel for schedule(static)
  for (int ei = 0; ei < nedge; ++ei) {
    const Edge& ed = mesh.edges()[ei];
    const int e = ed.elem_left < 0 ? ed.elem_right
                                   : (ed.elem_right < 0 ? ed.elem_left
                                                        : std::min(ed.elem_left, ed.elem_right));
    const auto& el = mesh.element(e);
    int side;
    if (ed.a == std::min(el[0], el[1]) && ed.b == std::max(el[0], el[1]))
      side = 0;
    else if (ed.a == std::min(el[1], el[2]) && ed.b == std::max(el[1], el[2]))
      side = 1;
    else if (ed.a == std::min(el[3], el[2]) && ed.b == std::max(el[3], el[2]))
      side = 2;
    else
      side = 3;
    double c[kNumBasis];
    gather_row(field, el, c);
    double* dst = out.row(ei);
    const ShapeTable& table = side_table[side];
    for (int i = 0; i < kNumBasis; ++i) {
      const double ci = c[i];
      const double* src = table.row(i).data();
      for (int p = 0; p < nt; ++p) dst[p] += ci * src[p];
    }
  }
  return out;
}

double eval_edge_from_element(const C1Field& field, int edge_index, int element, double t) {
  const Point2 ref = edge_reference_point(field.mesh(), edge_index, element, t);
  return eval_in_element(field, element, ref).v;
}

namespace serial {

C1Field interpolate(const AnalyticField& f, const RectMesh& mesh) {
  if (!f.value) throw std::invalid_argument("interpolate: value callable is required");
  const ElementSize size = mesh.element_size();
  const double step = 1e-5 * std::min(size.hx, size.hy);
  C1Field field(mesh);
  for (int k = 0; k < mesh.num_nodes(); ++k) {
    const Point2& p = mesh.node(k);
    store_sample(field, k, sample_analytic(f, p.x, p.y, step));
  }
  check_interpolated(field);
  return field;
}

Matrix eval_values(const C1Field& field, std::span<const Point2> ref_points) {
  const RectMesh& mesh = field.mesh();
  const int ne = mesh.num_elements();
  const int np = static_cast<int>(ref_points.size());
  Matrix out(ne, np);
  for (int e = 0; e < ne; ++e)
    for (int p = 0; p < np; ++p) out(e, p) = eval_in_element(field, e, ref_points[p]).v;
  return out;
}

DerivEval eval_derivatives(const C1Field& field, std::span<const Point2> ref_points) {
  const RectMesh& mesh = field.mesh();
  const int ne = mesh.num_elements();
  const int np = static_cast<int>(ref_points.size());
  DerivEval out{Matrix(ne, np), Matrix(ne, np), Matrix(ne, np), Matrix(ne, np), Matrix(ne, np)};
  for (int e = 0; e < ne; ++e)
    for (int p = 0; p < np; ++p) {
      const PointValues pv = eval_in_element(field, e, ref_points[p]);
      out.dx(e, p) = pv.dx;
      out.dy(e, p) = pv.dy;
      out.dxx(e, p) = pv.dxx;
      out.dyy(e, p) = pv.dyy;
      out.dxy(e, p) = pv.dxy;
    }
  return out;
}

}  // namespace serial
}  // namespace bfs
