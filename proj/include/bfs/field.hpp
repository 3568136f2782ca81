#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bfs/bfs_basis.hpp"
#include "bfs/matrix.hpp"
#include "bfs/mesh.hpp"

namespace bfs {

/// Analytic function with optional exact partial derivatives. Missing
/// derivatives are replaced by central finite differences (step
/// 1e-5 * min(hx, hy)) when the field is interpolated onto a mesh.
/// Callables are invoked concurrently and must be pure.
struct AnalyticField {
  std::function<double(double, double)> value;
  std::function<double(double, double)> dx;
  std::function<double(double, double)> dy;
  std::function<double(double, double)> dxy;
};

/// C1 finite element field: per node the 4 DOFs (v, dv/dx, dv/dy, d2v/dxdy),
/// bound to a mesh. The mesh must outlive the field.
class C1Field {
 public:
  static constexpr int kDofsPerNode = 4;

  explicit C1Field(const RectMesh& mesh);
  C1Field(const RectMesh& mesh, std::vector<double> dofs);  // n x 4 row-major, finite

  const RectMesh& mesh() const { return *mesh_; }
  int num_nodes() const { return mesh_->num_nodes(); }

  double dof(int node, int comp) const { return dofs_[static_cast<size_t>(node) * 4 + comp]; }
  double& dof(int node, int comp) { return dofs_[static_cast<size_t>(node) * 4 + comp]; }
  std::span<const double> node_dofs(int node) const {
    return {dofs_.data() + static_cast<size_t>(node) * 4, 4};
  }
  std::span<const double> raw() const { return dofs_; }

 private:
  const RectMesh* mesh_;
  std::vector<double> dofs_;
};

/// Per-element coefficient matrix (ne x 16); row layout matches the basis
/// ordering: values at N1..N4, then d/dx, d/dy, d2/dxdy.
struct ElementCoeffs {
  int num_elements = 0;
  std::vector<double> coeffs;

  std::span<const double> row(int e) const {
    return {coeffs.data() + static_cast<size_t>(e) * kNumBasis, kNumBasis};
  }
};

/// All values and derivatives of a field at one reference point of one element.
struct PointValues {
  double v = 0, dx = 0, dy = 0, dxx = 0, dyy = 0, dxy = 0;
};

/// Nodal interpolation: DOF row k holds (v, vx, vy, vxy) at node k.
/// Throws NumericalError naming the node if a callable returns a non-finite value.
C1Field interpolate(const AnalyticField& f, const RectMesh& mesh);

/// Gather nodal DOFs into per-element coefficient rows.
ElementCoeffs gather(const C1Field& field);

/// Field values at every reference point of every element (ne x np).
Matrix eval_values(const C1Field& field, std::span<const Point2> ref_points);

/// The five derivative fields (each ne x np), slots dx, dy, dxx, dyy, dxy.
struct DerivEval {
  Matrix dx, dy, dxx, dyy, dxy;
};
DerivEval eval_derivatives(const C1Field& field, std::span<const Point2> ref_points);

/// Field values along every edge at parameters ts (nedge x nt). Each edge is
/// evaluated from its incident element with the lower index; the parameter
/// runs with increasing x (horizontal edges) or y (vertical edges).
Matrix eval_on_edges(const C1Field& field, std::span<const double> ts);

/// Single-point evaluation from a chosen element (tests, edge sampling).
PointValues eval_in_element(const C1Field& field, int element, const Point2& ref);

/// Edge value at parameter t computed from a chosen incident element.
double eval_edge_from_element(const C1Field& field, int edge_index, int element, double t);

// Plain single-point reference implementations of the batch kernels above.
// Kept deliberately naive; tests compare the parallel kernels against them.
namespace serial {
C1Field interpolate(const AnalyticField& f, const RectMesh& mesh);
Matrix eval_values(const C1Field& field, std::span<const Point2> ref_points);
DerivEval eval_derivatives(const C1Field& field, std::span<const Point2> ref_points);
}  // namespace serial

}  // namespace bfs
