#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "bfs/geometry.hpp"
#include "bfs/mesh.hpp"
#include "bfs/numerics.hpp"

namespace bfs {

/// Tensor-product Gauss-Legendre rule on the reference unit square.
/// Weights sum to 1; the element Jacobian hx*hy is applied at integration
/// time so one rule serves all elements of an equal-size mesh.
struct QuadratureRule {
  std::vector<Point2> points;
  std::vector<double> weights;

  int num_points() const { return static_cast<int>(points.size()); }
};

/// The supported rules: 1 (midpoint), 4 (2x2) or 9 (3x3) Gauss points.
QuadratureRule gauss_rule(int num_points);

/// Sum over elements of hx*hy * sum_q w_q * integrand(e, q). Elements are
/// evaluated in parallel; the reduction runs in element order with
/// compensated summation, so results are reproducible at any thread count.
/// The integrand must be safe to call concurrently for distinct elements.
template <class F>
double integrate_on_mesh(const RectMesh& mesh, const QuadratureRule& rule, F&& integrand) {
  const int ne = mesh.num_elements();
  const int nq = rule.num_points();
  const double jacobian = mesh.element_size().hx * mesh.element_size().hy;
  std::vector<double> contrib(ne);
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    double acc = 0.0;
    for (int q = 0; q < nq; ++q) acc += rule.weights[q] * integrand(e, rule.points[q]);
    contrib[e] = jacobian * acc;
  }
  for (int e = 0; e < ne; ++e) {
    if (!std::isfinite(contrib[e])) {
      for (int q = 0; q < nq; ++q)  // locate the offending point
        if (!std::isfinite(integrand(e, rule.points[q])))
          throw NumericalError("integrate_on_mesh: non-finite integrand in element " +
                               std::to_string(e) + " at Gauss point " + std::to_string(q));
      throw NumericalError("integrate_on_mesh: non-finite contribution from element " +
                           std::to_string(e));
    }
  }
  return compensated_sum(contrib);
}

}  // namespace bfs
