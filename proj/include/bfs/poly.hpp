#pragma once

#include <iosfwd>
#include <vector>

#include "bfs/field.hpp"
#include "bfs/geometry.hpp"
#include "bfs/integrals.hpp"

namespace bfs {

/// Dense bivariate polynomial sum c_ij x^i y^j. Small utility behind the
/// CLI's built-in function registry: exact derivatives for interpolation and
/// exact integrals as convergence-study references.
class Poly2 {
 public:
  Poly2() = default;

  static Poly2 monomial(int i, int j, double c);

  /// (1 - x^2)^2 (1 - y^2)^2.
  static Poly2 quartic_bump();

  /// x^2 y^2.
  static Poly2 xxyy();

  /// Parse lines `i j c` (one monomial per line, `#` comments allowed).
  static Poly2 parse(std::istream& in);

  int degree_x() const { return nx_ - 1; }  // -1 for the zero polynomial
  int degree_y() const { return ny_ - 1; }
  double coeff(int i, int j) const;
  void set_coeff(int i, int j, double c);

  double operator()(double x, double y) const;
  Poly2 dx() const;
  Poly2 dy() const;

  friend Poly2 operator+(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(const Poly2& a, const Poly2& b);

  /// Exact integral over the domain (monomial primitives, no quadrature).
  double integrate(const Domain& d) const;

  /// Package as an AnalyticField with exact dx, dy, dxy callables.
  AnalyticField to_analytic() const;

 private:
  int nx_ = 0;  // coefficient grid extents (degree + 1)
  int ny_ = 0;
  std::vector<double> c_;  // c_[i * ny_ + j] multiplies x^i y^j
};

/// Exact values of the four study integrals for polynomial v and f.
IntegralValues exact_integrals(const Poly2& v, const Poly2& f, const Domain& d);

}  // namespace bfs
