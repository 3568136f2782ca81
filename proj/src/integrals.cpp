#include "bfs/integrals.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "bfs/format.hpp"
#include "bfs/numerics.hpp"

namespace bfs {
namespace {

inline void gather_row(const C1Field& field, const std::array<int, 4>& elem, double* out) {
  for (int g = 0; g < 4; ++g)
    for (int k = 0; k < 4; ++k) out[4 * g + k] = field.dof(elem[k], g);
}

// Point-major copies of the basis tables: tab[q][i] is contiguous in i so the
// per-point dot products below are unit-stride.
struct PointMajorTables {
  int np = 0;
  std::vector<double> shape;           // np x 16
  std::vector<double> deriv[kNumDerivSlots];  // each np x 16

  PointMajorTables(const QuadratureRule& rule, const ElementSize& size) {
    np = rule.num_points();
    const ShapeTable st = shapefun(rule.points, size);
    const DerivTable dt = shapeder(rule.points, size);
    shape.resize(static_cast<size_t>(np) * kNumBasis);
    for (int q = 0; q < np; ++q)
      for (int i = 0; i < kNumBasis; ++i) shape[q * kNumBasis + i] = st(i, q);
    for (int s = 0; s < kNumDerivSlots; ++s) {
      deriv[s].resize(static_cast<size_t>(np) * kNumBasis);
      for (int q = 0; q < np; ++q)
        for (int i = 0; i < kNumBasis; ++i) deriv[s][q * kNumBasis + i] = dt(s, i, q);
    }
  }
};

inline double dot16(const double* a, const double* b) {
  double acc = 0.0;
  for (int i = 0; i < kNumBasis; ++i) acc += a[i] * b[i];
  return acc;
}

void throw_nonfinite(const char* what, int element, int point) {
  throw NumericalError(std::string(what) + ": non-finite value in element " +
                       std::to_string(element) + " at Gauss point " + std::to_string(point));
}

}  // namespace

IntegralValues norms(const C1Field& field, const QuadratureRule& rule) {
  const RectMesh& mesh = field.mesh();
  const int ne = mesh.num_elements();
  const int nq = rule.num_points();
  const double jacobian = mesh.element_size().hx * mesh.element_size().hy;
  const PointMajorTables tables(rule, mesh.element_size());

  std::vector<double> l2(ne), h1(ne), h2(ne);
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    double c[kNumBasis];
    gather_row(field, mesh.element(e), c);
    double al2 = 0.0, ah1 = 0.0, ah2 = 0.0;
    for (int q = 0; q < nq; ++q) {
      const double w = rule.weights[q];
      const double v = dot16(c, &tables.shape[q * kNumBasis]);
      const double vx = dot16(c, &tables.deriv[kSlotDx][q * kNumBasis]);
      const double vy = dot16(c, &tables.deriv[kSlotDy][q * kNumBasis]);
      const double vxx = dot16(c, &tables.deriv[kSlotDxx][q * kNumBasis]);
      const double vyy = dot16(c, &tables.deriv[kSlotDyy][q * kNumBasis]);
      const double vxy = dot16(c, &tables.deriv[kSlotDxy][q * kNumBasis]);
      al2 += w * v * v;
      ah1 += w * (vx * vx + vy * vy);
      ah2 += w * (vxx * vxx + 2.0 * vxy * vxy + vyy * vyy);
    }
    l2[e] = jacobian * al2;
    h1[e] = jacobian * ah1;
    h2[e] = jacobian * ah2;
  }
  for (int e = 0; e < ne; ++e)
    if (!std::isfinite(l2[e]) || !std::isfinite(h1[e]) || !std::isfinite(h2[e]))
      throw_nonfinite("norms", e, -1);

  IntegralValues out;
  out.l2_sq = compensated_sum(l2);
  out.h1_semi_sq = compensated_sum(h1);
  out.h2_semi_sq = compensated_sum(h2);
  return out;
}

double load_functional(const C1Field& field, const AnalyticField& f, const QuadratureRule& rule) {
  if (!f.value) throw std::invalid_argument("load_functional: f.value is required");
  const RectMesh& mesh = field.mesh();
  const int ne = mesh.num_elements();
  const int nq = rule.num_points();
  const double jacobian = mesh.element_size().hx * mesh.element_size().hy;
  const PointMajorTables tables(rule, mesh.element_size());

  std::vector<double> contrib(ne);
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    double c[kNumBasis];
    gather_row(field, mesh.element(e), c);
    double acc = 0.0;
    for (int q = 0; q < nq; ++q) {
      const Point2 x = mesh.to_actual(e, rule.points[q]);
      acc += rule.weights[q] * f.value(x.x, x.y) * dot16(c, &tables.shape[q * kNumBasis]);
    }
    contrib[e] = jacobian * acc;
  }
  for (int e = 0; e < ne; ++e)
    if (!std::isfinite(contrib[e])) {
      for (int q = 0; q < nq; ++q) {
        const Point2 x = mesh.to_actual(e, rule.points[q]);
        if (!std::isfinite(f.value(x.x, x.y))) throw_nonfinite("load_functional: f", e, q);
      }
      throw_nonfinite("load_functional", e, -1);
    }
  return compensated_sum(contrib);
}

namespace serial {

IntegralValues norms(const C1Field& field, const QuadratureRule& rule) {
  const RectMesh& mesh = field.mesh();
  const double jacobian = mesh.element_size().hx * mesh.element_size().hy;
  IntegralValues out;
  for (int e = 0; e < mesh.num_elements(); ++e)
    for (int q = 0; q < rule.num_points(); ++q) {
      const PointValues pv = eval_in_element(field, e, rule.points[q]);
      const double wj = jacobian * rule.weights[q];
      out.l2_sq += wj * pv.v * pv.v;
      out.h1_semi_sq += wj * (pv.dx * pv.dx + pv.dy * pv.dy);
      out.h2_semi_sq += wj * (pv.dxx * pv.dxx + 2.0 * pv.dxy * pv.dxy + pv.dyy * pv.dyy);
    }
  if (!std::isfinite(out.l2_sq) || !std::isfinite(out.h1_semi_sq) || !std::isfinite(out.h2_semi_sq))
    throw NumericalError("serial::norms: non-finite result");
  return out;
}

double load_functional(const C1Field& field, const AnalyticField& f, const QuadratureRule& rule) {
  if (!f.value) throw std::invalid_argument("load_functional: f.value is required");
  const RectMesh& mesh = field.mesh();
  const double jacobian = mesh.element_size().hx * mesh.element_size().hy;
  double acc = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e)
    for (int q = 0; q < rule.num_points(); ++q) {
      const Point2 x = mesh.to_actual(e, rule.points[q]);
      const double fv = f.value(x.x, x.y);
      if (!std::isfinite(fv)) throw_nonfinite("serial::load_functional: f", e, q);
      acc += jacobian * rule.weights[q] * fv * eval_in_element(field, e, rule.points[q]).v;
    }
  return acc;
}

}  // namespace serial

ConvergenceReport convergence_study(const Domain& domain, const AnalyticField& v,
                                    const AnalyticField& f, const IntegralValues& exact,
                                    int first_level, int last_level, std::span<const int> rules) {
  check_domain(domain);
  if (first_level < 1 || last_level < first_level || last_level > 12)
    throw std::invalid_argument("convergence_study: levels must satisfy 1 <= first <= last <= 12");
  if (!std::isfinite(exact.l2_sq) || !std::isfinite(exact.h1_semi_sq) ||
      !std::isfinite(exact.h2_semi_sq) || !std::isfinite(exact.load))
    throw std::invalid_argument("convergence_study: exact reference values must be finite");

  ConvergenceReport report;
  for (int level = first_level; level <= last_level; ++level) {
    const int n = 1 << level;
    const RectMesh mesh = uniform_mesh(domain.xmin, domain.xmax, domain.ymin, domain.ymax, n, n);
    const C1Field field = interpolate(v, mesh);
    for (int r : rules) {
      const QuadratureRule rule = gauss_rule(r);
      const auto t0 = std::chrono::steady_clock::now();
      IntegralValues values = norms(field, rule);
      values.load = load_functional(field, f, rule);
      const auto t1 = std::chrono::steady_clock::now();

      StudyRow row;
      row.level = level;
      row.rule = r;
      row.nodes = mesh.num_nodes();
      row.elements = mesh.num_elements();
      row.values = values;
      row.abs_error.l2_sq = std::abs(values.l2_sq - exact.l2_sq);
      row.abs_error.h1_semi_sq = std::abs(values.h1_semi_sq - exact.h1_semi_sq);
      row.abs_error.h2_semi_sq = std::abs(values.h2_semi_sq - exact.h2_semi_sq);
      row.abs_error.load = std::abs(values.load - exact.load);
      row.seconds = std::chrono::duration<double>(t1 - t0).count();
      report.rows.push_back(row);
    }
  }
  return report;
}

void write_report_csv(const ConvergenceReport& report, std::ostream& out) {
  out << "level,rule,nodes,elements,L2sq,H1sq,H2sq,load,errL2,errH1,errH2,errLoad,seconds\n";
  for (const StudyRow& r : report.rows) {
    out << r.level << ',' << r.rule << ',' << r.nodes << ',' << r.elements << ','
        << format_double(r.values.l2_sq) << ',' << format_double(r.values.h1_semi_sq) << ','
        << format_double(r.values.h2_semi_sq) << ',' << format_double(r.values.load) << ','
        << format_double(r.abs_error.l2_sq) << ',' << format_double(r.abs_error.h1_semi_sq) << ','
        << format_double(r.abs_error.h2_semi_sq) << ',' << format_double(r.abs_error.load) << ','
        << format_double(r.seconds) << '\n';
  }
}

}  // namespace bfs
