#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "bfs/field.hpp"
#include "bfs/quadrature.hpp"

namespace bfs {

/// Squared Sobolev-type integrals of a field: ||v||^2, ||grad v||^2,
/// ||grad^2 v||^2 (Hessian Frobenius norm, mixed term counted twice) and the
/// load functional (f, v).
struct IntegralValues {
  double l2_sq = 0.0;
  double h1_semi_sq = 0.0;
  double h2_semi_sq = 0.0;
  double load = 0.0;
};

/// The three squared norms of a field (load is left at 0).
IntegralValues norms(const C1Field& field, const QuadratureRule& rule);

/// (f, v) with f evaluated at the mapped Gauss points.
double load_functional(const C1Field& field, const AnalyticField& f, const QuadratureRule& rule);

namespace serial {
IntegralValues norms(const C1Field& field, const QuadratureRule& rule);
double load_functional(const C1Field& field, const AnalyticField& f, const QuadratureRule& rule);
}  // namespace serial

/// One (level, rule) row of a convergence study.
struct StudyRow {
  int level = 0;
  int rule = 0;
  long long nodes = 0;
  long long elements = 0;
  IntegralValues values;
  IntegralValues abs_error;
  double seconds = 0.0;
};

struct ConvergenceReport {
  std::vector<StudyRow> rows;
};

/// Interpolates the analytic field on uniformly refined meshes of the domain
/// (level L has 2^L x 2^L elements) and records all four integrals plus
/// their absolute errors against the supplied exact values.
/// Levels must satisfy 1 <= first <= last <= 12 (memory guard).
ConvergenceReport convergence_study(const Domain& domain, const AnalyticField& v,
                                    const AnalyticField& f, const IntegralValues& exact,
                                    int first_level, int last_level, std::span<const int> rules);

/// CSV rows `level,rule,nodes,elements,L2sq,H1sq,H2sq,load,errL2,errH1,errH2,errLoad,seconds`.
void write_report_csv(const ConvergenceReport& report, std::ostream& out);

}  // namespace bfs
