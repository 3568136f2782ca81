#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>

#include "bfs/bfs_basis.hpp"
#include "bfs/field.hpp"
#include "bfs/format.hpp"
#include "bfs/mesh.hpp"
#include "bfs/quadrature.hpp"

namespace bfs {

/// Parse failure in a field file; carries the 1-based line number.
class FieldFormatError : public std::runtime_error {
 public:
  FieldFormatError(const std::string& msg, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Field text format: `dofs <n>` then n lines of 4 reals, paired with a mesh.
void save_field(const C1Field& field, std::ostream& out);
C1Field load_field(std::istream& in, const RectMesh& mesh);

/// Basis table dumps, CSV header `i,x,y,slot,value` (i 1-based; slot 0 for
/// values, 1..5 for dx, dy, dxx, dyy, dxy).
void write_shape_table_csv(const ShapeTable& table, std::span<const Point2> points,
                           std::ostream& out);
void write_deriv_table_csv(const DerivTable& table, std::span<const Point2> points,
                           std::ostream& out);

/// Midpoint dumps, headers `element,x,y` / `edge,x,y` (ids 1-based).
void write_element_midpoints_csv(const RectMesh& mesh, std::ostream& out);
void write_edge_midpoints_csv(const RectMesh& mesh, std::ostream& out);

/// Field samples at one reference point per element:
/// `element,x,y,v,vx,vy,vxx,vyy,vxy` with (x, y) the mapped point.
void write_field_samples_csv(const C1Field& field, const Point2& ref_point, std::ostream& out);

/// Edge midpoint values: `edge,x,y,v`.
void write_edge_values_csv(const C1Field& field, std::ostream& out);

/// Reference rule dump `qx,qy,w` and mapped Gauss points `element,x,y`.
void write_rule_csv(const QuadratureRule& rule, std::ostream& out);
void write_mapped_rule_csv(const RectMesh& mesh, const QuadratureRule& rule, std::ostream& out);

/// Legacy-VTK structured grid with the four nodal DOF fields as point data.
/// The mesh must cover a full tensor grid (as produced by uniform_mesh or its
/// refinements); nodes are reordered row-major internally.
void write_vtk_structured(const RectMesh& mesh, const C1Field& field, std::ostream& out,
                          const std::string& title = "bfsfem field");

}  // namespace bfs
