#include "bfs/io.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace bfs {

void save_field(const C1Field& field, std::ostream& out) {
  out << "dofs " << field.num_nodes() << "\n";
  for (int k = 0; k < field.num_nodes(); ++k) {
    const auto row = field.node_dofs(k);
    out << format_double(row[0]) << " " << format_double(row[1]) << " " << format_double(row[2])
        << " " << format_double(row[3]) << "\n";
  }
}

C1Field load_field(std::istream& in, const RectMesh& mesh) {
  std::string raw;
  int line_no = 0;
  auto next = [&](std::string& out_line) {
    while (std::getline(in, raw)) {
      ++line_no;
      if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
      if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
      out_line = raw;
      return true;
    }
    return false;
  };

  std::string text;
  if (!next(text)) throw FieldFormatError("empty field file", line_no);
  std::istringstream header(text);
  std::string word;
  long n = 0;
  if (!(header >> word >> n) || word != "dofs")
    throw FieldFormatError("expected 'dofs <count>'", line_no);
  if (n != mesh.num_nodes())
    throw FieldFormatError("field has " + std::to_string(n) + " rows but the mesh has " +
                               std::to_string(mesh.num_nodes()) + " nodes",
                           line_no);

  std::vector<double> dofs;
  dofs.reserve(static_cast<size_t>(n) * 4);
  for (long k = 0; k < n; ++k) {
    if (!next(text)) throw FieldFormatError("unexpected end of file in DOF list", line_no);
    std::istringstream ss(text);
    double v[4];
    if (!(ss >> v[0] >> v[1] >> v[2] >> v[3]))
      throw FieldFormatError("expected 4 DOF values", line_no);
    std::string extra;
    if (ss >> extra) throw FieldFormatError("trailing tokens after DOF values", line_no);
    for (double x : v) {
      if (!std::isfinite(x)) throw FieldFormatError("non-finite DOF value", line_no);
      dofs.push_back(x);
    }
  }
  if (next(text)) throw FieldFormatError("unexpected content after DOF list", line_no);
  return C1Field(mesh, std::move(dofs));
}

void write_shape_table_csv(const ShapeTable& table, std::span<const Point2> points,
                           std::ostream& out) {
  out << "i,x,y,slot,value\n";
  for (int i = 0; i < kNumBasis; ++i)
    for (int p = 0; p < table.num_points(); ++p)
      out << i + 1 << ',' << format_double(points[p].x) << ',' << format_double(points[p].y)
          << ",0," << format_double(table(i, p)) << '\n';
}

void write_deriv_table_csv(const DerivTable& table, std::span<const Point2> points,
                           std::ostream& out) {
  out << "i,x,y,slot,value\n";
  for (int i = 0; i < kNumBasis; ++i)
    for (int p = 0; p < table.num_points(); ++p)
      for (int s = 0; s < kNumDerivSlots; ++s)
        out << i + 1 << ',' << format_double(points[p].x) << ',' << format_double(points[p].y)
            << ',' << s + 1 << ',' << format_double(table(s, i, p)) << '\n';
}

void write_element_midpoints_csv(const RectMesh& mesh, std::ostream& out) {
  out << "element,x,y\n";
  const auto mids = element_midpoints(mesh);
  for (size_t e = 0; e < mids.size(); ++e)
    out << e + 1 << ',' << format_double(mids[e].x) << ',' << format_double(mids[e].y) << '\n';
}

void write_edge_midpoints_csv(const RectMesh& mesh, std::ostream& out) {
  out << "edge,x,y\n";
  const auto mids = edge_midpoints(mesh);
  for (size_t i = 0; i < mids.size(); ++i)
    out << i + 1 << ',' << format_double(mids[i].x) << ',' << format_double(mids[i].y) << '\n';
}

void write_field_samples_csv(const C1Field& field, const Point2& ref_point, std::ostream& out) {
  out << "element,x,y,v,vx,vy,vxx,vyy,vxy\n";
  const RectMesh& mesh = field.mesh();
  const Point2 pts[1] = {ref_point};
  const Matrix values = eval_values(field, pts);
  const DerivEval derivs = eval_derivatives(field, pts);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Point2 x = mesh.to_actual(e, ref_point);
    out << e + 1 << ',' << format_double(x.x) << ',' << format_double(x.y) << ','
        << format_double(values(e, 0)) << ',' << format_double(derivs.dx(e, 0)) << ','
        << format_double(derivs.dy(e, 0)) << ',' << format_double(derivs.dxx(e, 0)) << ','
        << format_double(derivs.dyy(e, 0)) << ',' << format_double(derivs.dxy(e, 0)) << '\n';
  }
}

void write_edge_values_csv(const C1Field& field, std::ostream& out) {
  out << "edge,x,y,v\n";
  const RectMesh& mesh = field.mesh();
  const double ts[1] = {0.5};
  const Matrix values = eval_on_edges(field, ts);
  const auto mids = edge_midpoints(mesh);
  for (int i = 0; i < mesh.num_edges(); ++i)
    out << i + 1 << ',' << format_double(mids[i].x) << ',' << format_double(mids[i].y) << ','
        << format_double(values(i, 0)) << '\n';
}

void write_rule_csv(const QuadratureRule& rule, std::ostream& out) {
  out << "qx,qy,w\n";
  for (int q = 0; q < rule.num_points(); ++q)
    out << format_double(rule.points[q].x) << ',' << format_double(rule.points[q].y) << ','
        << format_double(rule.weights[q]) << '\n';
}

void write_mapped_rule_csv(const RectMesh& mesh, const QuadratureRule& rule, std::ostream& out) {
  out << "element,x,y\n";
  for (int e = 0; e < mesh.num_elements(); ++e)
    for (int q = 0; q < rule.num_points(); ++q) {
      const Point2 x = mesh.to_actual(e, rule.points[q]);
      out << e + 1 << ',' << format_double(x.x) << ',' << format_double(x.y) << '\n';
    }
}

void write_vtk_structured(const RectMesh& mesh, const C1Field& field, std::ostream& out,
                          const std::string& title) {
  // Recover the tensor-grid structure: grid indices from coordinates.
  double xmin = mesh.node(0).x, ymin = mesh.node(0).y;
  for (int k = 1; k < mesh.num_nodes(); ++k) {
    xmin = std::min(xmin, mesh.node(k).x);
    ymin = std::min(ymin, mesh.node(k).y);
  }
  const double hx = mesh.element_size().hx;
  const double hy = mesh.element_size().hy;
  int nx = 0, ny = 0;
  for (int k = 0; k < mesh.num_nodes(); ++k) {
    nx = std::max(nx, static_cast<int>(std::lround((mesh.node(k).x - xmin) / hx)));
    ny = std::max(ny, static_cast<int>(std::lround((mesh.node(k).y - ymin) / hy)));
  }
  std::vector<std::pair<long, int>> cells(mesh.num_nodes());
  for (int k = 0; k < mesh.num_nodes(); ++k) {
    const long i = std::lround((mesh.node(k).x - xmin) / hx);
    const long j = std::lround((mesh.node(k).y - ymin) / hy);
    cells[k] = {j * static_cast<long>(nx + 1) + i, k};
  }
  if (static_cast<long>(mesh.num_nodes()) != static_cast<long>(nx + 1) * (ny + 1))
    throw std::invalid_argument("write_vtk_structured: mesh is not a full tensor grid");
  std::sort(cells.begin(), cells.end());
  for (size_t k = 1; k < cells.size(); ++k)
    if (cells[k].first == cells[k - 1].first)
      throw std::invalid_argument("write_vtk_structured: mesh is not a full tensor grid");

  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET STRUCTURED_GRID\n";
  out << "DIMENSIONS " << nx + 1 << " " << ny + 1 << " 1\n";
  out << "POINTS " << mesh.num_nodes() << " double\n";
  for (const auto& [key, k] : cells)
    out << format_double(mesh.node(k).x) << " " << format_double(mesh.node(k).y) << " 0\n";
  out << "POINT_DATA " << mesh.num_nodes() << "\n";
  const char* names[4] = {"v", "dvdx", "dvdy", "dvdxdy"};
  for (int c = 0; c < 4; ++c) {
    out << "SCALARS " << names[c] << " double 1\nLOOKUP_TABLE default\n";
    for (const auto& [key, k] : cells) out << format_double(field.dof(k, c)) << "\n";
  }
}

}  // namespace bfs
