#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "bfs/geometry.hpp"

namespace bfs {

enum class MeshErrorKind {
  kMalformedLine,
  kBadHeader,
  kDanglingNodeIndex,
  kNonRectangularElement,
  kOrientationError,
  kInconsistentSize,
  kDuplicateNode,
  kDuplicateElement,
  kBadEdgeIncidence,
  kEmptyMesh,
};

class MeshError : public std::runtime_error {
 public:
  MeshError(MeshErrorKind kind, const std::string& msg, int line = -1, int item = -1)
      : std::runtime_error(line >= 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        kind_(kind),
        line_(line),
        item_(item) {}

  MeshErrorKind kind() const { return kind_; }
  int line() const { return line_; }  // 1-based file line, -1 outside file parsing
  int item() const { return item_; }  // offending element or node (0-based), -1 if n/a

 private:
  MeshErrorKind kind_;
  int line_;
  int item_;
};

/// Axis-aligned mesh edge. Node ids satisfy a < b. For vertical edges
/// elem_left/elem_right are the elements on the -x/+x side; for horizontal
/// edges they are the elements below/above. -1 marks a missing neighbour.
struct Edge {
  int a = -1;
  int b = -1;
  int elem_left = -1;
  int elem_right = -1;
  bool horizontal = false;
};

/// Triangulation of a domain into equal-size axis-aligned rectangles.
/// Element node order is N1 = bottom-left, N2 = bottom-right, N3 = top-right,
/// N4 = top-left. Construction validates every invariant (rectangularity,
/// equal sizes, node uniqueness, edge incidence) and builds the edge set,
/// sorted by canonical (a, b) node pair. Immutable afterwards.
class RectMesh {
 public:
  RectMesh(std::vector<Point2> nodes, std::vector<std::array<int, 4>> elements);

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_elements() const { return static_cast<int>(elements_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Point2& node(int k) const { return nodes_[k]; }
  const std::array<int, 4>& element(int e) const { return elements_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const ElementSize& element_size() const { return size_; }

  /// Coordinates of the element's N1 corner.
  Point2 element_origin(int e) const { return nodes_[elements_[e][0]]; }

  /// Map a reference point in [0,1]^2 to actual coordinates of element e.
  Point2 to_actual(int e, const Point2& ref) const {
    const Point2 o = element_origin(e);
    return {o.x + ref.x * size_.hx, o.y + ref.y * size_.hy};
  }

  /// Index into edges() of the edge with canonical node pair (a, b); -1 if absent.
  int find_edge(int a, int b) const;

 private:
  std::vector<Point2> nodes_;
  std::vector<std::array<int, 4>> elements_;
  ElementSize size_{1.0, 1.0};
  std::vector<Edge> edges_;
};

/// Structured mesh of (xmin,xmax)x(ymin,ymax) with nx-by-ny elements.
/// Nodes are numbered row-major from the bottom-left corner, x fastest.
RectMesh uniform_mesh(double xmin, double xmax, double ymin, double ymax, int nx, int ny);

/// Split every rectangle into 4 congruent ones. Input nodes keep their
/// indices and exact coordinates; edge midpoints and element centers are
/// appended after them.
RectMesh refine(const RectMesh& mesh);

/// Read the text format: `nodes <n>` then n lines `x y`, `elements <ne>`
/// then ne lines `i1 i2 i3 i4` (1-based, counter-clockwise from bottom-left).
/// `#` starts a comment. Throws MeshError with the offending line number.
RectMesh load_mesh(std::istream& in);

/// Write the same text format (1-based element node indices).
void save_mesh(const RectMesh& mesh, std::ostream& out);

/// Arithmetic centers of all elements, in element order.
std::vector<Point2> element_midpoints(const RectMesh& mesh);

/// Midpoints of all edges, in edge order.
std::vector<Point2> edge_midpoints(const RectMesh& mesh);

/// Reference point at parameter t (in [0,1]) along an edge, seen from an
/// incident element. The parameter runs with increasing x (horizontal edges)
/// or increasing y (vertical edges).
Point2 edge_reference_point(const RectMesh& mesh, int edge_index, int element, double t);

}  // namespace bfs
