#include "bfs/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "bfs/format.hpp"

namespace bfs {
namespace {

constexpr double kSizeRelTol = 1e-9;   // equal-size enforcement
constexpr double kDupRelTol = 1e-12;   // node uniqueness

// Guard against coordinate-magnitude rounding when the domain sits far from
// the origin; the relative tolerances above dominate in normal use.
double eps_guard(double max_abs_coord) {
  return 32.0 * std::numeric_limits<double>::epsilon() * max_abs_coord;
}

struct RectCheck {
  double width = 0.0;
  double height = 0.0;
};

// Validates that the 4 nodes of element `e` form an axis-aligned rectangle
// listed counter-clockwise from the bottom-left corner. The shape tolerance
// scales with the element's own extent so the first element (which defines
// the mesh size) is checked like all others.
RectCheck check_rectangle(const std::vector<Point2>& nodes, const std::array<int, 4>& elem,
                          int e) {
  double bx0 = nodes[elem[0]].x, bx1 = bx0, by0 = nodes[elem[0]].y, by1 = by0;
  for (int k = 1; k < 4; ++k) {
    bx0 = std::min(bx0, nodes[elem[k]].x);
    bx1 = std::max(bx1, nodes[elem[k]].x);
    by0 = std::min(by0, nodes[elem[k]].y);
    by1 = std::max(by1, nodes[elem[k]].y);
  }
  const double w = bx1 - bx0, h = by1 - by0;
  const double t = std::max(kSizeRelTol * std::min(w, h),
                            eps_guard(std::max({std::abs(bx0), std::abs(bx1),
                                                std::abs(by0), std::abs(by1)})));
  if (!(w > t) || !(h > t))
    throw MeshError(MeshErrorKind::kNonRectangularElement,
                    "element " + std::to_string(e) + " is degenerate", -1, e);

  // Which bounding-box corner does each node occupy?
  int corner[4];
  for (int k = 0; k < 4; ++k) {
    const Point2& p = nodes[elem[k]];
    const int cx = std::abs(p.x - bx0) <= t ? 0 : (std::abs(p.x - bx1) <= t ? 1 : -1);
    const int cy = std::abs(p.y - by0) <= t ? 0 : (std::abs(p.y - by1) <= t ? 1 : -1);
    if (cx < 0 || cy < 0)
      throw MeshError(MeshErrorKind::kNonRectangularElement,
                      "element " + std::to_string(e) + " is not an axis-aligned rectangle", -1, e);
    corner[k] = cx + 2 * cy;  // 0=BL 1=BR 2=TL 3=TR
  }
  int seen = 0;
  for (int k = 0; k < 4; ++k) seen |= 1 << corner[k];
  if (seen != 0xF)
    throw MeshError(MeshErrorKind::kNonRectangularElement,
                    "element " + std::to_string(e) + " repeats a corner", -1, e);
  if (corner[0] != 0 || corner[1] != 1 || corner[2] != 3 || corner[3] != 2)
    throw MeshError(MeshErrorKind::kOrientationError,
                    "element " + std::to_string(e) +
                        " nodes are not counter-clockwise from the bottom-left corner",
                    -1, e);
  return {w, h};
}

// One side of one element, keyed by the canonical node pair.
struct SideRec {
  int a, b;
  int elem;
  bool elem_on_positive_side;  // element lies on the +x (vertical) / +y (horizontal) side
  bool horizontal;
};

void check_duplicate_nodes(const std::vector<Point2>& nodes, double tol) {
  const int n = static_cast<int>(nodes.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (nodes[i].x != nodes[j].x) return nodes[i].x < nodes[j].x;
    return nodes[i].y < nodes[j].y;
  });
  // Split into runs of x-adjacent nodes first, then sort each run by y so
  // that true duplicates end up adjacent.
  std::vector<std::pair<int, int>> runs;
  int run_start = 0;
  for (int k = 1; k < n; ++k)
    if (nodes[order[k]].x - nodes[order[k - 1]].x > tol) {
      runs.push_back({run_start, k});
      run_start = k;
    }
  runs.push_back({run_start, n});

  for (const auto& [lo, hi] : runs) {
    if (hi - lo < 2) continue;
    std::sort(order.begin() + lo, order.begin() + hi,
              [&](int i, int j) { return nodes[i].y < nodes[j].y; });
    for (int k = lo + 1; k < hi; ++k) {
      const Point2& p = nodes[order[k - 1]];
      const Point2& q = nodes[order[k]];
      if (std::abs(p.x - q.x) <= tol && std::abs(p.y - q.y) <= tol)
        throw MeshError(MeshErrorKind::kDuplicateNode,
                        "nodes " + std::to_string(order[k - 1]) + " and " +
                            std::to_string(order[k]) + " coincide",
                        -1, std::max(order[k - 1], order[k]));
    }
  }
}

}  // namespace

RectMesh::RectMesh(std::vector<Point2> nodes, std::vector<std::array<int, 4>> elements)
    : nodes_(std::move(nodes)), elements_(std::move(elements)) {
  if (nodes_.empty() || elements_.empty())
    throw MeshError(MeshErrorKind::kEmptyMesh, "mesh needs at least one node and one element");

  const int n = num_nodes();
  const int ne = num_elements();
  for (int e = 0; e < ne; ++e)
    for (int k = 0; k < 4; ++k)
      if (elements_[e][k] < 0 || elements_[e][k] >= n)
        throw MeshError(MeshErrorKind::kDanglingNodeIndex,
                        "element " + std::to_string(e) + " references node " +
                            std::to_string(elements_[e][k] + 1) + " of " + std::to_string(n),
                        -1, e);

  // The first element fixes the shared size.
  {
    RectCheck rc = check_rectangle(nodes_, elements_[0], 0);
    size_ = {rc.width, rc.height};
  }
  const double hmin = std::min(size_.hx, size_.hy);
  const double size_tol = kSizeRelTol * hmin;
  for (int e = 0; e < ne; ++e) {
    RectCheck rc = check_rectangle(nodes_, elements_[e], e);
    if (std::abs(rc.width - size_.hx) > size_tol || std::abs(rc.height - size_.hy) > size_tol)
      throw MeshError(MeshErrorKind::kInconsistentSize,
                      "element " + std::to_string(e) + " has size " + format_double(rc.width) +
                          " x " + format_double(rc.height) + ", expected " +
                          format_double(size_.hx) + " x " + format_double(size_.hy),
                      -1, e);
  }

  check_duplicate_nodes(nodes_, kDupRelTol * hmin);

  {
    std::vector<std::pair<std::array<int, 4>, int>> keys(ne);
    for (int e = 0; e < ne; ++e) {
      keys[e].first = elements_[e];
      std::sort(keys[e].first.begin(), keys[e].first.end());
      keys[e].second = e;
    }
    std::sort(keys.begin(), keys.end());
    for (int e = 1; e < ne; ++e)
      if (keys[e].first == keys[e - 1].first)
        throw MeshError(MeshErrorKind::kDuplicateElement,
                        "elements " + std::to_string(keys[e - 1].second) + " and " +
                            std::to_string(keys[e].second) + " use the same nodes",
                        -1, keys[e].second);
  }

  // Collect element sides and merge them into edges.
  std::vector<SideRec> sides;
  sides.reserve(static_cast<size_t>(ne) * 4);
  for (int e = 0; e < ne; ++e) {
    const auto& el = elements_[e];
    auto add = [&](int p, int q, bool positive, bool horizontal) {
      sides.push_back({std::min(p, q), std::max(p, q), e, positive, horizontal});
    };
    add(el[0], el[1], true, true);    // bottom: element above
    add(el[3], el[2], false, true);   // top: element below
    add(el[0], el[3], true, false);   // left: element on +x side
    add(el[1], el[2], false, false);  // right: element on -x side
  }
  std::sort(sides.begin(), sides.end(), [](const SideRec& s, const SideRec& t) {
    if (s.a != t.a) return s.a < t.a;
    return s.b < t.b;
  });

  edges_.reserve(sides.size());
  for (size_t i = 0; i < sides.size();) {
    size_t j = i;
    while (j < sides.size() && sides[j].a == sides[i].a && sides[j].b == sides[i].b) ++j;
    if (j - i > 2)
      throw MeshError(MeshErrorKind::kBadEdgeIncidence,
                      "edge (" + std::to_string(sides[i].a + 1) + ", " +
                          std::to_string(sides[i].b + 1) + ") is shared by more than 2 elements",
                      -1, sides[i].elem);
    Edge ed;
    ed.a = sides[i].a;
    ed.b = sides[i].b;
    ed.horizontal = sides[i].horizontal;
    for (size_t k = i; k < j; ++k) {
      int& slot = sides[k].elem_on_positive_side ? ed.elem_right : ed.elem_left;
      if (slot != -1)
        throw MeshError(MeshErrorKind::kBadEdgeIncidence,
                        "two elements lie on the same side of edge (" +
                            std::to_string(ed.a + 1) + ", " + std::to_string(ed.b + 1) + ")",
                        -1, sides[k].elem);
      slot = sides[k].elem;
    }
    edges_.push_back(ed);
    i = j;
  }
}

int RectMesh::find_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b},
                             [](const Edge& e, const std::pair<int, int>& key) {
                               if (e.a != key.first) return e.a < key.first;
                               return e.b < key.second;
                             });
  if (it == edges_.end() || it->a != a || it->b != b) return -1;
  return static_cast<int>(it - edges_.begin());
}

RectMesh uniform_mesh(double xmin, double xmax, double ymin, double ymax, int nx, int ny) {
  if (!(xmax > xmin) || !(ymax > ymin))
    throw std::invalid_argument("uniform_mesh: degenerate domain");
  if (nx < 1 || ny < 1) throw std::invalid_argument("uniform_mesh: nx and ny must be >= 1");

  const double hx = (xmax - xmin) / nx;
  const double hy = (ymax - ymin) / ny;
  std::vector<double> xs(nx + 1), ys(ny + 1);
  for (int i = 0; i <= nx; ++i) xs[i] = xmin + i * hx;
  for (int j = 0; j <= ny; ++j) ys[j] = ymin + j * hy;
  xs[nx] = xmax;  // keep the domain boundary exact
  ys[ny] = ymax;

  std::vector<Point2> nodes;
  nodes.reserve(static_cast<size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) nodes.push_back({xs[i], ys[j]});

  std::vector<std::array<int, 4>> elements;
  elements.reserve(static_cast<size_t>(nx) * ny);
  const int stride = nx + 1;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int n1 = j * stride + i;
      elements.push_back({n1, n1 + 1, n1 + stride + 1, n1 + stride});
    }
  return RectMesh(std::move(nodes), std::move(elements));
}

RectMesh refine(const RectMesh& mesh) {
  const int n = mesh.num_nodes();
  const int ne = mesh.num_elements();
  const auto& edges = mesh.edges();

  std::vector<Point2> nodes;
  nodes.reserve(n + edges.size() + ne);
  for (int k = 0; k < n; ++k) nodes.push_back(mesh.node(k));
  for (const Edge& ed : edges) {
    const Point2& p = mesh.node(ed.a);
    const Point2& q = mesh.node(ed.b);
    nodes.push_back({0.5 * (p.x + q.x), 0.5 * (p.y + q.y)});
  }
  const int center_base = n + static_cast<int>(edges.size());
  for (int e = 0; e < ne; ++e) {
    const auto& el = mesh.element(e);
    const Point2& p = mesh.node(el[0]);
    const Point2& q = mesh.node(el[2]);
    nodes.push_back({0.5 * (p.x + q.x), 0.5 * (p.y + q.y)});
  }

  std::vector<std::array<int, 4>> elements;
  elements.reserve(static_cast<size_t>(ne) * 4);
  for (int e = 0; e < ne; ++e) {
    const auto& el = mesh.element(e);
    const int mb = n + mesh.find_edge(el[0], el[1]);
    const int mr = n + mesh.find_edge(el[1], el[2]);
    const int mt = n + mesh.find_edge(el[3], el[2]);
    const int ml = n + mesh.find_edge(el[0], el[3]);
    const int c = center_base + e;
    elements.push_back({el[0], mb, c, ml});
    elements.push_back({mb, el[1], mr, c});
    elements.push_back({ml, c, mt, el[3]});
    elements.push_back({c, mr, el[2], mt});
  }
  return RectMesh(std::move(nodes), std::move(elements));
}

namespace {

// Line-oriented reader that strips '#' comments and counts lines.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_no_;
      if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
      const auto first = raw.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      out = raw;
      return true;
    }
    return false;
  }

  int line_no() const { return line_no_; }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

[[noreturn]] void malformed(int line, const std::string& what) {
  throw MeshError(MeshErrorKind::kMalformedLine, what, line);
}

long parse_count(const std::string& text, const std::string& keyword, int line) {
  std::istringstream ss(text);
  std::string word;
  long count = 0;
  if (!(ss >> word) || word != keyword)
    throw MeshError(MeshErrorKind::kBadHeader, "expected '" + keyword + " <count>'", line);
  if (!(ss >> count) || count < 1) malformed(line, "bad count after '" + keyword + "'");
  std::string extra;
  if (ss >> extra) malformed(line, "trailing tokens after '" + keyword + " <count>'");
  return count;
}

}  // namespace

RectMesh load_mesh(std::istream& in) {
  LineReader reader(in);
  std::string text;

  if (!reader.next(text))
    throw MeshError(MeshErrorKind::kBadHeader, "empty mesh file", reader.line_no());
  const long n = parse_count(text, "nodes", reader.line_no());

  std::vector<Point2> nodes;
  std::vector<int> node_lines;
  nodes.reserve(n);
  for (long k = 0; k < n; ++k) {
    if (!reader.next(text)) malformed(reader.line_no(), "unexpected end of file in node list");
    std::istringstream ss(text);
    Point2 p;
    if (!(ss >> p.x >> p.y)) malformed(reader.line_no(), "expected 'x y' node coordinates");
    std::string extra;
    if (ss >> extra) malformed(reader.line_no(), "trailing tokens after node coordinates");
    nodes.push_back(p);
    node_lines.push_back(reader.line_no());
  }

  if (!reader.next(text))
    throw MeshError(MeshErrorKind::kBadHeader, "missing 'elements <count>' section",
                    reader.line_no());
  const long ne = parse_count(text, "elements", reader.line_no());

  std::vector<std::array<int, 4>> elements;
  std::vector<int> elem_lines;
  elements.reserve(ne);
  for (long e = 0; e < ne; ++e) {
    if (!reader.next(text)) malformed(reader.line_no(), "unexpected end of file in element list");
    std::istringstream ss(text);
    std::array<long, 4> idx;
    if (!(ss >> idx[0] >> idx[1] >> idx[2] >> idx[3]))
      malformed(reader.line_no(), "expected 4 node indices");
    std::string extra;
    if (ss >> extra) malformed(reader.line_no(), "trailing tokens after element indices");
    std::array<int, 4> el;
    for (int k = 0; k < 4; ++k) {
      if (idx[k] < 1 || idx[k] > n)
        throw MeshError(MeshErrorKind::kDanglingNodeIndex,
                        "node index " + std::to_string(idx[k]) + " out of range 1.." +
                            std::to_string(n),
                        reader.line_no(), static_cast<int>(e));
      el[k] = static_cast<int>(idx[k] - 1);  // file format is 1-based
    }
    elements.push_back(el);
    elem_lines.push_back(reader.line_no());
  }
  if (reader.next(text)) malformed(reader.line_no(), "unexpected content after element list");

  try {
    return RectMesh(std::move(nodes), std::move(elements));
  } catch (const MeshError& err) {
    if (err.item() < 0) throw;
    const bool node_error = err.kind() == MeshErrorKind::kDuplicateNode;
    const auto& lines = node_error ? node_lines : elem_lines;
    const int line = err.item() < static_cast<int>(lines.size()) ? lines[err.item()] : -1;
    throw MeshError(err.kind(), err.what(), line, err.item());
  }
}

void save_mesh(const RectMesh& mesh, std::ostream& out) {
  out << "nodes " << mesh.num_nodes() << "\n";
  for (int k = 0; k < mesh.num_nodes(); ++k)
    out << format_double(mesh.node(k).x) << " " << format_double(mesh.node(k).y) << "\n";
  out << "elements " << mesh.num_elements() << "\n";
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& el = mesh.element(e);
    out << el[0] + 1 << " " << el[1] + 1 << " " << el[2] + 1 << " " << el[3] + 1 << "\n";
  }
}

std::vector<Point2> element_midpoints(const RectMesh& mesh) {
  std::vector<Point2> mids(mesh.num_elements());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Point2& p = mesh.node(mesh.element(e)[0]);
    const Point2& q = mesh.node(mesh.element(e)[2]);
    mids[e] = {0.5 * (p.x + q.x), 0.5 * (p.y + q.y)};
  }
  return mids;
}

std::vector<Point2> edge_midpoints(const RectMesh& mesh) {
  std::vector<Point2> mids(mesh.num_edges());
  for (int i = 0; i < mesh.num_edges(); ++i) {
    const Point2& p = mesh.node(mesh.edges()[i].a);
    const Point2& q = mesh.node(mesh.edges()[i].b);
    mids[i] = {0.5 * (p.x + q.x), 0.5 * (p.y + q.y)};
  }
  return mids;
}

Point2 edge_reference_point(const RectMesh& mesh, int edge_index, int element, double t) {
  const Edge& ed = mesh.edges()[edge_index];
  const auto& el = mesh.element(element);
  auto matches = [&](int p, int q) {
    return ed.a == std::min(p, q) && ed.b == std::max(p, q);
  };
  if (matches(el[0], el[1])) return {t, 0.0};  // bottom side
  if (matches(el[1], el[2])) return {1.0, t};  // right side
  if (matches(el[3], el[2])) return {t, 1.0};  // top side
  if (matches(el[0], el[3])) return {0.0, t};  // left side
  throw std::invalid_argument("edge_reference_point: edge is not a side of the element");
}

}  // namespace bfs
