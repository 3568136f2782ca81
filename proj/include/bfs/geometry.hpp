#pragma once

#include <stdexcept>

namespace bfs {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Side lengths of the axis-aligned rectangles; shared by all elements of a mesh.
struct ElementSize {
  double hx = 1.0;
  double hy = 1.0;
};

inline void check_element_size(const ElementSize& size) {
  if (!(size.hx > 0.0) || !(size.hy > 0.0))
    throw std::invalid_argument("ElementSize: hx and hy must be positive");
}

/// Axis-aligned rectangular domain.
struct Domain {
  double xmin = -1.0;
  double xmax = 1.0;
  double ymin = -1.0;
  double ymax = 1.0;
};

inline void check_domain(const Domain& d) {
  if (!(d.xmax > d.xmin) || !(d.ymax > d.ymin))
    throw std::invalid_argument("Domain: degenerate (xmax <= xmin or ymax <= ymin)");
}

}  // namespace bfs
