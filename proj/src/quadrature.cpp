#include "bfs/quadrature.hpp"

#include <stdexcept>

namespace bfs {
namespace {

// 1D Gauss-Legendre nodes and weights mapped from [-1, 1] to [0, 1].
void gauss_1d(int m, std::vector<double>& x, std::vector<double>& w) {
  switch (m) {
    case 1:
      x = {0.5};
      w = {1.0};
      break;
    case 2: {
      const double d = 0.5 / std::sqrt(3.0);
      x = {0.5 - d, 0.5 + d};
      w = {0.5, 0.5};
      break;
    }
    case 3: {
      const double d = std::sqrt(15.0) / 10.0;
      x = {0.5 - d, 0.5, 0.5 + d};
      w = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
      break;
    }
    default:
      throw std::invalid_argument("gauss_rule: unsupported point count");
  }
}

}  // namespace

QuadratureRule gauss_rule(int num_points) {
  int m;
  switch (num_points) {
    case 1: m = 1; break;
    case 4: m = 2; break;
    case 9: m = 3; break;
    default:
      throw std::invalid_argument("gauss_rule: supported rules have 1, 4 or 9 points");
  }
  std::vector<double> x, w;
  gauss_1d(m, x, w);
  QuadratureRule rule;
  rule.points.reserve(num_points);
  rule.weights.reserve(num_points);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      rule.points.push_back({x[i], x[j]});
      rule.weights.push_back(w[i] * w[j]);
    }
  return rule;
}

}  // namespace bfs
