#pragma once

#include <array>
#include <stdexcept>
#include <vector>

namespace curlstokes {

/// Rule on the reference triangle {(x,y) : x, y >= 0, x + y <= 1}. Points are
/// barycentric (1 - x - y, x, y); weights sum to the reference area 1/2.
struct TriangleRule {
  int degree = 0;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// Rule on [0,1]; weights sum to 1.
struct EdgeRule {
  int degree = 0;
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

inline constexpr int kMaxTriangleDegree = 10;
inline constexpr int kMaxEdgeDegree = 12;

/// Positive-weight rule exact for all polynomials of total degree <= degree.
/// Throws std::out_of_range outside 1..kMaxTriangleDegree.
const TriangleRule& triangle_rule(int degree);

/// Gauss-Legendre rule on [0,1] exact up to `degree`.
/// Throws std::out_of_range outside 1..kMaxEdgeDegree.
const EdgeRule& edge_rule(int degree);

/// Clamps a requested exactness into the supported range; used by assembly
/// when data integrands ask for more than the tables provide.
inline int clamp_triangle_degree(int degree) {
  return degree < 1 ? 1 : (degree > kMaxTriangleDegree ? kMaxTriangleDegree : degree);
}
inline int clamp_edge_degree(int degree) {
  return degree < 1 ? 1 : (degree > kMaxEdgeDegree ? kMaxEdgeDegree : degree);
}

}  // namespace curlstokes
