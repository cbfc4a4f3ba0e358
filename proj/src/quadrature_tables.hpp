#pragma once

#include <array>
#include <vector>

namespace curlstokes::detail {

struct RawTrianglePoint {
  std::array<double, 3> barycentric;
  double weight;
};

struct RawTriangleRule {
  int degree;
  std::vector<RawTrianglePoint> points;
};

struct RawEdgePoint {
  double s;
  double weight;
};

struct RawEdgeRule {
  int degree;
  std::vector<RawEdgePoint> points;
};

extern const std::array<RawTriangleRule, 10> kTriangleRules;
extern const std::array<RawEdgeRule, 12> kEdgeRules;

}  // namespace curlstokes::detail
