#include "curlstokes/quadrature.hpp"

#include <string>

#include "quadrature_tables.hpp"

namespace curlstokes {

namespace {

std::array<TriangleRule, kMaxTriangleDegree> build_triangle_rules() {
  std::array<TriangleRule, kMaxTriangleDegree> rules;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& raw = detail::kTriangleRules[i];
    rules[i].degree = raw.degree;
    for (const auto& p : raw.points) {
      rules[i].points.push_back(p.barycentric);
      rules[i].weights.push_back(p.weight);
    }
  }
  return rules;
}

std::array<EdgeRule, kMaxEdgeDegree> build_edge_rules() {
  std::array<EdgeRule, kMaxEdgeDegree> rules;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& raw = detail::kEdgeRules[i];
    rules[i].degree = raw.degree;
    for (const auto& p : raw.points) {
      rules[i].points.push_back(p.s);
      rules[i].weights.push_back(p.weight);
    }
  }
  return rules;
}

}  // namespace

const TriangleRule& triangle_rule(int degree) {
  static const auto rules = build_triangle_rules();
  if (degree < 1 || degree > kMaxTriangleDegree) {
    throw std::out_of_range("triangle quadrature degree " + std::to_string(degree) +
                            " outside 1.." + std::to_string(kMaxTriangleDegree));
  }
  return rules[static_cast<std::size_t>(degree - 1)];
}

const EdgeRule& edge_rule(int degree) {
  static const auto rules = build_edge_rules();
  if (degree < 1 || degree > kMaxEdgeDegree) {
    throw std::out_of_range("edge quadrature degree " + std::to_string(degree) + " outside 1.." +
                            std::to_string(kMaxEdgeDegree));
  }
  return rules[static_cast<std::size_t>(degree - 1)];
}

}  // namespace curlstokes
