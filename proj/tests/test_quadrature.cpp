#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "curlstokes/quadrature.hpp"

namespace curlstokes {
namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// ∫ over the reference triangle of x^a y^b = a! b! / (a + b + 2)!
double monomial_integral(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

TEST(Quadrature, TriangleExamples) {
  const auto& r1 = triangle_rule(1);
  EXPECT_NEAR(std::accumulate(r1.weights.begin(), r1.weights.end(), 0.0), 0.5, 1e-15);

  auto integrate = [](const TriangleRule& r, auto f) {
    double s = 0.0;
    for (std::size_t q = 0; q < r.size(); ++q) s += r.weights[q] * f(r.points[q][1], r.points[q][2]);
    return s;
  };
  EXPECT_NEAR(integrate(triangle_rule(2), [](double x, double y) { return x * y; }), 1.0 / 24.0, 1e-15);
  EXPECT_NEAR(integrate(triangle_rule(4), [](double x, double) { return std::pow(x, 4); }), 1.0 / 30.0,
              1e-15);
}

TEST(Quadrature, TriangleExactnessOverMonomialBasis) {
  for (int degree = 1; degree <= kMaxTriangleDegree; ++degree) {
    const TriangleRule& rule = triangle_rule(degree);
    EXPECT_EQ(rule.degree, degree);
    double weight_sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      EXPECT_GT(rule.weights[q], 0.0);
      const auto& b = rule.points[q];
      EXPECT_NEAR(b[0] + b[1] + b[2], 1.0, 1e-15);
      for (double c : b) EXPECT_GE(c, 0.0);
      weight_sum += rule.weights[q];
    }
    EXPECT_NEAR(weight_sum, 0.5, 1e-14);
    for (int a = 0; a <= degree; ++a) {
      for (int b = 0; a + b <= degree; ++b) {
        double s = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
          s += rule.weights[q] * std::pow(rule.points[q][1], a) * std::pow(rule.points[q][2], b);
        }
        const double exact = monomial_integral(a, b);
        EXPECT_LE(std::abs(s - exact), 1e-13 * exact) << "degree " << degree << " x^" << a << " y^" << b;
      }
    }
  }
}

TEST(Quadrature, EdgeExamples) {
  auto integrate = [](const EdgeRule& r, int k) {
    double s = 0.0;
    for (std::size_t q = 0; q < r.size(); ++q) s += r.weights[q] * std::pow(r.points[q], k);
    return s;
  };
  EXPECT_NEAR(integrate(edge_rule(1), 1), 0.5, 1e-15);
  EXPECT_NEAR(integrate(edge_rule(3), 3), 0.25, 1e-15);
  EXPECT_NEAR(integrate(edge_rule(5), 5), 1.0 / 6.0, 1e-15);
}

TEST(Quadrature, EdgeExactnessOverMonomialBasis) {
  for (int degree = 1; degree <= kMaxEdgeDegree; ++degree) {
    const EdgeRule& rule = edge_rule(degree);
    double weight_sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      EXPECT_GT(rule.weights[q], 0.0);
      EXPECT_GE(rule.points[q], 0.0);
      EXPECT_LE(rule.points[q], 1.0);
      weight_sum += rule.weights[q];
    }
    EXPECT_NEAR(weight_sum, 1.0, 1e-14);
    for (int k = 0; k <= degree; ++k) {
      double s = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) s += rule.weights[q] * std::pow(rule.points[q], k);
      EXPECT_LE(std::abs(s - 1.0 / (k + 1)), 1e-13 / (k + 1)) << "degree " << degree << " s^" << k;
    }
  }
}

TEST(Quadrature, RejectsUnsupportedDegrees) {
  EXPECT_THROW(triangle_rule(0), std::out_of_range);
  EXPECT_THROW(triangle_rule(11), std::out_of_range);
  EXPECT_THROW(edge_rule(0), std::out_of_range);
  EXPECT_THROW(edge_rule(13), std::out_of_range);
}

}  // namespace
}  // namespace curlstokes
