#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Dense>

#include "curlstokes/analysis.hpp"
#include "curlstokes/cases.hpp"
#include "curlstokes/solver.hpp"

namespace curlstokes {
namespace {

std::shared_ptr<const Mesh> shared(Mesh m) { return std::make_shared<const Mesh>(std::move(m)); }

BoundaryData boundary(const Mesh& mesh, VectorFunction g, double penalty = 10.0) {
  BoundaryData bd;
  bd.g = std::move(g);
  bd.penalty = penalty;
  bd.h = mesh.h_max();
  return bd;
}

struct Solved {
  std::shared_ptr<const EdgeSpace> v;
  std::shared_ptr<const NodalSpace> q;
  SaddleSystem system;
  SolveReport report;
};

Solved solve_case(const ManufacturedCase& c, const Mesh& mesh, int order, SolveOptions options = {}) {
  Solved s;
  const auto m = shared(mesh);
  s.v = build_edge_space(m, order);
  s.q = build_nodal_space(m, order);
  s.system = assemble_system(*s.v, *s.q, c.f, boundary(*m, c.g));
  s.report = solve(s.system, options);
  return s;
}

TEST(Solver, LinearCaseIsReproduced) {
  const auto c = linear_case();
  for (auto method : {SolverMethod::kDirect, SolverMethod::kDense}) {
    SolveOptions options;
    options.method = method;
    const Solved s = solve_case(c, generate_unit_square(2), 1, options);
    ASSERT_FALSE(s.report.singular);
    const ErrorBundle e = compute_errors(EdgeField(s.v, s.report.velocity), NodalField(s.q, s.report.pressure), c,
                                         s.v->mesh().h_max());
    EXPECT_LE(e.err_u_l2, 1e-9);
    EXPECT_LE(e.err_p_l2, 1e-9);
    EXPECT_LE(std::abs(s.report.pressure_mean), 1e-10);
    EXPECT_LE(s.report.relative_residual, 1e-10);
  }
}

TEST(Solver, ZeroDataGivesZeroSolution) {
  const auto mesh = shared(generate_square_with_hole(3));
  const auto v = build_edge_space(mesh, 2);
  const auto q = build_nodal_space(mesh, 2);
  const VectorFunction zero = [](const Point&) { return Point(0, 0); };
  const SolveReport r = solve(assemble_system(*v, *q, zero, boundary(*mesh, zero)));
  ASSERT_FALSE(r.singular);
  EXPECT_EQ(r.velocity.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(r.pressure.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Solver, ResolvingIsIdempotent) {
  const auto c = star_case();
  Solved s = solve_case(c, generate_unit_square(4), 2);
  // data generated by the solution itself reproduces it
  SaddleSystem again = s.system;
  again.rhs_u = s.system.a * s.report.velocity + s.system.b * s.report.pressure;
  again.rhs_q = s.system.b.transpose() * s.report.velocity;
  const SolveReport r = solve(again);
  EXPECT_LE((r.velocity - s.report.velocity).norm(), 1e-9 * s.report.velocity.norm());
  EXPECT_LE((r.pressure - s.report.pressure).norm(), 1e-9 * s.report.pressure.norm());
}

TEST(Solver, SparseDirectMatchesDenseWithNonzeroMultiplier) {
  // incompatible divergence data forces a nonzero multiplier; the sparse path
  // eliminates it analytically, the dense path solves for it
  const auto c = star_case();
  Solved s = solve_case(c, jitter_interior(generate_unit_square(3), 4), 2);
  SaddleSystem shifted = s.system;
  shifted.rhs_q.array() += 0.3;
  SolveOptions dense;
  dense.method = SolverMethod::kDense;
  dense.tol = 1e-12;
  SolveOptions direct;
  direct.method = SolverMethod::kDirect;
  direct.tol = 1e-12;
  const SolveReport a = solve(shifted, dense);
  const SolveReport b = solve(shifted, direct);
  ASSERT_FALSE(a.singular);
  ASSERT_FALSE(b.singular);
  EXPECT_GT(std::abs(a.multiplier), 1e-3);
  EXPECT_NEAR(b.multiplier, a.multiplier, 1e-10 * std::abs(a.multiplier));
  EXPECT_LE((b.velocity - a.velocity).norm(), 1e-10 * a.velocity.norm());
  EXPECT_LE((b.pressure - a.pressure).norm(), 1e-10 * a.pressure.norm());
  EXPECT_LE(std::abs(b.pressure_mean), 1e-12);
  EXPECT_LE(b.relative_residual, 1e-12);
}

TEST(Solver, MinresAgreesWithDirect) {
  const auto c = star_case();
  const Solved direct = solve_case(c, generate_unit_square(4), 1);
  SolveOptions options;
  options.method = SolverMethod::kMinres;
  options.tol = 1e-12;
  const Solved iterative = solve_case(c, generate_unit_square(4), 1, options);
  EXPECT_GT(iterative.report.iterations, 0);
  EXPECT_LE((iterative.report.velocity - direct.report.velocity).norm(), 1e-6 * direct.report.velocity.norm());
  EXPECT_LE((iterative.report.pressure - direct.report.pressure).norm(), 1e-6 * direct.report.pressure.norm());
}

TEST(Solver, CounterexampleIsSingular) {
  const auto mesh = shared(two_triangle_square());
  const EdgeSpace v(mesh, 1, true);
  const NodalSpace q(mesh, 1);
  const VectorFunction zero = [](const Point&) { return Point(0, 0); };
  const SaddleSystem system = assemble_system(v, q, [](const Point&) { return Point(1, 0); }, boundary(*mesh, zero));
  for (auto method : {SolverMethod::kDense, SolverMethod::kDirect}) {
    SolveOptions options;
    options.method = method;
    const SolveReport r = solve(system, options);
    EXPECT_TRUE(r.singular);
    ASSERT_TRUE(r.kernel.has_value());
    EXPECT_EQ(r.kernel->dimension, 2u);
  }
}

TEST(KernelProbe, CounterexampleKernel) {
  const auto mesh = shared(two_triangle_square());
  const EdgeSpace v(mesh, 1, true);
  const NodalSpace q(mesh, 1);
  const VectorFunction zero = [](const Point&) { return Point(0, 0); };
  const SaddleSystem system = assemble_system(v, q, zero, boundary(*mesh, zero));
  const KernelProbe probe = kernel_probe(system);
  EXPECT_EQ(probe.dimension, 2u);
  // λ₁ - 1/6 at the vertices
  Eigen::VectorXd witness(4);
  witness << 5.0 / 6.0, -1.0 / 6.0, -1.0 / 6.0, -1.0 / 6.0;
  EXPECT_LE((system.b * witness).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE(std::abs(system.mean.dot(witness)), 1e-15);
  Eigen::MatrixXd span(4, 2);
  for (int k = 0; k < 2; ++k) {
    EXPECT_LE(probe.witnesses[k].velocity.norm(), 1e-12);
    span.col(k) = probe.witnesses[k].pressure;
  }
  const Eigen::VectorXd coeffs = span.colPivHouseholderQr().solve(witness);
  EXPECT_LE((span * coeffs - witness).norm(), 1e-12);

  const SaddleSystem nitsche =
      assemble_system(EdgeSpace(mesh, 1), q, zero, boundary(*mesh, zero));
  EXPECT_EQ(kernel_probe(nitsche).dimension, 0u);
}

TEST(KernelProbe, RefinedCounterexampleStaysSingular) {
  const auto mesh = shared(refine_uniform(two_triangle_square()));
  const EdgeSpace v(mesh, 1, true);
  const NodalSpace q(mesh, 1);
  const VectorFunction zero = [](const Point&) { return Point(0, 0); };
  EXPECT_GE(kernel_probe(assemble_system(v, q, zero, boundary(*mesh, zero))).dimension, 1u);
}

TEST(KernelProbe, SizeGuard) {
  const auto mesh = shared(generate_unit_square(4));
  const EdgeSpace v(mesh, 1);
  const NodalSpace q(mesh, 1);
  const VectorFunction zero = [](const Point&) { return Point(0, 0); };
  EXPECT_THROW(kernel_probe(assemble_system(v, q, zero, boundary(*mesh, zero)), 10), SizeGuardError);
}

TEST(Solver, RejectsInconsistentSystems) {
  SaddleSystem s;
  s.a = SparseMatrix(2, 2);
  s.b = SparseMatrix(3, 1);
  EXPECT_THROW(solve(s), std::invalid_argument);
}

TEST(Solver, OrthogonalComplement) {
  Eigen::VectorXd m(3);
  m << 1, 2, 3;
  const Eigen::MatrixXd p = orthogonal_complement(m);
  ASSERT_EQ(p.cols(), 2);
  EXPECT_LE((p.transpose() * m).norm(), 1e-14);
  EXPECT_LE((p.transpose() * p - Eigen::MatrixXd::Identity(2, 2)).norm(), 1e-14);
}

}  // namespace
}  // namespace curlstokes
