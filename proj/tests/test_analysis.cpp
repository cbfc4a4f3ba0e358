#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "curlstokes/analysis.hpp"
#include "curlstokes/cases.hpp"
#include "curlstokes/solver.hpp"

namespace curlstokes {
namespace {

std::shared_ptr<const Mesh> shared(Mesh m) { return std::make_shared<const Mesh>(std::move(m)); }

TEST(Eoc, PowerLawExamples) {
  EXPECT_NEAR(compute_eoc({1.0, 0.5}, {1.0, 0.5}).last(), 1.0, 1e-14);
  EXPECT_NEAR(compute_eoc({1.0, 0.5}, {1.0, 0.25}).last(), 2.0, 1e-14);
  EXPECT_NEAR(compute_eoc({1.0, 0.5}, {1.0, std::sqrt(2.0) / 2.0}).last(), 0.5, 1e-14);
}

TEST(Eoc, LeastSquaresUsesLastThreeLevels) {
  // slope 3 on the first pair, exact slope 1.5 afterwards
  const std::vector<double> h = {1.0, 0.5, 0.25, 0.125};
  const std::vector<double> e = {8.0, 1.0, std::pow(2.0, -1.5), std::pow(2.0, -3.0)};
  const EocSeries s = compute_eoc(h, e);
  ASSERT_EQ(s.pairwise.size(), 3u);
  EXPECT_NEAR(s.pairwise[0], 3.0, 1e-14);
  EXPECT_NEAR(s.pairwise[2], 1.5, 1e-14);
  EXPECT_NEAR(s.least_squares, 1.5, 1e-13);
}

TEST(Eoc, RejectsBadInput) {
  EXPECT_THROW(compute_eoc({1.0}, {1.0}), std::invalid_argument);
  EXPECT_THROW(compute_eoc({1.0, 0.5}, {1.0}), std::invalid_argument);
  EXPECT_TRUE(std::isnan(compute_eoc({1.0, 0.5}, {0.0, 0.0}).last()));
}

TEST(Errors, InterpolantOfMemberIsExact) {
  const ManufacturedCase c = linear_case();
  const auto mesh = shared(jitter_interior(generate_unit_square(4), 2));
  const auto v = build_edge_space(mesh, 1);
  const auto q = build_nodal_space(mesh, 1);
  const ErrorBundle e = compute_errors(interpolate_edge(v, c.u), interpolate_nodal(q, c.p), c, mesh->h_max());
  EXPECT_LE(e.err_u_l2, 1e-10);
  EXPECT_LE(e.err_u_curl, 1e-10);
  EXPECT_LE(e.err_u_hash, 1e-10);
  EXPECT_LE(e.err_gpar, 1e-10);
  EXPECT_LE(e.err_gcurl, 1e-10);
  EXPECT_LE(e.err_p_l2, 1e-12);
  EXPECT_LE(e.err_p_h1, 1e-12);
  EXPECT_EQ(e.dofs_u, v->dof_count());
  EXPECT_EQ(e.dofs_p, q->dof_count());
}

TEST(Errors, PressureErrorIgnoresConstants) {
  const ManufacturedCase c = linear_case();
  const auto mesh = shared(generate_unit_square(3));
  const auto v = build_edge_space(mesh, 1);
  const auto q = build_nodal_space(mesh, 1);
  const NodalField shifted = interpolate_nodal(q, [&](const Point& x) { return c.p(x) + 5.0; });
  const ErrorBundle e = compute_errors(interpolate_edge(v, c.u), shifted, c, mesh->h_max());
  EXPECT_LE(e.err_p_l2, 1e-12);
}

TEST(Errors, ZeroFieldGivesNormsOfTheSolution) {
  // |(-y, x)|² integrates to 2/3 on the unit square, curl is 2
  const ManufacturedCase c = linear_case();
  const auto mesh = shared(generate_unit_square(2));
  const auto v = build_edge_space(mesh, 1);
  const auto q = build_nodal_space(mesh, 1);
  const ErrorBundle e = compute_errors(EdgeField(v), NodalField(q), c, mesh->h_max());
  EXPECT_NEAR(e.err_u_l2, std::sqrt(2.0 / 3.0), 1e-13);
  EXPECT_NEAR(e.err_u_curl, 2.0, 1e-13);
  EXPECT_NEAR(e.err_gpar, std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(e.err_gcurl, 4.0, 1e-13);
  // p = x - 1/2 has zero mean, |p|² = 1/12, |∇p|² = 1
  EXPECT_NEAR(e.err_p_l2, std::sqrt(1.0 / 12.0), 1e-13);
  EXPECT_NEAR(e.err_p_h1, 1.0, 1e-13);
}

TEST(Errors, HashNormIdentity) {
  const ManufacturedCase c = star_case();
  for (int r : {1, 2}) {
    const auto mesh = shared(jitter_interior(generate_unit_square(4), 4));
    const auto v = build_edge_space(mesh, r);
    const auto q = build_nodal_space(mesh, r);
    BoundaryData bd;
    bd.g = c.g;
    bd.h = mesh->h_max();
    const SolveReport s = solve(assemble_system(*v, *q, c.f, bd));
    const double h = mesh->h_max();
    const ErrorBundle e = compute_errors(EdgeField(v, s.velocity), NodalField(q, s.pressure), c, h);
    const double rhs = e.err_u_hcurl * e.err_u_hcurl + e.err_gpar * e.err_gpar / h + h * e.err_gcurl * e.err_gcurl;
    EXPECT_NEAR(e.err_u_hash * e.err_u_hash, rhs, 1e-12 * rhs);
    EXPECT_NEAR(e.err_u_hcurl * e.err_u_hcurl, e.err_u_l2 * e.err_u_l2 + e.err_u_curl * e.err_u_curl,
                1e-12 * rhs);
  }
}

TEST(Errors, StarErrorsDecreaseUnderRefinement) {
  const ManufacturedCase c = star_case();
  double previous = INFINITY;
  Mesh mesh = generate_unit_square(4);
  for (int level = 0; level < 3; ++level) {
    const auto m = shared(mesh);
    const auto v = build_edge_space(m, 1);
    const auto q = build_nodal_space(m, 1);
    BoundaryData bd;
    bd.g = c.g;
    bd.h = m->h_max();
    const SolveReport s = solve(assemble_system(*v, *q, c.f, bd));
    const ErrorBundle e = compute_errors(EdgeField(v, s.velocity), NodalField(q, s.pressure), c, m->h_max());
    EXPECT_GT(e.err_u_l2, 0.0);
    EXPECT_LT(e.err_u_l2, previous);
    previous = e.err_u_l2;
    mesh = refine_uniform(mesh);
  }
}

TEST(Errors, FieldNormsOfKnownField) {
  const auto mesh = shared(generate_unit_square(3));
  const auto v = build_edge_space(mesh, 1);
  const auto [norm, curl] = field_norms(interpolate_edge(v, [](const Point& x) { return Point(-x.y(), x.x()); }));
  EXPECT_NEAR(norm, std::sqrt(2.0 / 3.0), 1e-13);
  EXPECT_NEAR(curl, 2.0, 1e-13);
}

TEST(Report, EocPerNorm) {
  ErrorBundle a;
  a.h = 1.0;
  a.err_u_l2 = 1.0;
  a.err_p_l2 = 1.0;
  ErrorBundle b = a;
  b.h = 0.5;
  b.err_u_l2 = 0.25;
  b.err_p_l2 = 0.5;
  const ConvergenceReport r = make_convergence_report({a, b});
  EXPECT_EQ(r.eoc.size(), error_norms().size());
  EXPECT_NEAR(r.eoc_of("err_u_l2").last(), 2.0, 1e-14);
  EXPECT_NEAR(r.eoc_of("err_p_l2").last(), 1.0, 1e-14);
  EXPECT_THROW(r.eoc_of("nope"), std::invalid_argument);
}

struct HodgeCase {
  const char* name;
  Mesh mesh;
  std::size_t harmonic;
};

TEST(Hodge, DimensionsMatchBettiNumbers) {
  const std::vector<HodgeCase> cases = {{"square", generate_unit_square(2), 0},
                                        {"hole", generate_square_with_hole(3), 1},
                                        {"lshape", generate_l_shape(2), 0},
                                        {"hole jittered", jitter_interior(generate_square_with_hole(6), 9), 1}};
  for (const auto& hc : cases) {
    for (int r : {1, 2}) {
      const auto mesh = shared(hc.mesh);
      const auto v = build_edge_space(mesh, r);
      const NodalSpace q(mesh, r);
      const HodgeDecomposition d = hodge_decompose(*v, q);
      EXPECT_EQ(static_cast<std::size_t>(d.harmonic.cols()), hc.harmonic) << hc.name << " r=" << r;
      EXPECT_EQ(d.dimension(), v->dof_count()) << hc.name;
      // dim ∇Q_h = dof(Q) - 1 on a connected domain
      EXPECT_EQ(static_cast<std::size_t>(d.gradients.cols()), q.dof_count() - 1) << hc.name;
      EXPECT_LE(d.orthogonality, 1e-10) << hc.name;
    }
  }
}

TEST(Hodge, BlocksAreOrthonormalAndHarmonicFieldsAreCurlFree) {
  const auto mesh = shared(generate_square_with_hole(3));
  const auto v = build_edge_space(mesh, 1);
  const NodalSpace q(mesh, 1);
  const HodgeDecomposition d = hodge_decompose(*v, q);
  Eigen::MatrixXd all(d.gradients.rows(), static_cast<Eigen::Index>(d.dimension()));
  all << d.gradients, d.curls, d.harmonic;
  const Eigen::MatrixXd m(assemble_mass(*v).matrix());
  const Eigen::MatrixXd gram = all.transpose() * m * all;
  EXPECT_LE((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff(), 1e-10);

  const Eigen::VectorXd h = d.harmonic.col(0);
  const auto [norm, curl] = field_norms(EdgeField(v, h));
  EXPECT_NEAR(norm, 1.0, 1e-12);
  EXPECT_LE(curl, 1e-10 * norm);
  // orthogonal to every discrete gradient, not just the computed basis
  const Eigen::MatrixXd g(gradient_matrix(*v, q));
  EXPECT_LE((g.transpose() * m * h).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Hodge, Guards) {
  const auto two = shared(two_triangle_square());
  EXPECT_THROW(hodge_decompose(*build_edge_space(two, 1, true), NodalSpace(two, 1)), std::invalid_argument);
  const auto mesh = shared(generate_unit_square(4));
  EXPECT_THROW(hodge_decompose(*build_edge_space(mesh, 1), NodalSpace(mesh, 1), 10), SizeGuardError);
}

// For r = 1 curl maps onto piecewise constants, so the curl trace constant is
// C_n² = h max_T |∂T ∩ Γ| / |T|.
double whitney_trace_constant(const Mesh& mesh) {
  std::vector<double> boundary(mesh.triangle_count(), 0.0);
  for (const auto& be : mesh.boundary_edges()) {
    const auto e = mesh.edge(be.edge);
    boundary[be.triangle] += (mesh.vertex(e[0]) - mesh.vertex(e[1])).norm();
  }
  double worst = 0.0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) worst = std::max(worst, boundary[t] / mesh.area(t));
  return std::sqrt(mesh.h_max() * worst);
}

TEST(TraceConstants, CurlConstantMatchesElementwiseOracle) {
  for (const Mesh& m : {generate_unit_square(2), generate_unit_square(4), generate_l_shape(2),
                        jitter_interior(generate_unit_square(4), 3)}) {
    const auto mesh = shared(m);
    const auto v = build_edge_space(mesh, 1);
    const TraceConstants c = estimate_trace_constants(*v, mesh->h_max());
    EXPECT_NEAR(c.c_n, whitney_trace_constant(*mesh), 1e-8 * c.c_n);
    EXPECT_GT(c.c_par, 0.0);
    EXPECT_DOUBLE_EQ(c.recommended_penalty(), 4.0 * c.c_n);
  }
}

TEST(TraceConstants, BoundRandomRayleighQuotients) {
  const auto mesh = shared(jitter_interior(generate_unit_square(3), 8));
  for (int r : {1, 2}) {
    const auto v = build_edge_space(mesh, r);
    const double h = mesh->h_max();
    const TraceConstants c = estimate_trace_constants(*v, h);
    const SparseOperator m = assemble_mass(*v);
    const SparseOperator k = assemble_curl_curl(*v);
    const SparseOperator bt = assemble_boundary_tangential_mass(*v);
    const SparseOperator bc = assemble_boundary_curl_mass(*v);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    for (int s = 0; s < 50; ++s) {
      Eigen::VectorXd x(static_cast<Eigen::Index>(v->dof_count()));
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
      EXPECT_LE(h * bt.quadratic_form(x), c.c_par * c.c_par * m.quadratic_form(x) * (1 + 1e-10));
      EXPECT_LE(h * bc.quadratic_form(x), c.c_n * c.c_n * k.quadratic_form(x) * (1 + 1e-10));
    }
  }
}

TEST(TraceConstants, StableUnderRefinement) {
  for (int r : {1, 2}) {
    const auto coarse = shared(jitter_interior(generate_unit_square(2), 5));
    const auto fine = shared(jitter_interior(generate_unit_square(4), 6));
    const TraceConstants a = estimate_trace_constants(*build_edge_space(coarse, r), coarse->h_max());
    const TraceConstants b = estimate_trace_constants(*build_edge_space(fine, r), fine->h_max());
    EXPECT_LE(std::abs(a.c_n - b.c_n), 0.25 * a.c_n) << "r=" << r;
    EXPECT_LE(std::abs(a.c_par - b.c_par), 0.25 * a.c_par) << "r=" << r;
  }
}

TEST(InfSup, ScalesLinearlyWithH) {
  std::vector<double> ratios;
  for (int n : {2, 4, 8}) {
    const auto mesh = shared(generate_unit_square(n));
    const auto v = build_edge_space(mesh, 1);
    const NodalSpace q(mesh, 1);
    const double beta = estimate_infsup(*v, q, mesh->h_max());
    EXPECT_GT(beta, 0.0);
    ratios.push_back(beta / mesh->h_max());
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  EXPECT_LE(*hi / *lo, 3.0);
}

TEST(InfSup, VanishesForEssentialCounterexample) {
  const auto two = shared(two_triangle_square());
  const auto v = build_edge_space(two, 1, true);
  const NodalSpace q(two, 1);
  EXPECT_LE(estimate_infsup(*v, q, two->h_max()), 1e-7);
  EXPECT_GT(estimate_infsup(*build_edge_space(two, 1), q, two->h_max()), 1e-3);
}

TEST(InfSup, SizeGuard) {
  const auto mesh = shared(generate_unit_square(8));
  EXPECT_THROW(estimate_infsup(*build_edge_space(mesh, 1), NodalSpace(mesh, 1), mesh->h_max(), 50),
               SizeGuardError);
  EXPECT_THROW(estimate_trace_constants(*build_edge_space(mesh, 1), mesh->h_max(), 50), SizeGuardError);
}

TEST(Coercivity, LargePenaltyIsCoercive) {
  const auto mesh = shared(generate_unit_square(4));
  const auto v = build_edge_space(mesh, 1);
  const NodalSpace q(mesh, 1);
  BoundaryData bd;
  bd.g = [](const Point&) { return Point(0, 0); };
  bd.h = mesh->h_max();
  bd.penalty = 4.0 * estimate_trace_constants(*v, bd.h).c_n * 4.0;
  const CoercivityProbe p = coercivity_probe(*v, q, bd, 100, 2);
  EXPECT_EQ(p.samples, 100);
  EXPECT_GT(p.min_ratio, 0.0);
}

TEST(HarmonicTrace, RatioStaysBounded) {
  std::vector<double> ratios;
  for (int n : {3, 6, 12}) {
    const auto mesh = shared(generate_square_with_hole(n));
    const auto v = build_edge_space(mesh, 1);
    const HodgeDecomposition d = hodge_decompose(*v, NodalSpace(mesh, 1));
    ASSERT_EQ(d.harmonic.cols(), 1);
    ratios.push_back(harmonic_trace_ratio(*v, d.harmonic.col(0)));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  EXPECT_LE(*hi / *lo, 3.0);
}

}  // namespace
}  // namespace curlstokes
