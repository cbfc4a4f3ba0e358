#include "curlstokes/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "curlstokes/quadrature.hpp"

namespace curlstokes {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void guard(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit) {
    throw SizeGuardError(std::string(what) + " limited to " + std::to_string(limit) + " dofs, got " +
                         std::to_string(n));
  }
}

// Orthonormal basis of the column range of `a`, rank threshold 1e-10 σ_max.
MatrixXd range_basis(const MatrixXd& a) {
  if (a.cols() == 0) return MatrixXd(a.rows(), 0);
  Eigen::BDCSVD<MatrixXd> svd(a, Eigen::ComputeThinU);
  const VectorXd& s = svd.singularValues();
  const double threshold = 1e-10 * (s.size() > 0 ? s(0) : 0.0);
  Index rank = 0;
  while (rank < s.size() && s(rank) > threshold) ++rank;
  return svd.matrixU().leftCols(rank);
}

// Columns completing an orthonormal basis `q` of a subspace to the whole space.
MatrixXd complement_basis(const MatrixXd& q, Index n) {
  if (q.cols() == 0) return MatrixXd::Identity(n, n);
  Eigen::HouseholderQR<MatrixXd> qr(q);
  const MatrixXd full = qr.householderQ() * MatrixXd::Identity(n, n);
  return full.rightCols(n - q.cols());
}

double block_coupling(const MatrixXd& a, const MatrixXd& m, const MatrixXd& b) {
  if (a.cols() == 0 || b.cols() == 0) return 0.0;
  return (a.transpose() * m * b).cwiseAbs().maxCoeff();
}

// Largest eigenvalue λ of a x = λ b x with b symmetric positive definite.
double max_generalized_eigenvalue(const MatrixXd& a, const MatrixXd& b) {
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> eig(a, b, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (eig.info() != Eigen::Success) throw std::runtime_error("generalized eigensolve failed");
  return eig.eigenvalues().maxCoeff();
}

}  // namespace

const std::vector<NormField>& error_norms() {
  static const std::vector<NormField> norms = {
      {"err_u_l2", &ErrorBundle::err_u_l2},       {"err_u_curl", &ErrorBundle::err_u_curl},
      {"err_u_hcurl", &ErrorBundle::err_u_hcurl}, {"err_u_hash", &ErrorBundle::err_u_hash},
      {"err_gpar", &ErrorBundle::err_gpar},       {"err_gcurl", &ErrorBundle::err_gcurl},
      {"err_p_l2", &ErrorBundle::err_p_l2},       {"err_p_h1", &ErrorBundle::err_p_h1},
  };
  return norms;
}

std::pair<double, double> field_norms(const EdgeField& field) {
  const Mesh& mesh = field.space().mesh();
  const TriangleRule& rule = triangle_rule(clamp_triangle_degree(2 * field.space().order()));
  double v2 = 0.0;
  double curl2 = 0.0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const TriangleGeometry geo = triangle_geometry(mesh, t);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * 2.0 * geo.area;
      const auto [v, curl] = field.evaluate(t, geo, rule.points[q]);
      v2 += w * v.squaredNorm();
      curl2 += w * curl * curl;
    }
  }
  return {std::sqrt(v2), std::sqrt(curl2)};
}

ErrorBundle compute_errors(const EdgeField& u_h, const NodalField& p_h, const ManufacturedCase& c, double h) {
  const EdgeSpace& vspace = u_h.space();
  const Mesh& mesh = vspace.mesh();
  if (&mesh != &p_h.space().mesh()) throw std::invalid_argument("velocity and pressure live on different meshes");
  if (!(h > 0.0)) throw std::invalid_argument("mesh size h must be positive");
  const int degree = 2 * vspace.order() + 4;
  const TriangleRule& rule = triangle_rule(clamp_triangle_degree(degree));

  ErrorBundle e;
  e.h = h;
  e.dofs_u = vspace.dof_count();
  e.dofs_p = p_h.space().dof_count();

  double u2 = 0.0;
  double curl2 = 0.0;
  double grad2 = 0.0;
  double p_mean = 0.0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const TriangleGeometry geo = triangle_geometry(mesh, t);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * 2.0 * geo.area;
      const Point x = geo.map(rule.points[q]);
      const auto [uh, curl_h] = u_h.evaluate(t, geo, rule.points[q]);
      const auto [ph, grad_ph] = p_h.evaluate(t, geo, rule.points[q]);
      u2 += w * (c.u(x) - uh).squaredNorm();
      const double dc = c.curl_u(x) - curl_h;
      curl2 += w * dc * dc;
      grad2 += w * (c.grad_p(x) - grad_ph).squaredNorm();
      p_mean += w * (c.p(x) - ph);
    }
  }
  p_mean /= mesh.total_area();
  double p2 = 0.0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const TriangleGeometry geo = triangle_geometry(mesh, t);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double d = c.p(geo.map(rule.points[q])) - p_h.evaluate(t, geo, rule.points[q]).first - p_mean;
      p2 += rule.weights[q] * 2.0 * geo.area * d * d;
    }
  }

  const TraceNorms trace = boundary_trace_norms(u_h, c.u, c.curl_u, clamp_edge_degree(degree));
  e.err_u_l2 = std::sqrt(u2);
  e.err_u_curl = std::sqrt(curl2);
  e.err_u_hcurl = std::sqrt(u2 + curl2);
  e.err_gpar = trace.tangential;
  e.err_gcurl = trace.curl;
  e.err_u_hash = std::sqrt(u2 + curl2 + trace.tangential * trace.tangential / h + h * trace.curl * trace.curl);
  e.err_p_l2 = std::sqrt(p2);
  e.err_p_h1 = std::sqrt(grad2);
  return e;
}

EocSeries compute_eoc(const std::vector<double>& h, const std::vector<double>& errors) {
  if (h.size() != errors.size()) throw std::invalid_argument("mesh sizes and errors differ in length");
  if (h.size() < 2) throw std::invalid_argument("EOC needs at least two levels");
  EocSeries s;
  for (std::size_t k = 0; k + 1 < h.size(); ++k) {
    const bool defined = errors[k] > 0.0 && errors[k + 1] > 0.0 && h[k] != h[k + 1];
    s.pairwise.push_back(defined ? std::log(errors[k] / errors[k + 1]) / std::log(h[k] / h[k + 1]) : kNaN);
  }
  const std::size_t first = h.size() >= 3 ? h.size() - 3 : 0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t k = first; k < h.size(); ++k) {
    if (!(errors[k] > 0.0)) {
      n = 0;
      break;
    }
    const double x = std::log(h[k]);
    const double y = std::log(errors[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double denom = n * sxx - sx * sx;
  s.least_squares = n >= 2 && denom != 0.0 ? (n * sxy - sx * sy) / denom : kNaN;
  return s;
}

const EocSeries& ConvergenceReport::eoc_of(const std::string& norm) const {
  for (const auto& e : eoc) {
    if (e.norm == norm) return e.eoc;
  }
  throw std::invalid_argument("no EOC for norm '" + norm + "'");
}

ConvergenceReport make_convergence_report(std::vector<ErrorBundle> levels) {
  ConvergenceReport report;
  report.levels = std::move(levels);
  std::vector<double> h;
  for (const auto& l : report.levels) h.push_back(l.h);
  for (const auto& norm : error_norms()) {
    std::vector<double> e;
    for (const auto& l : report.levels) e.push_back(l.*norm.member);
    report.eoc.push_back({norm.name, compute_eoc(h, e)});
  }
  return report;
}

HodgeDecomposition hodge_decompose(const EdgeSpace& velocity, const NodalSpace& pressure, std::size_t limit) {
  if (velocity.essential_bc()) throw std::invalid_argument("Hodge decomposition needs the full edge space");
  const std::size_t nv = velocity.dof_count();
  guard(nv, limit, "Hodge decomposition");
  const Index n = static_cast<Index>(nv);
  const MatrixXd m = MatrixXd(assemble_mass(velocity).matrix());
  const MatrixXd k = MatrixXd(assemble_curl_curl(velocity).matrix());
  const MatrixXd g = MatrixXd(gradient_matrix(velocity, pressure));

  // Work in w = Lᵀx with M = LLᵀ, where the L² product is Euclidean.
  const Eigen::LLT<MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw std::runtime_error("velocity mass matrix is not positive definite");
  const MatrixXd lower = llt.matrixL();
  auto to_coefficients = [&](const MatrixXd& w) -> MatrixXd {
    return lower.transpose().triangularView<Eigen::Upper>().solve(w);
  };

  const MatrixXd grad_w = range_basis(lower.transpose() * g);
  const MatrixXd x_w = complement_basis(grad_w, n);
  // L⁻¹ K L⁻ᵀ restricted to X_h
  const MatrixXd kl = lower.triangularView<Eigen::Lower>().solve(k);
  const MatrixXd kw = lower.triangularView<Eigen::Lower>().solve(kl.transpose()).transpose();
  const MatrixXd kx = x_w.transpose() * kw * x_w;
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(0.5 * (kx + kx.transpose()));
  const VectorXd& lambda = eig.eigenvalues();  // ascending
  const double threshold = 1e-10 * (lambda.size() > 0 ? std::abs(lambda(lambda.size() - 1)) : 0.0);
  Index harmonic = 0;
  while (harmonic < lambda.size() && std::abs(lambda(harmonic)) <= threshold) ++harmonic;
  const MatrixXd h_w = x_w * eig.eigenvectors().leftCols(harmonic);
  const MatrixXd z_w = x_w * eig.eigenvectors().rightCols(lambda.size() - harmonic);

  HodgeDecomposition d;
  d.gradients = to_coefficients(grad_w);
  d.curls = to_coefficients(z_w);
  d.harmonic = to_coefficients(h_w);
  d.orthogonality = std::max({block_coupling(d.gradients, m, d.curls), block_coupling(d.gradients, m, d.harmonic),
                              block_coupling(d.curls, m, d.harmonic)});
  return d;
}

TraceConstants estimate_trace_constants(const EdgeSpace& velocity, double h, std::size_t limit) {
  guard(velocity.dof_count(), limit, "trace constant probe");
  if (!(h > 0.0)) throw std::invalid_argument("mesh size h must be positive");
  const MatrixXd m = MatrixXd(assemble_mass(velocity).matrix());
  const MatrixXd k = MatrixXd(assemble_curl_curl(velocity).matrix());
  const MatrixXd bt = h * MatrixXd(assemble_boundary_tangential_mass(velocity).matrix());
  const MatrixXd bc = h * MatrixXd(assemble_boundary_curl_mass(velocity).matrix());

  TraceConstants tc;
  tc.c_par = std::sqrt(std::max(0.0, max_generalized_eigenvalue(bt, m)));

  // restrict to the range of K, where ‖curl v‖ > 0
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(k);
  const VectorXd& lambda = eig.eigenvalues();
  const double threshold = 1e-10 * lambda.cwiseAbs().maxCoeff();
  std::vector<Index> keep;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > threshold) keep.push_back(i);
  }
  if (keep.empty()) return tc;
  MatrixXd scaled(k.rows(), static_cast<Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    scaled.col(static_cast<Index>(j)) = eig.eigenvectors().col(keep[j]) / std::sqrt(lambda(keep[j]));
  }
  const MatrixXd reduced = scaled.transpose() * bc * scaled;
  Eigen::SelfAdjointEigenSolver<MatrixXd> top(0.5 * (reduced + reduced.transpose()), Eigen::EigenvaluesOnly);
  tc.c_n = std::sqrt(std::max(0.0, top.eigenvalues().maxCoeff()));
  return tc;
}

double estimate_infsup(const EdgeSpace& velocity, const NodalSpace& pressure, double h, std::size_t limit) {
  guard(velocity.dof_count() + pressure.dof_count(), limit, "inf-sup probe");
  const MatrixXd hash = MatrixXd(assemble_hash_gram(velocity, h).matrix());
  const MatrixXd b = MatrixXd(assemble_b(velocity, pressure).matrix());
  const MatrixXd l = MatrixXd(assemble_pressure_stiffness(pressure).matrix());
  const Eigen::LLT<MatrixXd> llt(hash);
  if (llt.info() != Eigen::Success) throw std::runtime_error("#-norm Gram matrix is not positive definite");
  // BᵀH⁻¹B = CᵀC with C = L_H⁻¹ B
  const MatrixXd c = llt.matrixL().solve(b);
  // both forms vanish on constants; any complement of the constants will do
  const MatrixXd p = orthogonal_complement(VectorXd::Ones(l.rows()));
  const MatrixXd cp = c * p;
  const MatrixXd s = cp.transpose() * cp;
  const MatrixXd lp = p.transpose() * l * p;
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> eig(0.5 * (s + s.transpose()), 0.5 * (lp + lp.transpose()),
                                                          Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (eig.info() != Eigen::Success) throw std::runtime_error("inf-sup eigensolve failed");
  return std::sqrt(std::max(0.0, eig.eigenvalues().minCoeff()));
}

CoercivityProbe coercivity_probe(const EdgeSpace& velocity, const NodalSpace& pressure, const BoundaryData& bd,
                                 int samples, std::uint64_t seed) {
  const HodgeDecomposition d = hodge_decompose(velocity, pressure, 4000);
  MatrixXd x(d.curls.rows(), d.curls.cols() + d.harmonic.cols());
  x << d.curls, d.harmonic;
  const MatrixXd a = MatrixXd(assemble_velocity_operator(velocity, bd).matrix());
  const MatrixXd hash = MatrixXd(assemble_hash_gram(velocity, bd.h).matrix());
  const MatrixXd ax = x.transpose() * a * x;
  const MatrixXd hx = x.transpose() * hash * x;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  CoercivityProbe probe;
  probe.min_ratio = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    VectorXd c(x.cols());
    for (auto& v : c) v = dist(gen);
    probe.min_ratio = std::min(probe.min_ratio, c.dot(ax * c) / c.dot(hx * c));
    ++probe.samples;
  }
  return probe;
}

double harmonic_trace_ratio(const EdgeSpace& velocity, const VectorXd& field) {
  const double volume = (assemble_mass(velocity) + assemble_curl_curl(velocity)).quadratic_form(field);
  const double boundary = assemble_boundary_tangential_mass(velocity).quadratic_form(field);
  return std::sqrt(volume / boundary);
}

}  // namespace curlstokes
