#include "curlstokes/forms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <stdexcept>

namespace curlstokes {

// ---------------------------------------------------------------------------
// SparseOperator

SparseOperator::SparseOperator(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets,
                               bool symmetric)
    : matrix_(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)),
      symmetric_(symmetric) {
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row() != b.row() ? a.row() < b.row() : a.col() < b.col();
  });
  std::vector<Triplet> merged;
  merged.reserve(triplets.size());
  for (const auto& t : triplets) {
    if (!merged.empty() && merged.back().row() == t.row() && merged.back().col() == t.col()) {
      merged.back() = Triplet(t.row(), t.col(), merged.back().value() + t.value());
    } else {
      merged.push_back(t);
    }
  }
  matrix_.setFromTriplets(merged.begin(), merged.end());
  matrix_.makeCompressed();
}

SparseOperator::SparseOperator(SparseMatrix matrix, bool symmetric)
    : matrix_(std::move(matrix)), symmetric_(symmetric) {
  matrix_.makeCompressed();
}

double SparseOperator::coeff(std::size_t row, std::size_t col) const {
  return matrix_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

double SparseOperator::max_abs() const {
  double m = 0.0;
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

double SparseOperator::relative_asymmetry() const {
  if (matrix_.rows() != matrix_.cols()) return std::numeric_limits<double>::infinity();
  const double scale = max_abs();
  if (scale == 0.0) return 0.0;
  const SparseMatrix diff = matrix_ - SparseMatrix(matrix_.transpose());
  double m = 0.0;
  for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m / scale;
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("operator shapes differ");
  }
  return SparseOperator(SparseMatrix(a.matrix_ + b.matrix_), a.symmetric_ && b.symmetric_);
}

SparseOperator operator*(double s, const SparseOperator& a) {
  return SparseOperator(SparseMatrix(s * a.matrix_), a.symmetric_);
}

void SparseOperator::write_matrix_market(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << matrix_.rows() << ' ' << matrix_.cols() << ' ' << matrix_.nonZeros() << '\n';
  out << std::setprecision(17);
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) {
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
    }
  }
}

void validate(const BoundaryData& bd) {
  if (!(bd.penalty > 0.0)) throw std::invalid_argument("penalty C_w must be positive");
  if (!bd.per_edge_h && !(bd.h > 0.0)) throw std::invalid_argument("mesh size h must be positive");
}

// ---------------------------------------------------------------------------
// Assembly helpers

namespace {

// Quadrature on one boundary edge, expressed in the adjacent triangle.
struct BoundaryPoint {
  Barycentric b;
  Point x;
  double weight;  // includes the edge length
};

struct BoundaryEdgeQuadrature {
  std::size_t triangle;
  TriangleGeometry geo;
  Point normal;
  Point tangent;
  double length;
  std::vector<BoundaryPoint> points;
};

BoundaryEdgeQuadrature boundary_quadrature(const Mesh& mesh, const BoundaryEdge& be, int degree) {
  BoundaryEdgeQuadrature out;
  out.triangle = be.triangle;
  out.geo = triangle_geometry(mesh, be.triangle);
  out.normal = be.normal;
  out.tangent = be.tangent;
  out.length = mesh.edge_length(be.edge);
  const auto& te = mesh.triangle_edges(be.triangle);
  const int k = static_cast<int>(std::find(te.begin(), te.end(), be.edge) - te.begin());
  const int a = (k + 1) % 3;
  const int c = (k + 2) % 3;
  const EdgeRule& rule = edge_rule(clamp_edge_degree(degree));
  for (std::size_t q = 0; q < rule.size(); ++q) {
    BoundaryPoint p;
    p.b = {0.0, 0.0, 0.0};
    p.b[a] = 1.0 - rule.points[q];
    p.b[c] = rule.points[q];
    p.x = out.geo.map(p.b);
    p.weight = rule.weights[q] * out.length;
    out.points.push_back(p);
  }
  return out;
}

// Local element matrix accumulation into triplets, skipping removed dofs.
void scatter(std::vector<Triplet>& triplets, std::span<const long> rows, std::span<const long> cols,
             const Eigen::MatrixXd& local) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0) continue;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j] < 0) continue;
      triplets.emplace_back(rows[i], cols[j], local(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
  }
}

enum class VolumeTerm { kMass, kCurlCurl };

SparseOperator assemble_volume(const EdgeSpace& space, VolumeTerm term) {
  const Mesh& mesh = space.mesh();
  const TriangleRule& rule = triangle_rule(volume_degree(space.order()));
  const auto nl = static_cast<Eigen::Index>(space.local_dof_count());
  std::vector<Triplet> triplets;
  EdgeBasisValues basis{};
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const TriangleGeometry geo = triangle_geometry(mesh, t);
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(nl, nl);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      space.evaluate(t, geo, rule.points[q], basis);
      const double w = rule.weights[q] * 2.0 * geo.area;
      for (Eigen::Index i = 0; i < nl; ++i) {
        for (Eigen::Index j = 0; j < nl; ++j) {
          local(i, j) += w * (term == VolumeTerm::kMass
                                  ? basis.value[i].dot(basis.value[j])
                                  : basis.curl[i] * basis.curl[j]);
        }
      }
    }
    scatter(triplets, space.local_dofs(t), space.local_dofs(t), local);
  }
  return SparseOperator(space.dof_count(), space.dof_count(), std::move(triplets), true);
}

enum class BoundaryTerm { kTangential, kCurl, kConsistency };

// Boundary pairing; for kTangential each edge is weighted by `edge_weight`.
template <typename EdgeWeight>
SparseOperator assemble_boundary(const EdgeSpace& space, BoundaryTerm term, EdgeWeight edge_weight) {
  const Mesh& mesh = space.mesh();
  const auto nl = static_cast<Eigen::Index>(space.local_dof_count());
  std::vector<Triplet> triplets;
  EdgeBasisValues basis{};
  for (const auto& be : mesh.boundary_edges()) {
    const auto bq = boundary_quadrature(mesh, be, boundary_degree(space.order()));
    const double scale = edge_weight(bq.length);
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(nl, nl);
    for (const auto& p : bq.points) {
      space.evaluate(bq.triangle, bq.geo, p.b, basis);
      for (Eigen::Index i = 0; i < nl; ++i) {
        const double ti = basis.value[i].dot(bq.tangent);
        for (Eigen::Index j = 0; j < nl; ++j) {
          const double tj = basis.value[j].dot(bq.tangent);
          double v = 0.0;
          switch (term) {
            case BoundaryTerm::kTangential: v = ti * tj; break;
            case BoundaryTerm::kCurl: v = basis.curl[i] * basis.curl[j]; break;
            case BoundaryTerm::kConsistency: v = -(basis.curl[j] * ti + tj * basis.curl[i]); break;
          }
          local(i, j) += scale * p.weight * v;
        }
      }
    }
    scatter(triplets, space.local_dofs(bq.triangle), space.local_dofs(bq.triangle), local);
  }
  return SparseOperator(space.dof_count(), space.dof_count(), std::move(triplets), true);
}

double penalty_scale(const BoundaryData& bd, double edge_length) {
  return bd.penalty / (bd.per_edge_h ? edge_length : bd.h);
}

}  // namespace

SparseOperator assemble_mass(const EdgeSpace& space) {
  return assemble_volume(space, VolumeTerm::kMass);
}

SparseOperator assemble_curl_curl(const EdgeSpace& space) {
  return assemble_volume(space, VolumeTerm::kCurlCurl);
}

SparseOperator assemble_nitsche_consistency(const EdgeSpace& space) {
  return assemble_boundary(space, BoundaryTerm::kConsistency, [](double) { return 1.0; });
}

SparseOperator assemble_nitsche_penalty(const EdgeSpace& space, const BoundaryData& bd) {
  validate(bd);
  return assemble_boundary(space, BoundaryTerm::kTangential,
                           [&bd](double length) { return penalty_scale(bd, length); });
}

SparseOperator assemble_nitsche(const EdgeSpace& space, const BoundaryData& bd) {
  return assemble_nitsche_consistency(space) + assemble_nitsche_penalty(space, bd);
}

SparseOperator assemble_velocity_operator(const EdgeSpace& space, const BoundaryData& bd) {
  return assemble_curl_curl(space) + assemble_nitsche(space, bd);
}

SparseOperator assemble_boundary_tangential_mass(const EdgeSpace& space) {
  return assemble_boundary(space, BoundaryTerm::kTangential, [](double) { return 1.0; });
}

SparseOperator assemble_boundary_curl_mass(const EdgeSpace& space) {
  return assemble_boundary(space, BoundaryTerm::kCurl, [](double) { return 1.0; });
}

SparseOperator assemble_hash_gram(const EdgeSpace& space, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("mesh size h must be positive");
  return assemble_mass(space) + assemble_curl_curl(space) +
         (1.0 / h) * assemble_boundary_tangential_mass(space) +
         h * assemble_boundary_curl_mass(space);
}

SparseOperator assemble_b(const EdgeSpace& velocity, const NodalSpace& pressure) {
  const Mesh& mesh = velocity.mesh();
  if (&mesh != &pressure.mesh()) throw std::invalid_argument("spaces live on different meshes");
  const TriangleRule& rule = triangle_rule(volume_degree(velocity.order()));
  const auto nv = static_cast<Eigen::Index>(velocity.local_dof_count());
  const auto nq = static_cast<Eigen::Index>(pressure.local_dof_count());
  std::vector<Triplet> triplets;
  EdgeBasisValues vb{};
  NodalBasisValues qb{};
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const TriangleGeometry geo = triangle_geometry(mesh, t);
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(nv, nq);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      velocity.evaluate(t, geo, rule.points[q], vb);
      pressure.evaluate(geo, rule.points[q], qb);
      const double w = rule.weights[q] * 2.0 * geo.area;
      for (Eigen::Index i = 0; i < nv; ++i) {
        for (Eigen::Index j = 0; j < nq; ++j) local(i, j) += w * vb.value[i].dot(qb.gradient[j]);
      }
    }
    scatter(triplets, velocity.local_dofs(t), pressure.local_dofs(t), local);
  }
  return SparseOperator(velocity.dof_count(), pressure.dof_count(), std::move(triplets), false);
}

Eigen::VectorXd assemble_rhs(const EdgeSpace& space, const VectorFunction& f, const BoundaryData& bd) {
  validate(bd);
  const Mesh& mesh = space.mesh();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.dof_count()));
  const TriangleRule& rule = triangle_rule(volume_degree(space.order()));
  EdgeBasisValues basis{};
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const TriangleGeometry geo = triangle_geometry(mesh, t);
    const auto dofs = space.local_dofs(t);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      space.evaluate(t, geo, rule.points[q], basis);
      const Point fx = f(geo.map(rule.points[q]));
      const double w = rule.weights[q] * 2.0 * geo.area;
      for (std::size_t i = 0; i < dofs.size(); ++i) {
        if (dofs[i] >= 0) rhs[dofs[i]] += w * fx.dot(basis.value[i]);
      }
    }
  }
  for (const auto& be : mesh.boundary_edges()) {
    const auto bq = boundary_quadrature(mesh, be, boundary_degree(space.order()));
    const double penalty = penalty_scale(bd, bq.length);
    const auto dofs = space.local_dofs(bq.triangle);
    for (const auto& p : bq.points) {
      space.evaluate(bq.triangle, bq.geo, p.b, basis);
      const double gt = bd.g(p.x).dot(bq.tangent);
      for (std::size_t i = 0; i < dofs.size(); ++i) {
        if (dofs[i] < 0) continue;
        const double vt = basis.value[i].dot(bq.tangent);
        rhs[dofs[i]] += p.weight * (penalty * gt * vt - gt * basis.curl[i]);
      }
    }
  }
  return rhs;
}

Eigen::VectorXd assemble_divergence_rhs(const NodalSpace& pressure, const VectorFunction& g) {
  const Mesh& mesh = pressure.mesh();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pressure.dof_count()));
  NodalBasisValues basis{};
  for (const auto& be : mesh.boundary_edges()) {
    const auto bq = boundary_quadrature(mesh, be, boundary_degree(pressure.order()));
    const auto dofs = pressure.local_dofs(bq.triangle);
    for (const auto& p : bq.points) {
      pressure.evaluate(bq.geo, p.b, basis);
      const double gn = g(p.x).dot(bq.normal);
      for (std::size_t i = 0; i < dofs.size(); ++i) rhs[dofs[i]] += p.weight * gn * basis.value[i];
    }
  }
  return rhs;
}

namespace {

SparseOperator assemble_nodal(const NodalSpace& space, bool stiffness) {
  const Mesh& mesh = space.mesh();
  const TriangleRule& rule = triangle_rule(2 * space.order());
  const auto nl = static_cast<Eigen::Index>(space.local_dof_count());
  std::vector<Triplet> triplets;
  NodalBasisValues basis{};
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const TriangleGeometry geo = triangle_geometry(mesh, t);
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(nl, nl);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      space.evaluate(geo, rule.points[q], basis);
      const double w = rule.weights[q] * 2.0 * geo.area;
      for (Eigen::Index i = 0; i < nl; ++i) {
        for (Eigen::Index j = 0; j < nl; ++j) {
          local(i, j) += w * (stiffness ? basis.gradient[i].dot(basis.gradient[j])
                                        : basis.value[i] * basis.value[j]);
        }
      }
    }
    scatter(triplets, space.local_dofs(t), space.local_dofs(t), local);
  }
  return SparseOperator(space.dof_count(), space.dof_count(), std::move(triplets), true);
}

}  // namespace

SparseOperator assemble_pressure_stiffness(const NodalSpace& pressure) {
  return assemble_nodal(pressure, true);
}

SparseOperator assemble_pressure_mass(const NodalSpace& pressure) {
  return assemble_nodal(pressure, false);
}

Eigen::VectorXd pressure_mean_vector(const NodalSpace& pressure) {
  const Mesh& mesh = pressure.mesh();
  const TriangleRule& rule = triangle_rule(pressure.order());
  Eigen::VectorXd m = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pressure.dof_count()));
  NodalBasisValues basis{};
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const TriangleGeometry geo = triangle_geometry(mesh, t);
    const auto dofs = pressure.local_dofs(t);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      pressure.evaluate(geo, rule.points[q], basis);
      const double w = rule.weights[q] * 2.0 * geo.area;
      for (std::size_t i = 0; i < dofs.size(); ++i) m[dofs[i]] += w * basis.value[i];
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Boundary trace norms

TraceNorms boundary_trace_norms(const EdgeField& field) {
  const EdgeSpace& space = field.space();
  const Mesh& mesh = space.mesh();
  double tangential = 0.0;
  double curl = 0.0;
  for (const auto& be : mesh.boundary_edges()) {
    const auto bq = boundary_quadrature(mesh, be, boundary_degree(space.order()));
    for (const auto& p : bq.points) {
      const auto [value, c] = field.evaluate(bq.triangle, bq.geo, p.b);
      const double vt = value.dot(bq.tangent);
      tangential += p.weight * vt * vt;
      curl += p.weight * c * c;
    }
  }
  return {std::sqrt(tangential), std::sqrt(curl)};
}

TraceNorms boundary_trace_norms(const Mesh& mesh, const VectorFunction& u, const ScalarFunction& curl_u,
                                int degree) {
  double tangential = 0.0;
  double curl = 0.0;
  for (const auto& be : mesh.boundary_edges()) {
    const auto bq = boundary_quadrature(mesh, be, degree);
    for (const auto& p : bq.points) {
      const double vt = u(p.x).dot(bq.tangent);
      const double c = curl_u(p.x);
      tangential += p.weight * vt * vt;
      curl += p.weight * c * c;
    }
  }
  return {std::sqrt(tangential), std::sqrt(curl)};
}

TraceNorms boundary_trace_norms(const EdgeField& field, const VectorFunction& u,
                                const ScalarFunction& curl_u, int degree) {
  const Mesh& mesh = field.space().mesh();
  double tangential = 0.0;
  double curl = 0.0;
  for (const auto& be : mesh.boundary_edges()) {
    const auto bq = boundary_quadrature(mesh, be, degree);
    for (const auto& p : bq.points) {
      const auto [value, c] = field.evaluate(bq.triangle, bq.geo, p.b);
      const double dt = (u(p.x) - value).dot(bq.tangent);
      const double dc = curl_u(p.x) - c;
      tangential += p.weight * dt * dt;
      curl += p.weight * dc * dc;
    }
  }
  return {std::sqrt(tangential), std::sqrt(curl)};
}

}  // namespace curlstokes
