#pragma once

#include <filesystem>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "curlstokes/quadrature.hpp"
#include "curlstokes/spaces.hpp"

namespace curlstokes {

using Triplet = Eigen::Triplet<double>;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Assembled bilinear form. Duplicate triplets are merged after a stable sort
/// by (row, col), so the summation order only depends on the element order.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets, bool symmetric);
  SparseOperator(SparseMatrix matrix, bool symmetric);

  std::size_t rows() const { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(matrix_.cols()); }
  bool symmetric() const { return symmetric_; }
  const SparseMatrix& matrix() const { return matrix_; }
  double coeff(std::size_t row, std::size_t col) const;

  /// max |A - Aᵀ| / max |A| (0 for an all-zero operator).
  double relative_asymmetry() const;
  double max_abs() const;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return matrix_ * x; }
  double quadratic_form(const Eigen::VectorXd& x) const { return x.dot(matrix_ * x); }

  friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator*(double s, const SparseOperator& a);

  /// Matrix Market coordinate export, for debugging.
  void write_matrix_market(const std::filesystem::path& path) const;

 private:
  SparseMatrix matrix_;
  bool symmetric_ = false;
};

/// Dirichlet velocity data for the weak boundary terms.
struct BoundaryData {
  VectorFunction g;
  double penalty = 10.0;  // C_w
  double h = 0.0;         // mesh size in C_w / h
  bool per_edge_h = false;  // use the edge length instead of h in C_w / h
};

void validate(const BoundaryData& bd);

inline int volume_degree(int order) { return 2 * order + 2; }
inline int boundary_degree(int order) { return 2 * order + 2; }

SparseOperator assemble_mass(const EdgeSpace& space);
/// (curl u, curl v).
SparseOperator assemble_curl_curl(const EdgeSpace& space);

/// The two symmetric consistency terms
///   ⟨γ_curl(u), γ∥(v)⟩ + ⟨γ∥(u), γ_curl(v)⟩ = -∫_Γ curl(u)(v·t) - ∫_Γ (u·t) curl(v),
/// using γ_curl(v) = n × curl(v) = -curl(v) t in 2D.
SparseOperator assemble_nitsche_consistency(const EdgeSpace& space);
/// (C_w / h) ∫_Γ (u·t)(v·t).
SparseOperator assemble_nitsche_penalty(const EdgeSpace& space, const BoundaryData& bd);
/// Consistency plus penalty.
SparseOperator assemble_nitsche(const EdgeSpace& space, const BoundaryData& bd);
/// Full velocity block a_h = curl-curl + Nitsche terms.
SparseOperator assemble_velocity_operator(const EdgeSpace& space, const BoundaryData& bd);

/// b(v, q) = (v, ∇q), shape dof(V) x dof(Q).
SparseOperator assemble_b(const EdgeSpace& velocity, const NodalSpace& pressure);

/// l_h(v) = (f, v) + (C_w / h) ∫_Γ (g·t)(v·t) - ∫_Γ (g·t) curl(v).
Eigen::VectorXd assemble_rhs(const EdgeSpace& space, const VectorFunction& f, const BoundaryData& bd);

/// ⟨g·n, q⟩ for every pressure basis function.
Eigen::VectorXd assemble_divergence_rhs(const NodalSpace& pressure, const VectorFunction& g);

SparseOperator assemble_pressure_stiffness(const NodalSpace& pressure);
SparseOperator assemble_pressure_mass(const NodalSpace& pressure);
/// Entries (q_i, 1).
Eigen::VectorXd pressure_mean_vector(const NodalSpace& pressure);

/// Boundary pairings used in the #-norm: ∫_Γ (u·t)(v·t) and ∫_Γ curl(u) curl(v).
SparseOperator assemble_boundary_tangential_mass(const EdgeSpace& space);
SparseOperator assemble_boundary_curl_mass(const EdgeSpace& space);

/// Gram matrix of ‖v‖²_# = ‖v‖² + ‖curl v‖² + (1/h)‖γ∥ v‖²_Γ + h‖γ_curl v‖²_Γ.
SparseOperator assemble_hash_gram(const EdgeSpace& space, double h);

struct TraceNorms {
  double tangential = 0.0;  // ‖γ∥(v)‖_Γ
  double curl = 0.0;        // ‖γ_curl(v)‖_Γ = ‖curl v‖_Γ
};

TraceNorms boundary_trace_norms(const EdgeField& field);
TraceNorms boundary_trace_norms(const Mesh& mesh, const VectorFunction& u, const ScalarFunction& curl_u,
                                int degree = kMaxEdgeDegree);
/// Norms of the difference (u - u_h); both operands are sampled at the same
/// edge quadrature points.
TraceNorms boundary_trace_norms(const EdgeField& field, const VectorFunction& u,
                                const ScalarFunction& curl_u, int degree);

}  // namespace curlstokes
