#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "curlstokes/forms.hpp"

namespace curlstokes {

/// Velocity-pressure system
///   [A  B] [u]   [rhs_u]
///   [Bᵀ 0] [p] = [rhs_q]
/// closed by the zero-mean condition meanᵀp = 0.
struct SaddleSystem {
  SparseMatrix a;
  SparseMatrix b;
  Eigen::VectorXd rhs_u;
  Eigen::VectorXd rhs_q;
  Eigen::VectorXd mean;  // (q_i, 1)
  // SPD norm matrices for the MINRES preconditioner; optional otherwise.
  SparseMatrix velocity_norm;
  SparseMatrix pressure_norm;

  std::size_t velocity_size() const { return static_cast<std::size_t>(a.rows()); }
  std::size_t pressure_size() const { return static_cast<std::size_t>(b.cols()); }
  /// Throws std::invalid_argument on inconsistent block sizes.
  void check() const;
};

/// Assembles a_h, b, l_h and ⟨g·n, q⟩. For an essential-BC velocity space
/// the Nitsche terms are dropped and A is the plain curl-curl matrix.
SaddleSystem assemble_system(const EdgeSpace& velocity, const NodalSpace& pressure, const VectorFunction& f,
                             const BoundaryData& bd);

/// [[A, B, 0], [Bᵀ, 0, m], [0, mᵀ, 0]].
SparseMatrix augmented_matrix(const SaddleSystem& system);

enum class SolverMethod { kAuto, kDirect, kDense, kMinres };

struct SolveOptions {
  SolverMethod method = SolverMethod::kAuto;
  double tol = 1e-10;  // relative residual
  int max_iterations = 20000;
  std::size_t dense_limit = 200;  // kAuto uses the dense path up to this size
};

struct KernelWitness {
  Eigen::VectorXd velocity;
  Eigen::VectorXd pressure;
};

struct KernelProbe {
  std::size_t dimension = 0;
  std::vector<KernelWitness> witnesses;
  std::vector<double> singular_values;  // ascending
};

struct SolveReport {
  Eigen::VectorXd velocity;
  Eigen::VectorXd pressure;
  double multiplier = 0.0;
  double relative_residual = 0.0;
  double pressure_mean = 0.0;  // meanᵀp
  int iterations = 0;
  bool singular = false;
  std::string method;
  std::optional<KernelProbe> kernel;  // filled for singular systems small enough to probe
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), history_(std::move(history)) {}
  const std::vector<double>& residual_history() const { return history_; }

 private:
  std::vector<double> history_;
};

class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kDenseProbeLimit = 20000;

SolveReport solve(const SaddleSystem& system, const SolveOptions& options = {});

/// Nullspace of [[A, BP], [PᵀBᵀ, 0]] where the columns of P span the
/// zero-mean pressures. Dense symmetric eigensolve; a singular value counts
/// as zero below 1e-10 σ_max. Witnesses are returned in the original
/// pressure coordinates.
KernelProbe kernel_probe(const SaddleSystem& system, std::size_t limit = kDenseProbeLimit);

/// Orthonormal basis (columns) of the complement of `v`.
Eigen::MatrixXd orthogonal_complement(const Eigen::VectorXd& v);

}  // namespace curlstokes
