#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "curlstokes/cases.hpp"
#include "curlstokes/forms.hpp"
#include "curlstokes/solver.hpp"

namespace curlstokes {

/// Errors of one discrete solution against the analytic one.
struct ErrorBundle {
  double h = 0.0;
  std::size_t dofs_u = 0;
  std::size_t dofs_p = 0;
  double err_u_l2 = 0.0;
  double err_u_curl = 0.0;   // ‖curl(u - u_h)‖
  double err_u_hcurl = 0.0;  // (‖·‖² + ‖curl ·‖²)^½
  double err_u_hash = 0.0;   // (‖·‖²_curl + h⁻¹‖γ∥·‖²_Γ + h‖γ_curl·‖²_Γ)^½
  double err_gpar = 0.0;     // ‖γ∥(u - u_h)‖_Γ
  double err_gcurl = 0.0;    // ‖curl(u - u_h)‖_Γ
  double err_p_l2 = 0.0;     // modulo constants
  double err_p_h1 = 0.0;     // |p - p_h|₁
};

/// Error norms by name, in the column order used by reports.
struct NormField {
  const char* name;
  double ErrorBundle::*member;
};
const std::vector<NormField>& error_norms();

/// Volume terms use triangle rules of degree 2r + 4 (capped at the table
/// limit), boundary terms edge rules of the same degree. The pressure error
/// is measured after removing the mean of p - p_h, since p itself need not
/// have zero mean on every domain.
ErrorBundle compute_errors(const EdgeField& u_h, const NodalField& p_h, const ManufacturedCase& c, double h);

/// ‖v‖ and ‖curl v‖ by quadrature of the pointwise values. Unlike xᵀKx this
/// resolves curls far below sqrt(eps‖K‖).
std::pair<double, double> field_norms(const EdgeField& field);

struct EocSeries {
  std::vector<double> pairwise;  // log(e_k / e_{k+1}) / log(h_k / h_{k+1}); NaN where undefined
  double least_squares = 0.0;    // slope of log e against log h over the last three levels
  double last() const { return pairwise.back(); }
};

/// Throws std::invalid_argument for fewer than two levels or mismatched lengths.
EocSeries compute_eoc(const std::vector<double>& h, const std::vector<double>& errors);

struct NamedEoc {
  std::string norm;
  EocSeries eoc;
};

struct ConvergenceReport {
  std::vector<ErrorBundle> levels;
  std::vector<NamedEoc> eoc;  // one entry per error_norms()
  const EocSeries& eoc_of(const std::string& norm) const;
};

ConvergenceReport make_convergence_report(std::vector<ErrorBundle> levels);

/// V_h = ∇Q_h ⊕ Z_h ⊕ H¹_h, orthogonal in the L² inner product. Columns are
/// velocity coefficient arrays, orthonormal in L².
struct HodgeDecomposition {
  Eigen::MatrixXd gradients;
  Eigen::MatrixXd curls;     // Z_h
  Eigen::MatrixXd harmonic;  // H¹_h
  double orthogonality = 0.0;  // largest |(a, b)| between different blocks

  std::size_t dimension() const {
    return static_cast<std::size_t>(gradients.cols() + curls.cols() + harmonic.cols());
  }
};

/// Dense; throws SizeGuardError beyond `limit` velocity dofs and
/// std::invalid_argument for an essential-BC space.
HodgeDecomposition hodge_decompose(const EdgeSpace& velocity, const NodalSpace& pressure,
                                   std::size_t limit = kDenseProbeLimit);

struct TraceConstants {
  double c_n = 0.0;    // ‖curl v‖_Γ ≤ C_n h^-½ ‖curl v‖
  double c_par = 0.0;  // ‖γ∥ v‖_Γ ≤ C_∥ h^-½ ‖v‖
  double recommended_penalty() const { return 4.0 * c_n; }
};

/// Largest generalized eigenvalues, by dense eigensolves.
TraceConstants estimate_trace_constants(const EdgeSpace& velocity, double h, std::size_t limit = 4000);

/// β_h = min over zero-mean q of max over v of b(v, q) / (|q|₁ ‖v‖_#).
double estimate_infsup(const EdgeSpace& velocity, const NodalSpace& pressure, double h,
                       std::size_t limit = 4000);

struct CoercivityProbe {
  double min_ratio = 0.0;  // min vᵀAv / ‖v‖²_# over the samples
  int samples = 0;
};

/// Random samples from X_h, the L²-complement of the discrete gradients.
CoercivityProbe coercivity_probe(const EdgeSpace& velocity, const NodalSpace& pressure, const BoundaryData& bd,
                                 int samples = 1000, std::uint64_t seed = 1);

/// ‖v‖_curl / ‖γ∥ v‖_Γ for a velocity coefficient array; an L²(Γ) stand-in
/// for the dual trace norm.
double harmonic_trace_ratio(const EdgeSpace& velocity, const Eigen::VectorXd& field);

}  // namespace curlstokes
