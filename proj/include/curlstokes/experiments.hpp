#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "curlstokes/analysis.hpp"
#include "curlstokes/cases.hpp"
#include "curlstokes/solver.hpp"

namespace curlstokes {

inline constexpr int kReportSchemaVersion = 1;

/// A level whose saddle system turned out singular.
class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(int level, const std::string& what) : std::runtime_error(what), level_(level) {}
  int level() const { return level_; }

 private:
  int level_;
};

struct StudyOptions {
  std::string case_name = "star";
  int order = 1;
  int levels = 4;
  double penalty = 10.0;
  std::optional<int> base_subdivision;  // default: the case's own
  std::optional<std::uint64_t> jitter_seed;
  bool per_edge_h = false;
  bool harmonic_dimension = false;  // run the dense Hodge split on every level
  SolveOptions solver;
  int threads = 1;

  /// Throws std::invalid_argument for unsupported settings.
  void validate() const;
};

struct LevelInfo {
  int subdivision = 0;
  double relative_residual = 0.0;
  int iterations = 0;
  std::optional<std::size_t> harmonic_dimension;
};

struct StudyResult {
  StudyOptions options;
  ConvergenceReport report;
  std::vector<LevelInfo> levels;
};

/// Meshes of a refinement sequence: the base mesh refined uniformly, each
/// level jittered with seed + level when a seed is given.
std::vector<Mesh> level_meshes(const ManufacturedCase& c, int base_subdivision, int levels,
                               std::optional<std::uint64_t> jitter_seed);

/// Solves every level and collects errors. Levels run on up to
/// options.threads threads; results do not depend on the thread count.
StudyResult run_convergence_study(const StudyOptions& options);

struct CounterexampleResult {
  std::size_t essential_kernel_dimension = 0;
  bool essential_solve_singular = false;
  Eigen::VectorXd witness;             // λ₁ - 1/6 at the vertices
  double witness_residual = 0.0;       // max |B q̃|, |meanᵀ q̃|
  double witness_span_residual = 0.0;  // distance of q̃ to the probed kernel
  std::size_t nitsche_kernel_dimension = 0;
  std::size_t refined_kernel_dimension = 0;
  double penalty = 10.0;
  double seconds = 0.0;
};

CounterexampleResult run_counterexample(double penalty = 10.0);

struct HarmonicResult {
  std::string case_name;
  int subdivision = 0;
  int order = 1;
  std::size_t dimension = 0;
  int betti_number = 0;
  std::size_t dofs = 0;
  std::size_t gradient_dimension = 0;
  std::size_t curl_dimension = 0;
  double orthogonality = 0.0;
  double max_curl_ratio = 0.0;   // ‖curl h‖ / ‖h‖ over the basis
  std::vector<double> trace_ratios;  // ‖h‖_curl / ‖γ∥ h‖_Γ per basis field
  Eigen::MatrixXd basis;             // coefficient arrays
  std::shared_ptr<const EdgeSpace> space;
};

HarmonicResult run_harmonic(const std::string& case_name, int order, std::optional<int> subdivision);

struct ProbeLevel {
  int subdivision = 0;
  double h = 0.0;
  TraceConstants trace;
  double beta = 0.0;
  double beta_over_h = 0.0;
  double coercivity = 0.0;  // min vᵀAv / ‖v‖²_# over random v ∈ X_h
};

struct ProbeResult {
  std::string case_name;
  int order = 1;
  double penalty = 10.0;
  std::optional<std::uint64_t> jitter_seed;
  std::vector<ProbeLevel> levels;
};

/// Dense probes on small meshes; the sequence starts at subdivision 2 unless
/// the domain needs a multiple of 3.
ProbeResult run_probe(const std::string& case_name, int order, int levels, double penalty,
                      std::optional<int> base_subdivision = std::nullopt,
                      std::optional<std::uint64_t> jitter_seed = std::nullopt);

struct OutputFormats {
  bool csv = true;
  bool json = true;
  bool svg = true;
};

// Output files.
void write_convergence_outputs(const StudyResult& result, const std::filesystem::path& dir,
                               const OutputFormats& formats = {});
void write_counterexample_outputs(const CounterexampleResult& result, const std::filesystem::path& dir);
void write_harmonic_outputs(const HarmonicResult& result, const std::filesystem::path& dir, int grid = 41);
void write_probe_outputs(const ProbeResult& result, const std::filesystem::path& dir);

/// Minimal log-log chart of several error series against h, with reference
/// slopes drawn as dashed lines.
struct PlotSeries {
  std::string label;
  std::vector<double> values;
};
std::string loglog_svg(const std::string& title, const std::vector<double>& h, const std::vector<PlotSeries>& series,
                       const std::vector<double>& reference_slopes);

}  // namespace curlstokes
