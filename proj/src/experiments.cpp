#include "curlstokes/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include <Eigen/Dense>

namespace curlstokes {

namespace {

std::shared_ptr<const Mesh> shared(Mesh m) { return std::make_shared<const Mesh>(std::move(m)); }

BoundaryData boundary_for(const ManufacturedCase& c, const Mesh& mesh, double penalty, bool per_edge_h) {
  BoundaryData bd;
  bd.g = c.g;
  bd.penalty = penalty;
  bd.h = mesh.h_max();
  bd.per_edge_h = per_edge_h;
  return bd;
}

// Smallest subdivision the probe sequence may start from.
int probe_base(const ManufacturedCase& c) { return c.base_subdivision % 3 == 0 ? 3 : 2; }

}  // namespace

void StudyOptions::validate() const {
  case_by_name(case_name);
  if (order != 1 && order != 2) throw std::invalid_argument("order must be 1 or 2");
  if (levels < 2) throw std::invalid_argument("a convergence study needs at least 2 levels");
  if (levels > 8) throw std::invalid_argument("at most 8 refinement levels are supported");
  if (!(penalty > 0.0)) throw std::invalid_argument("penalty C_w must be positive");
  if (base_subdivision && *base_subdivision < 1) throw std::invalid_argument("base subdivision must be positive");
  if (threads < 1) throw std::invalid_argument("thread count must be positive");
}

std::vector<Mesh> level_meshes(const ManufacturedCase& c, int base_subdivision, int levels,
                               std::optional<std::uint64_t> jitter_seed) {
  std::vector<Mesh> meshes;
  meshes.push_back(c.domain(base_subdivision));
  for (int l = 1; l < levels; ++l) meshes.push_back(refine_uniform(meshes.back()));
  if (jitter_seed) {
    for (std::size_t l = 0; l < meshes.size(); ++l) meshes[l] = jitter_interior(meshes[l], *jitter_seed + l);
  }
  return meshes;
}

StudyResult run_convergence_study(const StudyOptions& options) {
  options.validate();
  const ManufacturedCase c = case_by_name(options.case_name);
  const int base = options.base_subdivision.value_or(c.base_subdivision);
  const std::vector<Mesh> meshes = level_meshes(c, base, options.levels, options.jitter_seed);
  const auto n = static_cast<std::size_t>(options.levels);

  std::vector<ErrorBundle> errors(n);
  std::vector<LevelInfo> info(n);
  std::vector<std::exception_ptr> failures(n);
  std::atomic<std::size_t> next{0};

  auto work = [&]() {
    for (std::size_t l = next++; l < n; l = next++) {
      try {
        const auto mesh = shared(meshes[l]);
        const auto v = build_edge_space(mesh, options.order);
        const auto q = build_nodal_space(mesh, options.order);
        const BoundaryData bd = boundary_for(c, *mesh, options.penalty, options.per_edge_h);
        const SolveReport r = solve(assemble_system(*v, *q, c.f, bd), options.solver);
        if (r.singular) {
          throw SingularSystemError(static_cast<int>(l), "saddle system singular at level " + std::to_string(l));
        }
        errors[l] = compute_errors(EdgeField(v, r.velocity), NodalField(q, r.pressure), c, mesh->h_max());
        info[l].subdivision = base << l;
        info[l].relative_residual = r.relative_residual;
        info[l].iterations = r.iterations;
        if (options.harmonic_dimension) {
          info[l].harmonic_dimension = static_cast<std::size_t>(hodge_decompose(*v, *q).harmonic.cols());
        }
      } catch (...) {
        failures[l] = std::current_exception();
      }
    }
  };
  const int threads = std::min<int>(options.threads, options.levels);
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  StudyResult result;
  result.options = options;
  result.report = make_convergence_report(std::move(errors));
  result.levels = std::move(info);
  return result;
}

CounterexampleResult run_counterexample(double penalty) {
  const auto start = std::chrono::steady_clock::now();
  CounterexampleResult out;
  out.penalty = penalty;
  const VectorFunction zero = [](const Point&) { return Point(0, 0); };
  const VectorFunction load = [](const Point&) { return Point(1, 0); };
  BoundaryData bd;
  bd.g = zero;
  bd.penalty = penalty;

  const auto mesh = shared(two_triangle_square());
  bd.h = mesh->h_max();
  const EdgeSpace essential(mesh, 1, true);
  const NodalSpace q(mesh, 1);
  const SaddleSystem system = assemble_system(essential, q, load, bd);
  const KernelProbe probe = kernel_probe(system);
  out.essential_kernel_dimension = probe.dimension;
  out.essential_solve_singular = solve(system).singular;

  // λ₁ - 1/6: λ₁ is the hat function of x₁ = (0, 0)
  out.witness = Eigen::VectorXd::Constant(4, -1.0 / 6.0);
  out.witness(0) += 1.0;
  out.witness_residual =
      std::max((system.b * out.witness).cwiseAbs().maxCoeff(), std::abs(system.mean.dot(out.witness)));
  if (probe.dimension > 0) {
    Eigen::MatrixXd span(4, static_cast<Eigen::Index>(probe.dimension));
    for (std::size_t k = 0; k < probe.dimension; ++k) span.col(static_cast<Eigen::Index>(k)) = probe.witnesses[k].pressure;
    const Eigen::VectorXd coeffs = span.colPivHouseholderQr().solve(out.witness);
    out.witness_span_residual = (span * coeffs - out.witness).norm();
  } else {
    out.witness_span_residual = out.witness.norm();
  }

  const EdgeSpace nitsche(mesh, 1);
  out.nitsche_kernel_dimension = kernel_probe(assemble_system(nitsche, q, load, bd)).dimension;

  const auto fine = shared(refine_uniform(*mesh));
  const EdgeSpace fine_v(fine, 1, true);
  const NodalSpace fine_q(fine, 1);
  out.refined_kernel_dimension = kernel_probe(assemble_system(fine_v, fine_q, load, bd)).dimension;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

HarmonicResult run_harmonic(const std::string& case_name, int order, std::optional<int> subdivision) {
  if (order != 1 && order != 2) throw std::invalid_argument("order must be 1 or 2");
  const ManufacturedCase c = case_by_name(case_name);
  HarmonicResult out;
  out.case_name = case_name;
  out.order = order;
  out.subdivision = subdivision.value_or(c.base_subdivision % 3 == 0 ? 3 : 2);
  out.betti_number = c.betti_number;
  const auto mesh = shared(c.domain(out.subdivision));
  out.space = build_edge_space(mesh, order);
  const NodalSpace q(mesh, order);
  const HodgeDecomposition d = hodge_decompose(*out.space, q);
  out.dimension = static_cast<std::size_t>(d.harmonic.cols());
  out.dofs = out.space->dof_count();
  out.gradient_dimension = static_cast<std::size_t>(d.gradients.cols());
  out.curl_dimension = static_cast<std::size_t>(d.curls.cols());
  out.orthogonality = d.orthogonality;
  out.basis = d.harmonic;
  for (Eigen::Index k = 0; k < d.harmonic.cols(); ++k) {
    const Eigen::VectorXd h = d.harmonic.col(k);
    const auto [norm, curl] = field_norms(EdgeField(out.space, h));
    out.max_curl_ratio = std::max(out.max_curl_ratio, curl / norm);
    out.trace_ratios.push_back(harmonic_trace_ratio(*out.space, h));
  }
  return out;
}

ProbeResult run_probe(const std::string& case_name, int order, int levels, double penalty,
                      std::optional<int> base_subdivision, std::optional<std::uint64_t> jitter_seed) {
  if (order != 1 && order != 2) throw std::invalid_argument("order must be 1 or 2");
  if (levels < 1) throw std::invalid_argument("probe needs at least one level");
  if (!(penalty > 0.0)) throw std::invalid_argument("penalty C_w must be positive");
  const ManufacturedCase c = case_by_name(case_name);
  ProbeResult out;
  out.case_name = case_name;
  out.order = order;
  out.penalty = penalty;
  out.jitter_seed = jitter_seed;
  const std::vector<Mesh> meshes = level_meshes(c, base_subdivision.value_or(probe_base(c)), levels, jitter_seed);
  for (std::size_t l = 0; l < meshes.size(); ++l) {
    const auto mesh = shared(meshes[l]);
    const EdgeSpace v(mesh, order);
    const NodalSpace q(mesh, order);
    ProbeLevel p;
    p.subdivision = base_subdivision.value_or(probe_base(c)) << l;
    p.h = mesh->h_max();
    p.trace = estimate_trace_constants(v, p.h);
    p.beta = estimate_infsup(v, q, p.h);
    p.beta_over_h = p.beta / p.h;
    BoundaryData bd = boundary_for(c, *mesh, penalty, false);
    p.coercivity = coercivity_probe(v, q, bd, 200, 1).min_ratio;
    out.levels.push_back(p);
  }
  return out;
}

}  // namespace curlstokes
