// Command-line driver for the experiment suite.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "curlstokes/experiments.hpp"

namespace {

using namespace curlstokes;

constexpr int kExitConfig = 2;
constexpr int kExitSingular = 3;
constexpr int kExitSizeGuard = 4;

int env_threads() {
  const char* value = std::getenv("CURLSTOKES_THREADS");
  if (value == nullptr || *value == '\0') {
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  char* end = nullptr;
  const long n = std::strtol(value, &end, 10);
  if (*end != '\0' || n < 1) throw std::invalid_argument("CURLSTOKES_THREADS must be a positive integer");
  return static_cast<int>(n);
}

OutputFormats parse_formats(const std::string& list) {
  OutputFormats f{false, false, false};
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "csv") {
      f.csv = true;
    } else if (item == "json") {
      f.json = true;
    } else if (item == "svg") {
      f.svg = true;
    } else {
      throw std::invalid_argument("unknown output format '" + item + "'");
    }
  }
  return f;
}

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void print_study(const StudyResult& r) {
  const auto& levels = r.report.levels;
  std::printf("%-6s %-10s %-8s %-12s %-12s %-12s %-12s\n", "level", "h", "dofs", "u L2", "curl", "p L2", "p H1");
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const auto& e = levels[l];
    std::printf("%-6zu %-10.4g %-8zu %-12.4e %-12.4e %-12.4e %-12.4e\n", l, e.h, e.dofs_u + e.dofs_p, e.err_u_l2,
                e.err_u_curl, e.err_p_l2, e.err_p_h1);
  }
  std::printf("final EOC: u L2 %s, curl %s, p L2 %s, p H1 %s\n", g(r.report.eoc_of("err_u_l2").last()).c_str(),
              g(r.report.eoc_of("err_u_curl").last()).c_str(), g(r.report.eoc_of("err_p_l2").last()).c_str(),
              g(r.report.eoc_of("err_p_h1").last()).c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"H(curl)-conforming Stokes experiments"};
  app.require_subcommand(1);

  StudyOptions study;
  std::string out = "out";
  std::string formats = "csv,json,svg";
  std::optional<std::uint64_t> jitter;
  std::optional<int> base;

  auto* conv = app.add_subcommand("convergence", "refinement study with errors and rates");
  conv->add_option("--case", study.case_name, "star | hole | lshape | linear");
  conv->add_option("--order", study.order, "polynomial order r (1 or 2)");
  conv->add_option("--levels", study.levels, "number of mesh levels");
  conv->add_option("--cw", study.penalty, "Nitsche penalty C_w");
  conv->add_option("--base", base, "subdivision of the coarsest mesh");
  conv->add_option("--jitter", jitter, "seed for interior vertex jitter");
  conv->add_flag("--per-edge-h", study.per_edge_h, "use edge length in C_w/h");
  conv->add_flag("--harmonic", study.harmonic_dimension, "compute the harmonic dimension per level");
  conv->add_option("--formats", formats, "comma list of csv,json,svg");
  conv->add_option("--out", out, "output directory");

  double ce_penalty = 10.0;
  auto* counter = app.add_subcommand("counterexample", "kernel of the essential-BC pair on two triangles");
  counter->add_option("--cw", ce_penalty, "penalty of the Nitsche comparison");
  counter->add_option("--out", out, "output directory");

  std::string h_case = "hole";
  int h_order = 1;
  std::optional<int> h_sub;
  auto* harmonic = app.add_subcommand("harmonic", "discrete harmonic fields");
  harmonic->add_option("--case", h_case, "domain case");
  harmonic->add_option("--order", h_order, "polynomial order r");
  harmonic->add_option("--subdivision", h_sub, "mesh subdivision");
  harmonic->add_option("--out", out, "output directory");

  std::string p_case = "star";
  int p_order = 1;
  int p_levels = 3;
  double p_penalty = 10.0;
  auto* probe = app.add_subcommand("probe", "trace constants and inf-sup on small meshes");
  probe->add_option("--case", p_case, "domain case");
  probe->add_option("--order", p_order, "polynomial order r");
  probe->add_option("--levels", p_levels, "number of levels");
  probe->add_option("--cw", p_penalty, "penalty C_w echoed in the report");
  probe->add_option("--base", base, "subdivision of the coarsest mesh");
  probe->add_option("--jitter", jitter, "seed for interior vertex jitter");
  probe->add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*conv) {
      study.jitter_seed = jitter;
      study.base_subdivision = base;
      study.threads = env_threads();
      const OutputFormats f = parse_formats(formats);
      study.validate();
      const StudyResult r = run_convergence_study(study);
      write_convergence_outputs(r, out, f);
      print_study(r);
    } else if (*counter) {
      const CounterexampleResult r = run_counterexample(ce_penalty);
      write_counterexample_outputs(r, out);
      std::printf("essential kernel dimension %zu, witness residual %s, Nitsche kernel dimension %zu\n",
                  r.essential_kernel_dimension, g(r.witness_residual).c_str(), r.nitsche_kernel_dimension);
    } else if (*harmonic) {
      const HarmonicResult r = run_harmonic(h_case, h_order, h_sub);
      write_harmonic_outputs(r, out);
      std::printf("harmonic dimension %zu (first Betti number %d)\n", r.dimension, r.betti_number);
      if (r.dimension != static_cast<std::size_t>(r.betti_number)) {
        std::fprintf(stderr, "error: harmonic dimension differs from the Betti number\n");
        return 1;
      }
    } else if (*probe) {
      const ProbeResult r = run_probe(p_case, p_order, p_levels, p_penalty, base, jitter);
      write_probe_outputs(r, out);
      for (const auto& l : r.levels) {
        std::printf("n=%d h=%s C_n=%s C_par=%s beta=%s beta/h=%s\n", l.subdivision, g(l.h).c_str(),
                    g(l.trace.c_n).c_str(), g(l.trace.c_par).c_str(), g(l.beta).c_str(), g(l.beta_over_h).c_str());
      }
    }
  } catch (const SingularSystemError& e) {
    std::fprintf(stderr, "error: singular system on level %d: %s\n", e.level(), e.what());
    return kExitSingular;
  } catch (const SizeGuardError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSizeGuard;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const MeshError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
