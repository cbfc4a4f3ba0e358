#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "curlstokes/experiments.hpp"

namespace curlstokes {

namespace {

using Json = nlohmann::ordered_json;

// Columns of errors.csv, in order; the EOC columns repeat the error columns.
const std::vector<std::string> kCsvErrors = {"err_u_l2", "err_u_curl", "err_u_hash", "err_gpar",
                                             "err_gcurl", "err_p_l2",  "err_p_h1"};

std::string fmt(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void prepare(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
}

double member(const ErrorBundle& e, const std::string& name) {
  for (const auto& n : error_norms()) {
    if (name == n.name) return e.*n.member;
  }
  throw std::invalid_argument("unknown norm " + name);
}

Json eoc_json(const EocSeries& s) {
  Json pairwise = Json::array();
  for (double v : s.pairwise) pairwise.push_back(number(v));
  return Json{{"pairwise", pairwise}, {"least_squares_last3", number(s.least_squares)}};
}

}  // namespace

std::string loglog_svg(const std::string& title, const std::vector<double>& h, const std::vector<PlotSeries>& series,
                       const std::vector<double>& reference_slopes) {
  const double width = 480, height = 360, left = 70, right = 150, top = 40, bottom = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (double v : h) {
    xmin = std::min(xmin, std::log10(v));
    xmax = std::max(xmax, std::log10(v));
  }
  for (const auto& s : series) {
    for (double v : s.values) {
      if (!(v > 0.0)) continue;
      ymin = std::min(ymin, std::log10(v));
      ymax = std::max(ymax, std::log10(v));
    }
  }
  if (ymin > ymax) ymin = ymax = 0.0;
  xmin = std::floor(xmin * 2) / 2 - 0.1;
  xmax = std::ceil(xmax * 2) / 2 + 0.1;
  ymin = std::floor(ymin) - 0.1;
  ymax = std::ceil(ymax) + 0.1;
  if (xmax - xmin < 1e-9) xmax = xmin + 1;
  if (ymax - ymin < 1e-9) ymax = ymin + 1;
  const double pw = width - left - right;
  const double ph = height - top - bottom;
  auto px = [&](double lx) { return left + (lx - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double ly) { return top + (ymax - ly) / (ymax - ymin) * ph; };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(2);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << left << "\" y=\"22\" font-size=\"14\">" << title << "</text>\n";
  o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double d = std::ceil(ymin); d <= ymax; d += 1) {
    o << "<line x1=\"" << left << "\" y1=\"" << py(d) << "\" x2=\"" << left + pw << "\" y2=\"" << py(d)
      << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << left - 6 << "\" y=\"" << py(d) + 4 << "\" text-anchor=\"end\">1e" << static_cast<int>(d)
      << "</text>\n";
  }
  for (double v : h) {
    o << "<text x=\"" << px(std::log10(v)) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">";
    o.precision(4);
    o << v;
    o.precision(2);
    o << "</text>\n";
  }
  o << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">h</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = colors[k % 6];
    std::ostringstream pts;
    pts.setf(std::ios::fixed);
    pts.precision(2);
    for (std::size_t i = 0; i < h.size() && i < series[k].values.size(); ++i) {
      if (!(series[k].values[i] > 0.0)) continue;
      const double x = px(std::log10(h[i]));
      const double y = py(std::log10(series[k].values[i]));
      pts << x << "," << y << " ";
      o << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    o << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << color << "\"/>\n";
    o << "<text x=\"" << left + pw + 10 << "\" y=\"" << top + 14 + 16 * k << "\" fill=\"" << color << "\">"
      << series[k].label << "</text>\n";
  }
  // reference slopes anchored at the finest level of the first series
  if (!series.empty() && !h.empty() && series.front().values.back() > 0.0) {
    const double x1 = std::log10(h.back());
    const double x0 = std::log10(h.front());
    const double y1 = std::log10(series.front().values.back()) - 0.3;
    for (std::size_t k = 0; k < reference_slopes.size(); ++k) {
      const double y0 = y1 + reference_slopes[k] * (x0 - x1);
      o << "<line x1=\"" << px(x0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(x1) << "\" y2=\"" << py(y1)
        << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
      o << "<text x=\"" << left + pw + 10 << "\" y=\"" << top + 14 + 16 * (series.size() + k) << "\" fill=\"gray\">slope "
        << reference_slopes[k] << "</text>\n";
    }
  }
  o << "</svg>\n";
  return o.str();
}

void write_convergence_outputs(const StudyResult& result, const std::filesystem::path& dir,
                               const OutputFormats& formats) {
  prepare(dir);
  const auto& levels = result.report.levels;

  std::ostringstream csv;
  csv << "level,h,dofs_u,dofs_p";
  for (const auto& n : kCsvErrors) csv << "," << n;
  for (const auto& n : kCsvErrors) csv << ",eoc_" << n;
  csv << "\n";
  for (std::size_t l = 0; l < levels.size(); ++l) {
    csv << l << "," << fmt(levels[l].h) << "," << levels[l].dofs_u << "," << levels[l].dofs_p;
    for (const auto& n : kCsvErrors) csv << "," << fmt(member(levels[l], n));
    for (const auto& n : kCsvErrors) {
      csv << ",";
      if (l > 0) csv << fmt(result.report.eoc_of(n).pairwise[l - 1]);
    }
    csv << "\n";
  }
  if (formats.csv) write_text(dir / "errors.csv", csv.str());

  const StudyOptions& o = result.options;
  Json config{{"command", "convergence"},
              {"case", o.case_name},
              {"order", o.order},
              {"levels", o.levels},
              {"penalty", o.penalty},
              {"base_subdivision", o.base_subdivision ? Json(*o.base_subdivision) : Json(nullptr)},
              {"jitter_seed", o.jitter_seed ? Json(*o.jitter_seed) : Json(nullptr)},
              {"per_edge_h", o.per_edge_h}};
  Json lv = Json::array();
  for (std::size_t l = 0; l < levels.size(); ++l) {
    Json e{{"level", l},
           {"subdivision", result.levels[l].subdivision},
           {"h", levels[l].h},
           {"dofs_u", levels[l].dofs_u},
           {"dofs_p", levels[l].dofs_p}};
    for (const auto& n : error_norms()) e[n.name] = number(levels[l].*n.member);
    e["relative_residual"] = result.levels[l].relative_residual;
    if (result.levels[l].harmonic_dimension) e["harmonic_dimension"] = *result.levels[l].harmonic_dimension;
    lv.push_back(e);
  }
  Json eoc = Json::object();
  for (const auto& e : result.report.eoc) eoc[e.norm] = eoc_json(e.eoc);
  const Json report{{"schema_version", kReportSchemaVersion}, {"config", config}, {"levels", lv}, {"eoc", eoc}};
  if (formats.json) write_text(dir / "report.json", report.dump(2) + "\n");
  if (!formats.svg) return;

  std::vector<double> h;
  for (const auto& l : levels) h.push_back(l.h);
  auto series = [&](const std::vector<std::string>& names) {
    std::vector<PlotSeries> s;
    for (const auto& n : names) {
      PlotSeries p{n, {}};
      for (const auto& l : levels) p.values.push_back(member(l, n));
      s.push_back(p);
    }
    return s;
  };
  const double r = o.order;
  write_text(dir / "velocity.svg",
             loglog_svg(o.case_name + ": velocity errors", h, series({"err_u_l2", "err_u_curl", "err_u_hash"}),
                        {r, r - 0.5}));
  write_text(dir / "pressure.svg",
             loglog_svg(o.case_name + ": pressure errors", h, series({"err_p_l2", "err_p_h1"}), {r - 0.5, r - 1.5}));
  write_text(dir / "boundary.svg",
             loglog_svg(o.case_name + ": boundary traces", h, series({"err_gpar", "err_gcurl"}), {r, r - 0.5}));
}

void write_counterexample_outputs(const CounterexampleResult& r, const std::filesystem::path& dir) {
  prepare(dir);
  Json witness = Json::array();
  for (Eigen::Index i = 0; i < r.witness.size(); ++i) witness.push_back(r.witness(i));
  const Json report{{"schema_version", kReportSchemaVersion},
                    {"command", "counterexample"},
                    {"essential",
                     {{"kernel_dimension", r.essential_kernel_dimension},
                      {"solver_singular", r.essential_solve_singular},
                      {"witness_velocity", Json::array({0.0})},
                      {"witness_pressure", witness},
                      {"witness_residual", r.witness_residual},
                      {"witness_span_residual", r.witness_span_residual},
                      {"refined_kernel_dimension", r.refined_kernel_dimension}}},
                    {"nitsche", {{"penalty", r.penalty}, {"kernel_dimension", r.nitsche_kernel_dimension}}}};
  write_text(dir / "counterexample.json", report.dump(2) + "\n");
}

void write_harmonic_outputs(const HarmonicResult& r, const std::filesystem::path& dir, int grid) {
  prepare(dir);
  Json ratios = Json::array();
  for (double v : r.trace_ratios) ratios.push_back(v);
  const Json report{{"schema_version", kReportSchemaVersion},
                    {"command", "harmonic"},
                    {"case", r.case_name},
                    {"order", r.order},
                    {"subdivision", r.subdivision},
                    {"dimension", r.dimension},
                    {"betti_number", r.betti_number},
                    {"dofs", r.dofs},
                    {"gradient_dimension", r.gradient_dimension},
                    {"curl_dimension", r.curl_dimension},
                    {"orthogonality", r.orthogonality},
                    {"max_curl_ratio", r.max_curl_ratio},
                    {"curl_norm_over_tangential_trace", ratios}};
  write_text(dir / "harmonic.json", report.dump(2) + "\n");

  // basis fields sampled on a regular grid over the bounding box; points
  // outside the mesh are skipped
  const Mesh& mesh = r.space->mesh();
  Point lo = mesh.vertex(0), hi = mesh.vertex(0);
  for (const auto& v : mesh.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  std::ostringstream csv;
  csv << "basis,x,y,vx,vy\n";
  for (Eigen::Index k = 0; k < r.basis.cols(); ++k) {
    const EdgeField field(r.space, r.basis.col(k));
    for (int j = 0; j < grid; ++j) {
      for (int i = 0; i < grid; ++i) {
        const Point x = lo + Point((hi - lo).x() * i / (grid - 1), (hi - lo).y() * j / (grid - 1));
        for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
          try {
            const Point v = field.value_at(t, x);
            csv << k << "," << fmt(x.x()) << "," << fmt(x.y()) << "," << fmt(v.x()) << "," << fmt(v.y()) << "\n";
            break;
          } catch (const std::domain_error&) {
          }
        }
      }
    }
  }
  write_text(dir / "harmonic_field.csv", csv.str());
}

void write_probe_outputs(const ProbeResult& r, const std::filesystem::path& dir) {
  prepare(dir);
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    levels.push_back(Json{{"subdivision", l.subdivision},
                          {"h", l.h},
                          {"c_n", l.trace.c_n},
                          {"c_par", l.trace.c_par},
                          {"recommended_penalty", l.trace.recommended_penalty()},
                          {"beta", l.beta},
                          {"beta_over_h", l.beta_over_h},
                          {"coercivity_min_ratio", l.coercivity}});
  }
  const Json report{{"schema_version", kReportSchemaVersion},
                    {"command", "probe"},
                    {"case", r.case_name},
                    {"order", r.order},
                    {"penalty", r.penalty},
                    {"jitter_seed", r.jitter_seed ? Json(*r.jitter_seed) : Json(nullptr)},
                    {"levels", levels}};
  write_text(dir / "probe.json", report.dump(2) + "\n");
}

}  // namespace curlstokes
