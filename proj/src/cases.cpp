#include "curlstokes/cases.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace curlstokes {

namespace {

constexpr double kPi = 3.14159265358979323846;

Point star_u(const Point& x) {
  return Point(-std::sin(4 * x.x()) * std::cos(4 * x.y()), std::cos(4 * x.x()) * std::sin(4 * x.y()));
}
double star_curl(const Point& x) { return -8.0 * std::sin(4 * x.x()) * std::sin(4 * x.y()); }
double star_p(const Point& x) { return std::cos(4 * kPi * x.x()) + std::cos(4 * kPi * x.y()); }
Point star_grad_p(const Point& x) {
  return Point(-4 * kPi * std::sin(4 * kPi * x.x()), -4 * kPi * std::sin(4 * kPi * x.y()));
}

void fill_star_fields(ManufacturedCase& c) {
  c.u = star_u;
  c.curl_u = star_curl;
  c.p = star_p;
  c.grad_p = star_grad_p;
  // ∇×(∇×u) = 32u for this field
  c.f = [](const Point& x) -> Point { return 32.0 * star_u(x) + star_grad_p(x); };
  c.g = star_u;
  c.regularity = "smooth: u, p analytic";
}

bool in_unit_square(const Point& x) {
  return x.x() >= 0.0 && x.x() <= 1.0 && x.y() >= 0.0 && x.y() <= 1.0;
}

// Angular profile of the corner solution and its derivatives.
struct AngularProfile {
  double lambda = kLShapeLambda;
  double a1 = 1.0 + kLShapeLambda;
  double a2 = 1.0 - kLShapeLambda;
  double c = std::cos(kLShapeLambda * kLShapeOmega);

  // k-th derivative, using dᵏ sin(aφ) = aᵏ sin(aφ + kπ/2) and likewise for cos.
  double psi(double phi, int k) const {
    const double shift = k * kPi / 2.0;
    return c / a1 * std::pow(a1, k) * std::sin(a1 * phi + shift) - std::pow(a1, k) * std::cos(a1 * phi + shift) -
           c / a2 * std::pow(a2, k) * std::sin(a2 * phi + shift) + std::pow(a2, k) * std::cos(a2 * phi + shift);
  }
  // p = r^(λ-1) P(φ)
  double pressure(double phi, int k) const {
    return -(a1 * a1 * psi(phi, k + 1) + psi(phi, k + 3)) / (1.0 - lambda);
  }
};

struct Polar {
  double r;
  double phi;
};

Polar polar(const Point& x) {
  double phi = std::atan2(x.y(), x.x());
  if (phi < 0.0) phi += 2.0 * kPi;
  // points on the edge y = 0, x > 0 rounded to just below the axis
  if (phi > 1.75 * kPi) phi -= 2.0 * kPi;
  return {x.norm(), phi};
}

bool in_lshape(const Point& x) {
  const bool in_box = std::abs(x.x()) <= 1.0 && std::abs(x.y()) <= 1.0;
  const bool in_cut = x.x() > 0.0 && x.y() < 0.0;
  return in_box && !in_cut;
}

}  // namespace

ManufacturedCase star_case() {
  ManufacturedCase c;
  c.name = "star";
  c.domain = [](int n) { return generate_unit_square(n); };
  c.contains = in_unit_square;
  c.base_subdivision = 8;
  c.betti_number = 0;
  fill_star_fields(c);
  return c;
}

ManufacturedCase hole_case() {
  ManufacturedCase c;
  c.name = "hole";
  c.domain = [](int n) { return generate_square_with_hole(n); };
  c.contains = [](const Point& x) {
    const bool in_hole = x.x() > 1.0 / 3.0 && x.x() < 2.0 / 3.0 && x.y() > 1.0 / 3.0 && x.y() < 2.0 / 3.0;
    return in_unit_square(x) && !in_hole;
  };
  c.base_subdivision = 3;
  c.betti_number = 1;
  fill_star_fields(c);
  return c;
}

ManufacturedCase lshape_case() {
  ManufacturedCase c;
  c.name = "lshape";
  c.domain = [](int n) { return generate_l_shape(n); };
  c.contains = in_lshape;
  c.base_subdivision = 2;
  c.betti_number = 0;
  const AngularProfile a;
  // u = ∇×s for the stream function s = r^(1+λ) Ψ(φ)
  c.u = [a](const Point& x) -> Point {
    const Polar pc = polar(x);
    if (pc.r == 0.0) return Point(0, 0);
    const double rl = std::pow(pc.r, a.lambda);
    const double s = std::sin(pc.phi);
    const double co = std::cos(pc.phi);
    const double psi = a.psi(pc.phi, 0);
    const double dpsi = a.psi(pc.phi, 1);
    return rl * Point(a.a1 * s * psi + co * dpsi, s * dpsi - a.a1 * co * psi);
  };
  c.curl_u = [a](const Point& x) {
    const Polar pc = polar(x);
    if (pc.r == 0.0) throw SingularPointError("curl u is singular at the re-entrant corner");
    return -std::pow(pc.r, a.lambda - 1.0) * (a.a1 * a.a1 * a.psi(pc.phi, 0) + a.psi(pc.phi, 2));
  };
  c.p = [a](const Point& x) {
    const Polar pc = polar(x);
    if (pc.r == 0.0) throw SingularPointError("p is singular at the re-entrant corner");
    return std::pow(pc.r, a.lambda - 1.0) * a.pressure(pc.phi, 0);
  };
  c.grad_p = [a](const Point& x) -> Point {
    const Polar pc = polar(x);
    if (pc.r == 0.0) throw SingularPointError("grad p is singular at the re-entrant corner");
    const double scale = std::pow(pc.r, a.lambda - 2.0);
    const Point er(std::cos(pc.phi), std::sin(pc.phi));
    const Point ephi(-std::sin(pc.phi), std::cos(pc.phi));
    return scale * ((a.lambda - 1.0) * a.pressure(pc.phi, 0) * er + a.pressure(pc.phi, 1) * ephi);
  };
  c.f = [](const Point&) { return Point(0, 0); };
  c.g = c.u;
  c.regularity = "corner singularity: u not in H^2, p not in H^1";
  return c;
}

ManufacturedCase linear_case() {
  ManufacturedCase c;
  c.name = "linear";
  c.domain = [](int n) { return generate_unit_square(n); };
  c.contains = in_unit_square;
  c.base_subdivision = 1;
  c.betti_number = 0;
  c.u = [](const Point& x) { return Point(-x.y(), x.x()); };
  c.curl_u = [](const Point&) { return 2.0; };
  c.p = [](const Point& x) { return x.x() - 0.5; };
  c.grad_p = [](const Point&) { return Point(1, 0); };
  c.f = [](const Point&) { return Point(1, 0); };
  c.g = c.u;
  c.regularity = "linear: u in the lowest-order edge space, p in P1";
  return c;
}

std::vector<std::string> case_names() { return {"star", "hole", "lshape", "linear"}; }

ManufacturedCase case_by_name(const std::string& name) {
  if (name == "star") return star_case();
  if (name == "hole") return hole_case();
  if (name == "lshape") return lshape_case();
  if (name == "linear") return linear_case();
  throw std::invalid_argument("unknown case '" + name + "' (expected star, hole, lshape or linear)");
}

CaseCheck check_case(const ManufacturedCase& c, int samples, std::uint64_t seed, double exclusion) {
  const Mesh mesh = c.domain(c.base_subdivision);
  Point lo = mesh.vertex(0);
  Point hi = mesh.vertex(0);
  for (const auto& v : mesh.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double step = 1e-3;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> ux(lo.x(), hi.x());
  std::uniform_real_distribution<double> uy(lo.y(), hi.y());

  auto stencil_inside = [&](const Point& x) {
    for (double dx : {-2 * step, 2 * step}) {
      if (!c.contains(x + Point(dx, 0)) || !c.contains(x + Point(0, dx))) return false;
    }
    return c.contains(x) && (c.name != "lshape" || x.norm() >= exclusion);
  };
  auto d = [&](const auto& fn, const Point& x, const Point& dir) {
    return (-fn(x + 2 * step * dir) + 8.0 * fn(x + step * dir) - 8.0 * fn(x - step * dir) +
            fn(x - 2 * step * dir)) /
           (12.0 * step);
  };
  const Point ex(1, 0);
  const Point ey(0, 1);
  auto ux_f = [&](const Point& x) { return c.u(x).x(); };
  auto uy_f = [&](const Point& x) { return c.u(x).y(); };

  CaseCheck check;
  int attempts = 0;
  while (check.samples < samples) {
    if (++attempts > 1000 * samples) throw std::runtime_error("could not sample the domain of " + c.name);
    const Point x(ux(gen), uy(gen));
    if (!stencil_inside(x)) continue;
    ++check.samples;
    const double div = d(ux_f, x, ex) + d(uy_f, x, ey);
    const double fd_curl = d(uy_f, x, ex) - d(ux_f, x, ey);
    const Point curl_curl(d(c.curl_u, x, ey), -d(c.curl_u, x, ex));
    const Point f = c.f(x);
    const Point gp = c.grad_p(x);
    const double scale = std::max({1.0, f.norm(), gp.norm()});
    check.max_divergence = std::max(check.max_divergence, std::abs(div));
    check.max_curl_mismatch =
        std::max(check.max_curl_mismatch, std::abs(fd_curl - c.curl_u(x)) / std::max(1.0, std::abs(c.curl_u(x))));
    check.max_momentum_residual = std::max(check.max_momentum_residual, (f - curl_curl - gp).norm() / scale);
    const Point fd_grad(d(c.p, x, ex), d(c.p, x, ey));
    check.max_gradient_mismatch = std::max(check.max_gradient_mismatch, (fd_grad - gp).norm() / scale);
  }
  return check;
}

}  // namespace curlstokes
