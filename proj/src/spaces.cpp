#include "curlstokes/spaces.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "curlstokes/quadrature.hpp"

namespace curlstokes {

TriangleGeometry triangle_geometry(const Mesh& mesh, std::size_t t) {
  TriangleGeometry geo;
  const auto& tri = mesh.triangle(t);
  for (int k = 0; k < 3; ++k) geo.vertices[k] = mesh.vertex(tri[k]);
  geo.area = 0.5 * cross2(geo.vertices[1] - geo.vertices[0], geo.vertices[2] - geo.vertices[0]);
  for (int k = 0; k < 3; ++k) {
    geo.grad_lambda[k] =
        rotate90(geo.vertices[(k + 2) % 3] - geo.vertices[(k + 1) % 3]) / (2.0 * geo.area);
  }
  return geo;
}

Barycentric locate_in_triangle(const Mesh& mesh, std::size_t t, const Point& x) {
  const TriangleGeometry geo = triangle_geometry(mesh, t);
  Barycentric b{};
  for (int k = 0; k < 3; ++k) b[k] = geo.grad_lambda[k].dot(x - geo.vertices[(k + 1) % 3]);
  for (double lambda : b) {
    if (lambda < -1e-10) {
      std::ostringstream msg;
      msg << "point (" << x.x() << ", " << x.y() << ") lies outside triangle " << t;
      throw std::domain_error(msg.str());
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// EdgeSpace

EdgeSpace::EdgeSpace(std::shared_ptr<const Mesh> mesh, int order, bool essential_bc)
    : mesh_(std::move(mesh)), order_(order), essential_bc_(essential_bc) {
  if (order_ != 1 && order_ != 2) {
    throw std::invalid_argument("edge space order must be 1 or 2, got " + std::to_string(order_));
  }
  const Mesh& m = *mesh_;
  const int per_edge = order_;
  edge_dofs_.assign(2 * m.edge_count(), -1);
  long next = 0;
  for (std::size_t e = 0; e < m.edge_count(); ++e) {
    if (essential_bc_ && m.is_boundary_edge(e)) continue;
    for (int k = 0; k < per_edge; ++k) edge_dofs_[2 * e + static_cast<std::size_t>(k)] = next++;
  }
  interior_dofs_.assign(2 * m.triangle_count(), -1);
  if (order_ == 2) {
    for (std::size_t t = 0; t < m.triangle_count(); ++t) {
      interior_dofs_[2 * t] = next++;
      interior_dofs_[2 * t + 1] = next++;
    }
  }
  dof_count_ = static_cast<std::size_t>(next);

  const std::size_t nl = local_dof_count();
  local_to_global_.assign(nl * m.triangle_count(), -1);
  for (std::size_t t = 0; t < m.triangle_count(); ++t) {
    long* row = &local_to_global_[nl * t];
    const auto& te = m.triangle_edges(t);
    for (int k = 0; k < 3; ++k) {
      row[k] = edge_dofs_[2 * te[k]];
      if (order_ == 2) row[3 + k] = edge_dofs_[2 * te[k] + 1];
    }
    if (order_ == 2) {
      row[6] = interior_dofs_[2 * t];
      row[7] = interior_dofs_[2 * t + 1];
    }
  }
}

std::span<const long> EdgeSpace::local_dofs(std::size_t t) const {
  const std::size_t nl = local_dof_count();
  return {local_to_global_.data() + nl * t, nl};
}

long EdgeSpace::edge_dof(std::size_t e, int k) const {
  if (k < 0 || k >= order_) return -1;
  return edge_dofs_[2 * e + static_cast<std::size_t>(k)];
}

long EdgeSpace::interior_dof(std::size_t t, int k) const {
  if (order_ != 2 || k < 0 || k > 1) return -1;
  return interior_dofs_[2 * t + static_cast<std::size_t>(k)];
}

void EdgeSpace::evaluate(std::size_t t, const TriangleGeometry& geo, const Barycentric& b,
                         EdgeBasisValues& out) const {
  const auto& g = geo.grad_lambda;
  const auto& signs = mesh_->triangle_edge_signs(t);
  std::array<Point, 3> whitney;
  std::array<double, 3> whitney_curl{};
  for (int k = 0; k < 3; ++k) {
    const int a = (k + 1) % 3;
    const int c = (k + 2) % 3;
    whitney[k] = b[a] * g[c] - b[c] * g[a];
    whitney_curl[k] = 2.0 * cross2(g[a], g[c]);
    out.value[k] = signs[k] * whitney[k];
    out.curl[k] = signs[k] * whitney_curl[k];
  }
  if (order_ == 1) return;
  for (int k = 0; k < 3; ++k) {
    const int a = (k + 1) % 3;
    const int c = (k + 2) % 3;
    out.value[3 + k] = b[a] * g[c] + b[c] * g[a];
    out.curl[3 + k] = 0.0;
  }
  // λ0 w12 and λ1 w20; w12 is local edge 0, w20 is local edge 1
  for (int k = 0; k < 2; ++k) {
    out.value[6 + k] = b[k] * whitney[k];
    out.curl[6 + k] = cross2(g[k], whitney[k]) + b[k] * whitney_curl[k];
  }
}

EdgeBasisValues EdgeSpace::evaluate_at(std::size_t t, const Point& x) const {
  const Barycentric b = locate_in_triangle(*mesh_, t, x);
  EdgeBasisValues out{};
  evaluate(t, triangle_geometry(*mesh_, t), b, out);
  return out;
}

// ---------------------------------------------------------------------------
// NodalSpace

NodalSpace::NodalSpace(std::shared_ptr<const Mesh> mesh, int order, bool zero_mean)
    : mesh_(std::move(mesh)), order_(order), zero_mean_(zero_mean) {
  if (order_ != 1 && order_ != 2) {
    throw std::invalid_argument("nodal space order must be 1 or 2, got " + std::to_string(order_));
  }
  const Mesh& m = *mesh_;
  dof_count_ = m.vertex_count() + (order_ == 2 ? m.edge_count() : 0);
  const std::size_t nl = local_dof_count();
  local_to_global_.assign(nl * m.triangle_count(), -1);
  for (std::size_t t = 0; t < m.triangle_count(); ++t) {
    long* row = &local_to_global_[nl * t];
    for (int k = 0; k < 3; ++k) row[k] = static_cast<long>(m.triangle(t)[k]);
    if (order_ == 2) {
      for (int k = 0; k < 3; ++k) {
        row[3 + k] = static_cast<long>(m.vertex_count() + m.triangle_edges(t)[k]);
      }
    }
  }
}

std::span<const long> NodalSpace::local_dofs(std::size_t t) const {
  const std::size_t nl = local_dof_count();
  return {local_to_global_.data() + nl * t, nl};
}

Point NodalSpace::node(std::size_t dof) const {
  if (dof < mesh_->vertex_count()) return mesh_->vertex(dof);
  return mesh_->edge_midpoint(dof - mesh_->vertex_count());
}

void NodalSpace::evaluate(const TriangleGeometry& geo, const Barycentric& b,
                          NodalBasisValues& out) const {
  const auto& g = geo.grad_lambda;
  if (order_ == 1) {
    for (int k = 0; k < 3; ++k) {
      out.value[k] = b[k];
      out.gradient[k] = g[k];
    }
    return;
  }
  for (int k = 0; k < 3; ++k) {
    out.value[k] = b[k] * (2.0 * b[k] - 1.0);
    out.gradient[k] = (4.0 * b[k] - 1.0) * g[k];
    const int a = (k + 1) % 3;
    const int c = (k + 2) % 3;
    out.value[3 + k] = 4.0 * b[a] * b[c];
    out.gradient[3 + k] = 4.0 * (b[a] * g[c] + b[c] * g[a]);
  }
}

NodalBasisValues NodalSpace::evaluate_at(std::size_t t, const Point& x) const {
  const Barycentric b = locate_in_triangle(*mesh_, t, x);
  NodalBasisValues out{};
  evaluate(triangle_geometry(*mesh_, t), b, out);
  return out;
}

std::shared_ptr<const EdgeSpace> build_edge_space(std::shared_ptr<const Mesh> mesh, int order,
                                                  bool essential_bc) {
  return std::make_shared<const EdgeSpace>(std::move(mesh), order, essential_bc);
}

std::shared_ptr<const NodalSpace> build_nodal_space(std::shared_ptr<const Mesh> mesh, int order,
                                                    bool zero_mean) {
  return std::make_shared<const NodalSpace>(std::move(mesh), order, zero_mean);
}

// ---------------------------------------------------------------------------
// Fields

EdgeField::EdgeField(std::shared_ptr<const EdgeSpace> space, Eigen::VectorXd coefficients)
    : space_(std::move(space)), coefficients_(std::move(coefficients)) {
  if (static_cast<std::size_t>(coefficients_.size()) != space_->dof_count()) {
    throw std::invalid_argument("edge field has " + std::to_string(coefficients_.size()) +
                                " coefficients for a space with " +
                                std::to_string(space_->dof_count()) + " dofs");
  }
}

EdgeField::EdgeField(std::shared_ptr<const EdgeSpace> space)
    : EdgeField(space, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space->dof_count()))) {}

std::pair<Point, double> EdgeField::evaluate(std::size_t t, const TriangleGeometry& geo,
                                             const Barycentric& b) const {
  EdgeBasisValues basis{};
  space_->evaluate(t, geo, b, basis);
  const auto dofs = space_->local_dofs(t);
  Point value = Point::Zero();
  double curl = 0.0;
  for (std::size_t i = 0; i < dofs.size(); ++i) {
    if (dofs[i] < 0) continue;
    const double c = coefficients_[dofs[i]];
    value += c * basis.value[i];
    curl += c * basis.curl[i];
  }
  return {value, curl};
}

Point EdgeField::value_at(std::size_t t, const Point& x) const {
  const Barycentric b = locate_in_triangle(space_->mesh(), t, x);
  return evaluate(t, triangle_geometry(space_->mesh(), t), b).first;
}

double EdgeField::curl_at(std::size_t t, const Point& x) const {
  const Barycentric b = locate_in_triangle(space_->mesh(), t, x);
  return evaluate(t, triangle_geometry(space_->mesh(), t), b).second;
}

NodalField::NodalField(std::shared_ptr<const NodalSpace> space, Eigen::VectorXd coefficients)
    : space_(std::move(space)), coefficients_(std::move(coefficients)) {
  if (static_cast<std::size_t>(coefficients_.size()) != space_->dof_count()) {
    throw std::invalid_argument("nodal field has " + std::to_string(coefficients_.size()) +
                                " coefficients for a space with " +
                                std::to_string(space_->dof_count()) + " dofs");
  }
}

NodalField::NodalField(std::shared_ptr<const NodalSpace> space)
    : NodalField(space, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space->dof_count()))) {}

std::pair<double, Point> NodalField::evaluate(std::size_t t, const TriangleGeometry& geo,
                                              const Barycentric& b) const {
  NodalBasisValues basis{};
  space_->evaluate(geo, b, basis);
  const auto dofs = space_->local_dofs(t);
  double value = 0.0;
  Point grad = Point::Zero();
  for (std::size_t i = 0; i < dofs.size(); ++i) {
    value += coefficients_[dofs[i]] * basis.value[i];
    grad += coefficients_[dofs[i]] * basis.gradient[i];
  }
  return {value, grad};
}

double NodalField::value_at(std::size_t t, const Point& x) const {
  const Barycentric b = locate_in_triangle(space_->mesh(), t, x);
  return evaluate(t, triangle_geometry(space_->mesh(), t), b).first;
}

// ---------------------------------------------------------------------------
// Interpolation

namespace {

constexpr int kInterpolationDegree(int order) { return 2 * order + 2; }

// Local moment interpolation on triangle t of a field given in barycentric
// coordinates. Returns coefficients of the globally oriented local basis.
template <typename Field>
std::array<double, 8> local_interpolate(const EdgeSpace& space, std::size_t t,
                                        const TriangleGeometry& geo, const Field& field) {
  std::array<double, 8> coeffs{};
  const Mesh& mesh = space.mesh();
  const auto& signs = mesh.triangle_edge_signs(t);
  const EdgeRule& er = edge_rule(kInterpolationDegree(space.order()));
  for (int k = 0; k < 3; ++k) {
    const int a = (k + 1) % 3;
    const int c = (k + 2) % 3;
    const int lo = signs[k] > 0 ? a : c;
    const int hi = signs[k] > 0 ? c : a;
    const Point chord = geo.vertices[hi] - geo.vertices[lo];
    double m0 = 0.0;
    double m1 = 0.0;
    for (std::size_t q = 0; q < er.size(); ++q) {
      const double s = er.points[q];
      Barycentric b{0.0, 0.0, 0.0};
      b[lo] = 1.0 - s;
      b[hi] = s;
      const double tangential = field(b).dot(chord);
      m0 += er.weights[q] * tangential;
      m1 += er.weights[q] * tangential * (2.0 * s - 1.0);
    }
    coeffs[k] = m0;
    if (space.order() == 2) coeffs[3 + k] = -3.0 * m1;
  }
  if (space.order() == 1) return coeffs;

  // interior moments against the constant vectors e_x, e_y
  const TriangleRule& tr = triangle_rule(kInterpolationDegree(space.order()));
  Eigen::Matrix2d lhs = Eigen::Matrix2d::Zero();
  Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
  EdgeBasisValues basis{};
  for (std::size_t q = 0; q < tr.size(); ++q) {
    const Barycentric& b = tr.points[q];
    const double w = tr.weights[q] * 2.0 * geo.area;
    space.evaluate(t, geo, b, basis);
    Point residual = field(b);
    for (int i = 0; i < 6; ++i) residual -= coeffs[i] * basis.value[i];
    rhs += w * residual;
    lhs.col(0) += w * basis.value[6];
    lhs.col(1) += w * basis.value[7];
  }
  const Eigen::Vector2d bubble = lhs.partialPivLu().solve(rhs);
  coeffs[6] = bubble[0];
  coeffs[7] = bubble[1];
  return coeffs;
}

}  // namespace

EdgeField interpolate_edge(std::shared_ptr<const EdgeSpace> space, const VectorFunction& field) {
  const Mesh& mesh = space->mesh();
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space->dof_count()));
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const TriangleGeometry geo = triangle_geometry(mesh, t);
    const auto local = local_interpolate(*space, t, geo,
                                         [&](const Barycentric& b) { return field(geo.map(b)); });
    const auto dofs = space->local_dofs(t);
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      if (dofs[i] >= 0) coeffs[dofs[i]] = local[i];
    }
  }
  return EdgeField(std::move(space), std::move(coeffs));
}

NodalField interpolate_nodal(std::shared_ptr<const NodalSpace> space, const ScalarFunction& field) {
  Eigen::VectorXd coeffs(static_cast<Eigen::Index>(space->dof_count()));
  for (std::size_t i = 0; i < space->dof_count(); ++i) {
    coeffs[static_cast<Eigen::Index>(i)] = field(space->node(i));
  }
  return NodalField(std::move(space), std::move(coeffs));
}

Eigen::SparseMatrix<double> gradient_matrix(const EdgeSpace& velocity, const NodalSpace& pressure) {
  const Mesh& mesh = velocity.mesh();
  if (&mesh != &pressure.mesh()) throw std::invalid_argument("spaces live on different meshes");
  std::vector<Eigen::Triplet<double>> triplets;
  NodalBasisValues nodal{};
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const TriangleGeometry geo = triangle_geometry(mesh, t);
    const auto vdofs = velocity.local_dofs(t);
    const auto qdofs = pressure.local_dofs(t);
    const auto& te = mesh.triangle_edges(t);
    for (std::size_t j = 0; j < qdofs.size(); ++j) {
      const auto local = local_interpolate(velocity, t, geo, [&](const Barycentric& b) {
        pressure.evaluate(geo, b, nodal);
        return nodal.gradient[j];
      });
      for (std::size_t i = 0; i < vdofs.size(); ++i) {
        if (vdofs[i] < 0 || std::abs(local[i]) < 1e-14) continue;
        // edge dofs are shared: take them from the first adjacent triangle only
        if (i < 6 && *mesh.edge_triangles(te[i % 3])[0] != t) continue;
        triplets.emplace_back(vdofs[i], qdofs[j], local[i]);
      }
    }
  }
  Eigen::SparseMatrix<double> g(static_cast<Eigen::Index>(velocity.dof_count()),
                                static_cast<Eigen::Index>(pressure.dof_count()));
  g.setFromTriplets(triplets.begin(), triplets.end());
  return g;
}

}  // namespace curlstokes
