#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "curlstokes/mesh.hpp"

namespace curlstokes {

using Barycentric = std::array<double, 3>;
using ScalarFunction = std::function<double(const Point&)>;
using VectorFunction = std::function<Point(const Point&)>;

/// Affine map data of one triangle.
struct TriangleGeometry {
  std::array<Point, 3> vertices;
  std::array<Point, 3> grad_lambda;  // constant barycentric gradients
  double area = 0.0;

  Point map(const Barycentric& b) const {
    return b[0] * vertices[0] + b[1] * vertices[1] + b[2] * vertices[2];
  }
};

TriangleGeometry triangle_geometry(const Mesh& mesh, std::size_t t);

/// Barycentric coordinates of `x` in triangle `t`; throws std::domain_error
/// when x lies outside the closed triangle by more than 1e-10.
Barycentric locate_in_triangle(const Mesh& mesh, std::size_t t, const Point& x);

/// Evaluation of the local basis of an edge space at one point. Values are
/// the globally oriented basis functions (edge signs already applied).
struct EdgeBasisValues {
  std::array<Point, 8> value;
  std::array<double, 8> curl;
};

/// Nédélec elements of the first kind on triangles.
///
/// Order 1 are the Whitney forms w_ab = λa∇λb − λb∇λa, one per edge,
/// normalised so that ∫_e w·t ds = 1 along the global edge direction.
/// Order 2 adds ∇(λaλb) per edge and the two interior bubbles λ0 w12, λ1 w20
/// per triangle (local vertex numbering). Local dofs are ordered
/// [Whitney edge 0..2, gradient edge 0..2, bubble 0..1].
class EdgeSpace {
 public:
  EdgeSpace(std::shared_ptr<const Mesh> mesh, int order, bool essential_bc = false);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  int order() const { return order_; }
  bool essential_bc() const { return essential_bc_; }
  std::size_t dof_count() const { return dof_count_; }
  std::size_t local_dof_count() const { return order_ == 1 ? 3 : 8; }

  /// Global dof per local dof of triangle t; -1 marks a dof removed by the
  /// essential boundary condition.
  std::span<const long> local_dofs(std::size_t t) const;
  /// Dof of moment k (0: Whitney, 1: gradient) on edge e, or -1.
  long edge_dof(std::size_t e, int k) const;
  /// Dof of interior bubble k on triangle t (order 2 only).
  long interior_dof(std::size_t t, int k) const;

  void evaluate(std::size_t t, const TriangleGeometry& geo, const Barycentric& b,
                EdgeBasisValues& out) const;
  EdgeBasisValues evaluate_at(std::size_t t, const Point& x) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  int order_;
  bool essential_bc_;
  std::size_t dof_count_ = 0;
  std::vector<long> local_to_global_;
  std::vector<long> edge_dofs_;      // 2 per edge (second unused for order 1)
  std::vector<long> interior_dofs_;  // 2 per triangle (order 2)
};

struct NodalBasisValues {
  std::array<double, 6> value;
  std::array<Point, 6> gradient;
};

/// Continuous Lagrange elements of order 1 or 2. Order 2 numbers vertex dofs
/// first, then one dof per edge midpoint. Local dofs are [vertex 0..2,
/// edge 0..2]. The zero-mean flag is carried along and enforced by the
/// solver through a scalar multiplier.
class NodalSpace {
 public:
  NodalSpace(std::shared_ptr<const Mesh> mesh, int order, bool zero_mean = true);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  int order() const { return order_; }
  bool zero_mean() const { return zero_mean_; }
  std::size_t dof_count() const { return dof_count_; }
  std::size_t local_dof_count() const { return order_ == 1 ? 3 : 6; }
  std::span<const long> local_dofs(std::size_t t) const;
  /// Coordinates of the Lagrange node of a global dof.
  Point node(std::size_t dof) const;

  void evaluate(const TriangleGeometry& geo, const Barycentric& b, NodalBasisValues& out) const;
  NodalBasisValues evaluate_at(std::size_t t, const Point& x) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  int order_;
  bool zero_mean_;
  std::size_t dof_count_ = 0;
  std::vector<long> local_to_global_;
};

std::shared_ptr<const EdgeSpace> build_edge_space(std::shared_ptr<const Mesh> mesh, int order,
                                                  bool essential_bc = false);
std::shared_ptr<const NodalSpace> build_nodal_space(std::shared_ptr<const Mesh> mesh, int order,
                                                    bool zero_mean = true);

/// Velocity coefficients bound to an edge space.
class EdgeField {
 public:
  EdgeField(std::shared_ptr<const EdgeSpace> space, Eigen::VectorXd coefficients);
  explicit EdgeField(std::shared_ptr<const EdgeSpace> space);

  const EdgeSpace& space() const { return *space_; }
  const std::shared_ptr<const EdgeSpace>& space_ptr() const { return space_; }
  const Eigen::VectorXd& coefficients() const { return coefficients_; }
  Eigen::VectorXd& coefficients() { return coefficients_; }

  /// Value and scalar curl at a barycentric point of triangle t.
  std::pair<Point, double> evaluate(std::size_t t, const TriangleGeometry& geo,
                                    const Barycentric& b) const;
  Point value_at(std::size_t t, const Point& x) const;
  double curl_at(std::size_t t, const Point& x) const;

 private:
  std::shared_ptr<const EdgeSpace> space_;
  Eigen::VectorXd coefficients_;
};

/// Pressure coefficients bound to a nodal space.
class NodalField {
 public:
  NodalField(std::shared_ptr<const NodalSpace> space, Eigen::VectorXd coefficients);
  explicit NodalField(std::shared_ptr<const NodalSpace> space);

  const NodalSpace& space() const { return *space_; }
  const std::shared_ptr<const NodalSpace>& space_ptr() const { return space_; }
  const Eigen::VectorXd& coefficients() const { return coefficients_; }
  Eigen::VectorXd& coefficients() { return coefficients_; }

  std::pair<double, Point> evaluate(std::size_t t, const TriangleGeometry& geo,
                                    const Barycentric& b) const;
  double value_at(std::size_t t, const Point& x) const;

 private:
  std::shared_ptr<const NodalSpace> space_;
  Eigen::VectorXd coefficients_;
};

/// Moment interpolant: ∫_e v·t q ds for q in P_{r-1}(e) on every edge and,
/// for order 2, ∫_T v dx on every triangle. Reproduces members of the space.
EdgeField interpolate_edge(std::shared_ptr<const EdgeSpace> space, const VectorFunction& field);

/// Lagrange interpolant at the nodes of the space.
NodalField interpolate_nodal(std::shared_ptr<const NodalSpace> space, const ScalarFunction& field);

/// Matrix G (dof(V) x dof(Q)) with ∇q = V-basis · G·q for every q ∈ Q,
/// obtained by interpolating each basis gradient.
Eigen::SparseMatrix<double> gradient_matrix(const EdgeSpace& velocity, const NodalSpace& pressure);

/// Largest L² distance between the gradient of a nodal basis function and its
/// L² projection onto the edge space.
double grad_inclusion_check(const EdgeSpace& velocity, const NodalSpace& pressure);

}  // namespace curlstokes
