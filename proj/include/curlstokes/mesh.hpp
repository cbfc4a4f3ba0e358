#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace curlstokes {

using Point = Eigen::Vector2d;
using Triangle = std::array<std::size_t, 3>;
using EdgeVertices = std::array<std::size_t, 2>;

enum class MeshErrorKind {
  kInvalidArgument,
  kMalformed,      // unreadable file or JSON that does not follow the mesh schema
  kConnectivity,   // vertex index out of range, degenerate or duplicated triangle
  kNonConforming,  // an edge shared by more than two triangles
  kOrientation,    // clockwise or zero-area triangle
};

class MeshError : public std::runtime_error {
 public:
  MeshError(MeshErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  MeshErrorKind kind() const noexcept { return kind_; }

 private:
  MeshErrorKind kind_;
};

struct BoundaryEdge {
  std::size_t edge;
  std::size_t triangle;
  Point normal;   // outward unit normal
  Point tangent;  // rotate90(normal), counterclockwise around the domain
  int marker;     // boundary component id, starting at 1
};

/// Immutable conforming triangulation of a polygonal domain.
///
/// Triangles are stored counterclockwise. Edges carry a global orientation
/// from the lower to the higher vertex index. Local edge k of a triangle is
/// the edge opposite local vertex k, traversed from vertex k+1 to vertex k+2
/// (mod 3); its sign is +1 when that matches the global orientation.
class Mesh {
 public:
  /// Validates the connectivity and derives edges and boundary data.
  /// Boundary markers number the connected components of Γ.
  static Mesh from_connectivity(std::vector<Point> vertices,
                                std::vector<Triangle> triangles);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t triangle_count() const { return triangles_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<EdgeVertices>& edges() const { return edges_; }
  const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_; }

  const Point& vertex(std::size_t v) const { return vertices_[v]; }
  const Triangle& triangle(std::size_t t) const { return triangles_[t]; }
  const EdgeVertices& edge(std::size_t e) const { return edges_[e]; }
  const std::array<std::size_t, 3>& triangle_edges(std::size_t t) const {
    return triangle_edges_[t];
  }
  const std::array<int, 3>& triangle_edge_signs(std::size_t t) const {
    return triangle_edge_signs_[t];
  }
  /// Adjacent triangles of an edge; the second entry is absent on Γ.
  const std::array<std::optional<std::size_t>, 2>& edge_triangles(std::size_t e) const {
    return edge_triangles_[e];
  }
  bool is_boundary_edge(std::size_t e) const { return !edge_triangles_[e][1].has_value(); }
  /// Position of edge `e` in boundary_edges(), if it lies on Γ.
  std::optional<std::size_t> boundary_index(std::size_t e) const;

  double h_max() const { return h_max_; }
  double area(std::size_t t) const;
  double total_area() const;
  double edge_length(std::size_t e) const;
  double diameter(std::size_t t) const;
  Point centroid(std::size_t t) const;
  Point edge_midpoint(std::size_t e) const;
  /// Unit vector along the global edge orientation.
  Point edge_direction(std::size_t e) const;

  /// V - E + F; equals 1 - b1 for a connected planar domain.
  std::int64_t euler_characteristic() const;
  int first_betti_number() const { return static_cast<int>(1 - euler_characteristic()); }
  int boundary_component_count() const { return boundary_components_; }

  /// Returns a description of every violated structural invariant; empty
  /// when the mesh is valid.
  std::vector<std::string> check_invariants() const;

 private:
  Mesh() = default;

  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<EdgeVertices> edges_;
  std::vector<std::array<std::size_t, 3>> triangle_edges_;
  std::vector<std::array<int, 3>> triangle_edge_signs_;
  std::vector<std::array<std::optional<std::size_t>, 2>> edge_triangles_;
  std::vector<BoundaryEdge> boundary_;
  std::vector<std::optional<std::size_t>> boundary_index_;
  int boundary_components_ = 0;
  double h_max_ = 0.0;
};

/// Structured mesh of [0,1]^2: n x n cells, each split along its
/// (1,0)-(0,1) diagonal. n = 1 reproduces two_triangle_square().
Mesh generate_unit_square(int n);

/// [0,1]^2 minus [1/3,2/3]^2 on an n x n grid; n must be a multiple of 3.
Mesh generate_square_with_hole(int n);

/// (-1,1)^2 minus [0,1) x (-1,0] with cells of size 1/n; a vertex sits at the
/// re-entrant corner (0,0).
Mesh generate_l_shape(int n);

/// Unit square with T1 = {x1,x2,x4}, T2 = {x2,x3,x4} and
/// x1 = (0,0), x2 = (1,0), x3 = (1,1), x4 = (0,1) stored as vertices 0..3.
Mesh two_triangle_square();

/// Red refinement: every triangle is split into four congruent children.
/// Parent vertices keep their indices; edge midpoints follow in edge order.
Mesh refine_uniform(const Mesh& mesh);

/// Moves interior vertices by a pseudo-random offset of at most a tenth of the
/// shortest edge per coordinate, so no triangle can flip. Deterministic for a
/// given seed.
Mesh jitter_interior(const Mesh& mesh, std::uint64_t seed);

Mesh load_mesh(const std::filesystem::path& path);
Mesh mesh_from_json(const std::string& text);
void save_mesh(const Mesh& mesh, const std::filesystem::path& path);
std::string mesh_to_json(const Mesh& mesh);

inline double cross2(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }
inline Point rotate90(const Point& v) { return Point(-v.y(), v.x()); }

}  // namespace curlstokes
