#include "curlstokes/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace curlstokes {

namespace {

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * cross2(b - a, c - a);
}

struct EdgeUse {
  std::size_t lo;
  std::size_t hi;
  std::size_t triangle;
  int local;
};

// Union-find over boundary vertices, used to number boundary components.
std::size_t find_root(std::vector<std::size_t>& parent, std::size_t v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

}  // namespace

Mesh Mesh::from_connectivity(std::vector<Point> vertices, std::vector<Triangle> triangles) {
  const std::size_t nv = vertices.size();
  if (triangles.empty()) {
    throw MeshError(MeshErrorKind::kConnectivity, "mesh has no triangles");
  }
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const auto& tri = triangles[t];
    for (std::size_t v : tri) {
      if (v >= nv) {
        std::ostringstream msg;
        msg << "triangle " << t << " references vertex " << v << " but the mesh has " << nv
            << " vertices";
        throw MeshError(MeshErrorKind::kConnectivity, msg.str());
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw MeshError(MeshErrorKind::kConnectivity,
                      "triangle " + std::to_string(t) + " repeats a vertex");
    }
    if (!(signed_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]) > 0.0)) {
      throw MeshError(MeshErrorKind::kOrientation,
                      "triangle " + std::to_string(t) + " is not counterclockwise");
    }
  }

  Mesh mesh;
  mesh.vertices_ = std::move(vertices);
  mesh.triangles_ = std::move(triangles);
  const std::size_t nt = mesh.triangles_.size();

  std::vector<EdgeUse> uses;
  uses.reserve(3 * nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles_[t];
    for (int k = 0; k < 3; ++k) {
      const std::size_t a = tri[(k + 1) % 3];
      const std::size_t b = tri[(k + 2) % 3];
      uses.push_back({std::min(a, b), std::max(a, b), t, k});
    }
  }
  std::sort(uses.begin(), uses.end(), [](const EdgeUse& x, const EdgeUse& y) {
    if (x.lo != y.lo) return x.lo < y.lo;
    if (x.hi != y.hi) return x.hi < y.hi;
    return x.triangle < y.triangle;
  });

  mesh.triangle_edges_.assign(nt, {0, 0, 0});
  mesh.triangle_edge_signs_.assign(nt, {0, 0, 0});
  for (std::size_t i = 0; i < uses.size();) {
    std::size_t j = i;
    while (j < uses.size() && uses[j].lo == uses[i].lo && uses[j].hi == uses[i].hi) ++j;
    if (j - i > 2) {
      std::ostringstream msg;
      msg << "edge (" << uses[i].lo << "," << uses[i].hi << ") is shared by " << (j - i)
          << " triangles";
      throw MeshError(MeshErrorKind::kNonConforming, msg.str());
    }
    const std::size_t e = mesh.edges_.size();
    mesh.edges_.push_back({uses[i].lo, uses[i].hi});
    std::array<std::optional<std::size_t>, 2> adjacent;
    for (std::size_t u = i; u < j; ++u) {
      const auto& use = uses[u];
      const auto& tri = mesh.triangles_[use.triangle];
      const std::size_t a = tri[(use.local + 1) % 3];
      mesh.triangle_edges_[use.triangle][use.local] = e;
      mesh.triangle_edge_signs_[use.triangle][use.local] = (a == use.lo) ? 1 : -1;
      adjacent[u - i] = use.triangle;
    }
    if (j - i == 2) {
      // two triangles traversing a shared edge in the same direction overlap
      const auto& u0 = uses[i];
      const auto& u1 = uses[i + 1];
      if (mesh.triangle_edge_signs_[u0.triangle][u0.local] ==
          mesh.triangle_edge_signs_[u1.triangle][u1.local]) {
        std::ostringstream msg;
        msg << "triangles " << u0.triangle << " and " << u1.triangle
            << " overlap across edge (" << u0.lo << "," << u0.hi << ")";
        throw MeshError(MeshErrorKind::kNonConforming, msg.str());
      }
    }
    mesh.edge_triangles_.push_back(adjacent);
    i = j;
  }

  // Boundary edges and their components.
  std::vector<std::size_t> parent(mesh.vertices_.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  mesh.boundary_index_.assign(mesh.edges_.size(), std::nullopt);
  for (std::size_t e = 0; e < mesh.edges_.size(); ++e) {
    if (!mesh.is_boundary_edge(e)) continue;
    const std::size_t t = *mesh.edge_triangles_[e][0];
    const auto& edges = mesh.triangle_edges_[t];
    const int k = static_cast<int>(std::find(edges.begin(), edges.end(), e) - edges.begin());
    const auto& tri = mesh.triangles_[t];
    const Point d = (mesh.vertices_[tri[(k + 2) % 3]] - mesh.vertices_[tri[(k + 1) % 3]]).normalized();
    BoundaryEdge be;
    be.edge = e;
    be.triangle = t;
    be.normal = Point(d.y(), -d.x());
    be.tangent = rotate90(be.normal);
    be.marker = 0;
    mesh.boundary_index_[e] = mesh.boundary_.size();
    mesh.boundary_.push_back(be);
    const std::size_t ra = find_root(parent, mesh.edges_[e][0]);
    const std::size_t rb = find_root(parent, mesh.edges_[e][1]);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<int> component(mesh.vertices_.size(), 0);
  int next = 0;
  for (auto& be : mesh.boundary_) {
    const std::size_t root = find_root(parent, mesh.edges_[be.edge][0]);
    if (component[root] == 0) component[root] = ++next;
    be.marker = component[root];
  }
  mesh.boundary_components_ = next;

  mesh.h_max_ = 0.0;
  for (std::size_t t = 0; t < nt; ++t) mesh.h_max_ = std::max(mesh.h_max_, mesh.diameter(t));
  return mesh;
}

std::optional<std::size_t> Mesh::boundary_index(std::size_t e) const {
  return boundary_index_[e];
}

double Mesh::area(std::size_t t) const {
  const auto& tri = triangles_[t];
  return signed_area(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
}

double Mesh::total_area() const {
  double sum = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) sum += area(t);
  return sum;
}

double Mesh::edge_length(std::size_t e) const {
  return (vertices_[edges_[e][1]] - vertices_[edges_[e][0]]).norm();
}

double Mesh::diameter(std::size_t t) const {
  const auto& tri = triangles_[t];
  double d = 0.0;
  for (int k = 0; k < 3; ++k) {
    d = std::max(d, (vertices_[tri[(k + 1) % 3]] - vertices_[tri[k]]).norm());
  }
  return d;
}

Point Mesh::centroid(std::size_t t) const {
  const auto& tri = triangles_[t];
  return (vertices_[tri[0]] + vertices_[tri[1]] + vertices_[tri[2]]) / 3.0;
}

Point Mesh::edge_midpoint(std::size_t e) const {
  return 0.5 * (vertices_[edges_[e][0]] + vertices_[edges_[e][1]]);
}

Point Mesh::edge_direction(std::size_t e) const {
  return (vertices_[edges_[e][1]] - vertices_[edges_[e][0]]).normalized();
}

std::int64_t Mesh::euler_characteristic() const {
  return static_cast<std::int64_t>(vertices_.size()) - static_cast<std::int64_t>(edges_.size()) +
         static_cast<std::int64_t>(triangles_.size());
}

std::vector<std::string> Mesh::check_invariants() const {
  std::vector<std::string> issues;
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    if (!(area(t) > 0.0)) issues.push_back("triangle " + std::to_string(t) + " has non-positive area");
    // Signed local edges must reproduce the counterclockwise boundary cycle.
    const auto& tri = triangles_[t];
    for (int k = 0; k < 3; ++k) {
      const auto& ev = edges_[triangle_edges_[t][k]];
      const int sign = triangle_edge_signs_[t][k];
      const std::size_t from = sign > 0 ? ev[0] : ev[1];
      const std::size_t to = sign > 0 ? ev[1] : ev[0];
      if (from != tri[(k + 1) % 3] || to != tri[(k + 2) % 3]) {
        issues.push_back("triangle " + std::to_string(t) + " local edge " + std::to_string(k) +
                         " has an inconsistent sign");
      }
    }
  }
  std::vector<int> use_count(edges_.size(), 0);
  for (const auto& te : triangle_edges_) {
    for (std::size_t e : te) ++use_count[e];
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const int expected = is_boundary_edge(e) ? 1 : 2;
    if (use_count[e] != expected) {
      issues.push_back("edge " + std::to_string(e) + " is used by " + std::to_string(use_count[e]) +
                       " triangles");
    }
    if (edges_[e][0] >= edges_[e][1]) {
      issues.push_back("edge " + std::to_string(e) + " is not oriented low to high");
    }
  }
  for (const auto& be : boundary_) {
    if (std::abs(be.normal.norm() - 1.0) > 1e-12 || std::abs(be.tangent.norm() - 1.0) > 1e-12 ||
        std::abs(be.normal.dot(be.tangent)) > 1e-12) {
      issues.push_back("boundary edge " + std::to_string(be.edge) + " has a bad normal/tangent frame");
    }
    if ((edge_midpoint(be.edge) - centroid(be.triangle)).dot(be.normal) <= 0.0) {
      issues.push_back("boundary edge " + std::to_string(be.edge) + " normal points inward");
    }
  }
  return issues;
}

namespace {

// Builds a grid mesh of the cells [x0 + i s, x0 + (i+1) s] x [y0 + j s, ...]
// for which `keep(i, j)` holds, splitting each along its anti-diagonal.
template <typename Keep>
Mesh grid_mesh(int nx, int ny, double x0, double y0, double s, Keep keep) {
  const std::size_t stride = static_cast<std::size_t>(nx) + 1;
  std::vector<long> index((static_cast<std::size_t>(nx) + 1) * (static_cast<std::size_t>(ny) + 1), -1);
  auto node = [&](int i, int j) -> long& { return index[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(i)]; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!keep(i, j)) continue;
      node(i, j) = node(i + 1, j) = node(i + 1, j + 1) = node(i, j + 1) = 0;
    }
  }
  std::vector<Point> vertices;
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      if (node(i, j) < 0) continue;
      node(i, j) = static_cast<long>(vertices.size());
      vertices.emplace_back(x0 + i * s, y0 + j * s);
    }
  }
  std::vector<Triangle> triangles;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!keep(i, j)) continue;
      const auto a = static_cast<std::size_t>(node(i, j));
      const auto b = static_cast<std::size_t>(node(i + 1, j));
      const auto c = static_cast<std::size_t>(node(i + 1, j + 1));
      const auto d = static_cast<std::size_t>(node(i, j + 1));
      triangles.push_back({a, b, d});
      triangles.push_back({b, c, d});
    }
  }
  return Mesh::from_connectivity(std::move(vertices), std::move(triangles));
}

}  // namespace

Mesh generate_unit_square(int n) {
  if (n < 1) throw MeshError(MeshErrorKind::kInvalidArgument, "unit square needs n >= 1");
  return grid_mesh(n, n, 0.0, 0.0, 1.0 / n, [](int, int) { return true; });
}

Mesh generate_square_with_hole(int n) {
  if (n < 3 || n % 3 != 0) {
    throw MeshError(MeshErrorKind::kInvalidArgument,
                    "square with hole needs n to be a positive multiple of 3, got " + std::to_string(n));
  }
  const int lo = n / 3;
  const int hi = 2 * n / 3;
  return grid_mesh(n, n, 0.0, 0.0, 1.0 / n,
                   [lo, hi](int i, int j) { return !(i >= lo && i < hi && j >= lo && j < hi); });
}

Mesh generate_l_shape(int n) {
  if (n < 1) throw MeshError(MeshErrorKind::kInvalidArgument, "L-shape needs n >= 1");
  // cells with i >= n and j < n form the removed quadrant [0,1) x (-1,0]
  return grid_mesh(2 * n, 2 * n, -1.0, -1.0, 1.0 / n,
                   [n](int i, int j) { return !(i >= n && j < n); });
}

Mesh two_triangle_square() {
  std::vector<Point> vertices = {Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)};
  std::vector<Triangle> triangles = {{0, 1, 3}, {1, 2, 3}};
  return Mesh::from_connectivity(std::move(vertices), std::move(triangles));
}

Mesh refine_uniform(const Mesh& mesh) {
  std::vector<Point> vertices = mesh.vertices();
  const std::size_t nv = vertices.size();
  vertices.reserve(nv + mesh.edge_count());
  for (std::size_t e = 0; e < mesh.edge_count(); ++e) vertices.push_back(mesh.edge_midpoint(e));
  std::vector<Triangle> triangles;
  triangles.reserve(4 * mesh.triangle_count());
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangle(t);
    const auto& te = mesh.triangle_edges(t);
    const std::size_t m0 = nv + te[0];  // opposite tri[0]
    const std::size_t m1 = nv + te[1];
    const std::size_t m2 = nv + te[2];
    triangles.push_back({tri[0], m2, m1});
    triangles.push_back({m2, tri[1], m0});
    triangles.push_back({m1, m0, tri[2]});
    triangles.push_back({m0, m1, m2});
  }
  return Mesh::from_connectivity(std::move(vertices), std::move(triangles));
}

Mesh jitter_interior(const Mesh& mesh, std::uint64_t seed) {
  std::vector<bool> on_boundary(mesh.vertex_count(), false);
  for (const auto& be : mesh.boundary_edges()) {
    on_boundary[mesh.edge(be.edge)[0]] = true;
    on_boundary[mesh.edge(be.edge)[1]] = true;
  }
  double shortest = mesh.h_max();
  for (std::size_t e = 0; e < mesh.edge_count(); ++e) shortest = std::min(shortest, mesh.edge_length(e));
  const double amplitude = 0.1 * shortest;

  // splitmix64: portable across standard libraries
  std::uint64_t state = seed;
  auto next_unit = [&state]() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  };

  std::vector<Point> vertices = mesh.vertices();
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const double dx = (2.0 * next_unit() - 1.0) * amplitude;
    const double dy = (2.0 * next_unit() - 1.0) * amplitude;
    if (!on_boundary[v]) vertices[v] += Point(dx, dy);
  }
  return Mesh::from_connectivity(std::move(vertices), mesh.triangles());
}

Mesh mesh_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw MeshError(MeshErrorKind::kMalformed, std::string("invalid JSON: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("triangles") ||
      !doc["vertices"].is_array() || !doc["triangles"].is_array()) {
    throw MeshError(MeshErrorKind::kMalformed,
                    "mesh JSON needs array members \"vertices\" and \"triangles\"");
  }
  std::vector<Point> vertices;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw MeshError(MeshErrorKind::kMalformed, "vertex entries must be [x, y] number pairs");
    }
    vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  std::vector<Triangle> triangles;
  for (const auto& t : doc["triangles"]) {
    if (!t.is_array() || t.size() != 3) {
      throw MeshError(MeshErrorKind::kMalformed, "triangle entries must be [i, j, k] index triples");
    }
    Triangle tri{};
    for (int k = 0; k < 3; ++k) {
      if (!t[k].is_number_integer() || t[k].get<long long>() < 0) {
        throw MeshError(MeshErrorKind::kMalformed, "triangle indices must be non-negative integers");
      }
      tri[k] = t[k].get<std::size_t>();
    }
    triangles.push_back(tri);
  }
  return Mesh::from_connectivity(std::move(vertices), std::move(triangles));
}

Mesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MeshError(MeshErrorKind::kMalformed, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return mesh_from_json(buffer.str());
}

std::string mesh_to_json(const Mesh& mesh) {
  nlohmann::json doc;
  doc["vertices"] = nlohmann::json::array();
  for (const auto& v : mesh.vertices()) doc["vertices"].push_back({v.x(), v.y()});
  doc["triangles"] = nlohmann::json::array();
  for (const auto& t : mesh.triangles()) doc["triangles"].push_back({t[0], t[1], t[2]});
  return doc.dump();
}

void save_mesh(const Mesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw MeshError(MeshErrorKind::kMalformed, "cannot write " + path.string());
  out << mesh_to_json(mesh) << '\n';
}

}  // namespace curlstokes
