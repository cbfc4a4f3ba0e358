#include <algorithm>
#include <cmath>

#include <Eigen/SparseCholesky>

#include "curlstokes/forms.hpp"
#include "curlstokes/quadrature.hpp"
#include "curlstokes/spaces.hpp"

namespace curlstokes {

double grad_inclusion_check(const EdgeSpace& velocity, const NodalSpace& pressure) {
  const Mesh& mesh = velocity.mesh();
  const SparseOperator mass = assemble_mass(velocity);
  const SparseOperator coupling = assemble_b(velocity, pressure);
  Eigen::SimplicialLDLT<SparseMatrix> factor(mass.matrix());
  if (factor.info() != Eigen::Success) throw std::runtime_error("velocity mass matrix is singular");
  const Eigen::MatrixXd projection = factor.solve(Eigen::MatrixXd(coupling.matrix()));

  const TriangleRule& rule = triangle_rule(volume_degree(velocity.order()));
  double worst = 0.0;
  EdgeBasisValues vb{};
  NodalBasisValues qb{};
  for (Eigen::Index j = 0; j < projection.cols(); ++j) {
    double sq = 0.0;
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
      const TriangleGeometry geo = triangle_geometry(mesh, t);
      const auto vdofs = velocity.local_dofs(t);
      const auto qdofs = pressure.local_dofs(t);
      const auto it = std::find(qdofs.begin(), qdofs.end(), j);
      for (std::size_t q = 0; q < rule.size(); ++q) {
        Point diff = Point::Zero();
        if (it != qdofs.end()) {
          pressure.evaluate(geo, rule.points[q], qb);
          diff = qb.gradient[static_cast<std::size_t>(it - qdofs.begin())];
        }
        velocity.evaluate(t, geo, rule.points[q], vb);
        for (std::size_t i = 0; i < vdofs.size(); ++i) {
          if (vdofs[i] >= 0) diff -= projection(vdofs[i], j) * vb.value[i];
        }
        sq += rule.weights[q] * 2.0 * geo.area * diff.squaredNorm();
      }
    }
    worst = std::max(worst, std::sqrt(sq));
  }
  return worst;
}

}  // namespace curlstokes
