#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curlstokes/mesh.hpp"
#include "curlstokes/spaces.hpp"

namespace curlstokes {

/// Raised when the L-shape pressure or a gradient is requested at the
/// re-entrant corner.
class SingularPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Analytic Stokes solution with its data: f = ∇×(∇×u) + ∇p, ∇·u = 0 and
/// g = u on the boundary.
struct ManufacturedCase {
  std::string name;
  std::function<Mesh(int)> domain;             // mesh for a subdivision count
  std::function<bool(const Point&)> contains;  // closed domain test
  int base_subdivision = 1;
  int betti_number = 0;
  VectorFunction u;
  ScalarFunction curl_u;
  ScalarFunction p;
  VectorFunction grad_p;
  VectorFunction f;
  VectorFunction g;
  std::string regularity;
};

ManufacturedCase star_case();
ManufacturedCase hole_case();
ManufacturedCase lshape_case();
ManufacturedCase linear_case();

/// star, hole, lshape, linear. Throws std::invalid_argument otherwise.
ManufacturedCase case_by_name(const std::string& name);
std::vector<std::string> case_names();

/// Exponent of the corner singularity and the opening angle of the L-shape.
inline constexpr double kLShapeLambda = 0.54448373678246;
inline constexpr double kLShapeOmega = 4.71238898038468985769;  // 3π/2

struct CaseCheck {
  double max_divergence = 0.0;         // |∇·u| by finite differences
  double max_momentum_residual = 0.0;  // |f - ∇×curl u - ∇p|, relative to max(1, |f|, |∇p|)
  double max_curl_mismatch = 0.0;      // |curl_u - (∂ₓu_y - ∂_y u_x)|, same scaling
  double max_gradient_mismatch = 0.0;  // |grad_p - ∇p|, same scaling
  int samples = 0;
};

/// Checks the analytic callbacks at random interior points with fourth-order
/// central differences. Points closer than `exclusion` to the re-entrant
/// corner are skipped.
CaseCheck check_case(const ManufacturedCase& c, int samples = 50, std::uint64_t seed = 1,
                     double exclusion = 0.25);

}  // namespace curlstokes
