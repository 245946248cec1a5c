// Isotropic elasticity tensor and Lame parameters.

#ifndef HHO_MATERIAL_HPP
#define HHO_MATERIAL_HPP

#include <Eigen/Dense>
#include <functional>

#include "hho/mesh.hpp"

namespace hho {

using Mat2 = Eigen::Matrix2d;

/// C tau = 2 mu tau + lambda tr(tau) I
inline Mat2 apply_elasticity_tensor(const Mat2& tau, double lambda, double mu) {
  return 2.0 * mu * tau + lambda * tau.trace() * Mat2::Identity();
}

/// inverse of the elasticity tensor (n = 2)
inline Mat2 apply_compliance_tensor(const Mat2& sigma, double lambda, double mu) {
  return sigma / (2.0 * mu) - (lambda * sigma.trace() / (2.0 * mu * (2.0 * mu + 2.0 * lambda))) * Mat2::Identity();
}

/// lambda = E nu / ((1+nu)(1-2nu)), mu = E / (2(1+nu)); requires -1 < nu < 1/2
std::pair<double, double> lame_from_young_poisson(double E, double nu);

/// Lame parameters, constant or depending on the element (evaluated at the
/// centroid so values are inherited naturally under refinement).
class Material {
 public:
  Material(double lambda, double mu);
  static Material from_young_poisson(double E, double nu);
  /// spatially varying parameters: fn(centroid) = (lambda, mu)
  explicit Material(std::function<std::pair<double, double>(const Vec2&)> fn);

  double lambda(const Triangulation& mesh, int element) const;
  double mu(const Triangulation& mesh, int element) const;
  /// min/max of mu over the mesh
  std::pair<double, double> mu_bounds(const Triangulation& mesh) const;
  bool is_constant() const { return !fn_; }
  double lambda_const() const { return lambda_; }
  double mu_const() const { return mu_; }

 private:
  double lambda_ = 0.0, mu_ = 0.0;
  std::function<std::pair<double, double>(const Vec2&)> fn_;
};

}  // namespace hho

#endif
