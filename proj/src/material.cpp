#include "hho/material.hpp"

#include <stdexcept>

namespace hho {

std::pair<double, double> lame_from_young_poisson(double E, double nu) {
  if (!(E > 0.0)) throw std::invalid_argument("lame_from_young_poisson: E must be positive");
  if (!(nu > -1.0 && nu < 0.5))
    throw std::invalid_argument("lame_from_young_poisson: nu must lie in (-1, 1/2)");
  double lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  double mu = E / (2.0 * (1.0 + nu));
  return {lambda, mu};
}

Material::Material(double lambda, double mu) : lambda_(lambda), mu_(mu) {
  if (!(mu > 0.0) || lambda < 0.0) throw std::invalid_argument("Material: need mu > 0 and lambda >= 0");
}

Material Material::from_young_poisson(double E, double nu) {
  auto [lambda, mu] = lame_from_young_poisson(E, nu);
  return Material(lambda, mu);
}

Material::Material(std::function<std::pair<double, double>(const Vec2&)> fn) : fn_(std::move(fn)) {}

double Material::lambda(const Triangulation& mesh, int element) const {
  return fn_ ? fn_(mesh.geometry(element).centroid).first : lambda_;
}

double Material::mu(const Triangulation& mesh, int element) const {
  return fn_ ? fn_(mesh.geometry(element).centroid).second : mu_;
}

std::pair<double, double> Material::mu_bounds(const Triangulation& mesh) const {
  if (!fn_) return {mu_, mu_};
  double lo = mu(mesh, 0), hi = lo;
  for (int e = 1; e < mesh.n_elements(); e++) {
    double m = mu(mesh, e);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  return {lo, hi};
}

}  // namespace hho
