// Load and boundary data for the benchmark problems, manufactured polynomial
// solutions and the singular corner solution on the rotated L-shaped domain.

#ifndef HHO_PROBLEM_HPP
#define HHO_PROBLEM_HPP

#include <functional>
#include <optional>
#include <string>

#include "hho/material.hpp"
#include "hho/poly2.hpp"
#include "hho/projection.hpp"

namespace hho {

/// traction datum: g(x, nu) with the outward unit normal of the side
using TractionFn = std::function<Vec2(const Vec2&, const Vec2&)>;

struct ExactSolution {
  VectorFn u;
  MatrixFn grad_u;
  MatrixFn sigma;
};

struct ProblemData {
  Material material;
  VectorFn f;
  TractionFn g;
  VectorFn u_dirichlet;
  MatrixFn grad_u_dirichlet;  ///< may be empty; enables osc(u_D)
  std::optional<ExactSolution> exact;
  bool singular_at_origin = false;  ///< error quadrature grades toward (0,0)

  bool has_exact() const { return exact.has_value(); }
};

/// Cook's membrane: clamped on the left, unit vertical shear on the right,
/// traction-free elsewhere, no volume load.
ProblemData cooks_problem(const Material& material);

/// Rotated L-shape with the Williams corner singularity as exact solution:
/// f = 0, g = 0 on the two edges at the reentrant corner, u_D = u elsewhere.
ProblemData lshape_problem(const Material& material);

/// Homogeneous data (zero solution).
ProblemData zero_problem(const Material& material);

/// Data manufactured from a polynomial displacement u: f = -div C eps(u),
/// g = C eps(u) nu, u_D = u; requires a constant material.
ProblemData manufactured_from_poly(const VecPoly2& u, const Material& material);

/// Fixed displacement family of total degree d (d = 1: (x,-y), d = 2: (x^2, xy)).
ProblemData manufactured_polynomial(int d, const Material& material);
/// The displacement polynomial used by manufactured_polynomial.
VecPoly2 manufactured_displacement(int d);

/// problem by benchmark id: cooks | lshape | square (degree-(k+1) patch data)
ProblemData benchmark_problem(const std::string& id, const Material& material, int k);

// --- L-shape exact solution -------------------------------------------------

/// exponent of the corner singularity, first root of a sin(2w) + sin(2wa) = 0
inline constexpr double kLshapeAlpha = 0.544483736782;

double lshape_alpha_residual(double alpha);            ///< the transcendental root function
Vec2 lshape_displacement(const Vec2& x, double lambda, double mu);
Mat2 lshape_displacement_gradient(const Vec2& x, double lambda, double mu);  ///< throws at the origin
Mat2 lshape_stress(const Vec2& x, double lambda, double mu);                 ///< throws at the origin

}  // namespace hho

#endif
