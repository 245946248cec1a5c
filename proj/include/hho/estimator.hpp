// A posteriori error estimator, data oscillations, exact error norms and
// efficiency indices.

#ifndef HHO_ESTIMATOR_HPP
#define HHO_ESTIMATOR_HPP

#include "hho/postprocess.hpp"

namespace hho {

struct EstimatorOptions {
  int quad_degree = -1;         ///< data quadrature (default 2(k+1)+2)
  bool jump_full = false;       ///< assign interior jumps fully to both elements instead of halving
  int error_quad_degree = 20;   ///< exact-error quadrature
  int grading_levels = 3;       ///< geometric subdivision levels toward a singular vertex
};

struct EstimateBreakdown {
  // per-element squared contributions
  Eigen::VectorXd volume_sq;     ///< || h_T (f + div sigma_h) ||_T^2
  Eigen::VectorXd strain_sq;     ///< mu_T^2 || eps(A u_h) - eps_h u_h ||_T^2
  Eigen::VectorXd jump_sq;       ///< face jumps, halved between neighbours (or full)
  Eigen::VectorXd neumann_sq;    ///< h_F || g - sigma_h nu ||_F^2
  Eigen::VectorXd dirichlet_sq;  ///< h_F || d/ds (u_D - I_D u_D) ||_F^2 share

  double eta_sq = 0.0;        ///< global estimator (faces counted once)
  double eta_tilde_sq = 0.0;  ///< eta^2 + mu_1^2 osc(u_D)^2
  double osc_f = 0.0, osc_g = 0.0, osc_ud = 0.0;
  double mu1 = 0.0;

  // exact errors when the problem provides them (NaN otherwise)
  double err_sigma = std::numeric_limits<double>::quiet_NaN();
  double err_u = std::numeric_limits<double>::quiet_NaN();
  double err_pi_sigma = std::numeric_limits<double>::quiet_NaN();

  double eta() const { return std::sqrt(eta_sq); }
  double eta_tilde() const { return std::sqrt(eta_tilde_sq); }
  double efficiency() const { return eta_tilde() / err_sigma; }
  /// refinement indicators eta^2(T) including the Dirichlet oscillation share
  Eigen::VectorXd indicators_sq() const;
};

/// Evaluate every estimator contribution; Au is the conforming nodal average
/// already converted to polynomial coefficients.
EstimateBreakdown estimate(const Triangulation& mesh, const MeshBases& bases, const ProblemData& problem,
                           const HhoFunction& u, const PiecewisePolyField& sigma_h,
                           const PiecewisePolyField& strain_h, const PiecewisePolyField& Au,
                           const EstimatorOptions& opts = {});

struct ExactErrors {
  double err_sigma = 0.0;     ///< || sigma - sigma_h ||
  double err_u = 0.0;         ///< || Pi_T^k u - u_T ||
  double err_pi_sigma = 0.0;  ///< || (1 - Pi_T^k) sigma ||
};

/// L2 error norms by high-order quadrature, geometrically graded toward the
/// origin for the singular benchmark solution.
ExactErrors exact_errors(const Triangulation& mesh, const MeshBases& bases, const ProblemData& problem,
                         const HhoFunction& u, const PiecewisePolyField& sigma_h,
                         const EstimatorOptions& opts = {});

/// composite quadrature over one element, graded toward a singular vertex
std::vector<QuadRule> element_error_rules(const Triangulation& mesh, int element, int degree, bool singular_origin,
                                          int levels);

}  // namespace hho

#endif
