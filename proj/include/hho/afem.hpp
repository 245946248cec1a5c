// Adaptive solve-estimate-mark-refine loop, uniform-refinement driver and
// empirical convergence rates.

#ifndef HHO_AFEM_HPP
#define HHO_AFEM_HPP

#include "hho/assembly.hpp"
#include "hho/estimator.hpp"

namespace hho {

struct RunConfig {
  std::string benchmark = "lshape";   ///< cooks | lshape | square | mesh file path
  int k = 1;
  SchemeVariant variant = SchemeVariant::Classic;
  double young = 1e5;
  double poisson = 0.4999;
  bool use_lame = false;  ///< take lambda/mu below instead of E/nu
  double lambda = 0.0, mu = 0.0;
  std::string mode = "adaptive";  ///< adaptive | uniform
  double theta = 0.5;             ///< bulk marking parameter
  long max_ndof = 200000;
  int max_levels = 40;
  double max_seconds = 1e30;
  bool jump_full = false;

  Material material() const {
    return use_lame ? Material(lambda, mu) : Material::from_young_poisson(young, poisson);
  }
};

struct LevelRecord {
  int level = 0;
  int n_elements = 0;
  long ndof = 0;       ///< dimension of the discrete space
  long n_solved = 0;   ///< unknowns of the condensed system
  double eta = 0.0;
  double eta_tilde = 0.0;
  double err_sigma = std::numeric_limits<double>::quiet_NaN();
  double err_u = std::numeric_limits<double>::quiet_NaN();
  double err_pi_sigma = std::numeric_limits<double>::quiet_NaN();
  double efficiency = std::numeric_limits<double>::quiet_NaN();
  double osc_f = 0.0, osc_g = 0.0, osc_ud = 0.0;
  double h_max = 0.0;
  bool spd = false;
  double t_solve = 0.0, t_estimate = 0.0, t_refine = 0.0;
};

struct ConvergenceHistory {
  RunConfig config;
  std::vector<LevelRecord> levels;
};

/// Minimal-cardinality set M with sum_M eta^2(T) >= theta * sum eta^2(T);
/// descending indicator order, ties by ascending element id. Empty when all
/// indicators vanish.
std::vector<int> doerfler_mark(const Eigen::VectorXd& indicators_sq, double theta);

/// Per-step convergence rates -log(q_{l+1}/q_l)/log(n_{l+1}/n_l); entries with
/// nonpositive data are NaN.
std::vector<double> rate_steps(const std::vector<double>& quantity, const std::vector<long>& ndof);

/// Least-squares slope of log q against log ndof over the last m levels.
double least_squares_rate(const std::vector<double>& quantity, const std::vector<long>& ndof, int m);

/// Least-squares slope over the levels with ndof >= ndof_last / window
/// (window 16 spans the last two uniform refinements); at least three levels.
double tail_rate(const std::vector<double>& quantity, const std::vector<long>& ndof, double window = 16.0);

/// Optional per-level callback, e.g. to keep the final mesh.
using LevelCallback =
    std::function<void(int level, const Triangulation& mesh, const HhoFunction& u, const EstimateBreakdown& est)>;

ConvergenceHistory run_afem(const RunConfig& config, const LevelCallback& callback = {});

}  // namespace hho

#endif
