#include "hho/afem.hpp"

#include <chrono>
#include <numeric>

namespace hho {

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<int> doerfler_mark(const Eigen::VectorXd& indicators_sq, double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("doerfler_mark: theta must be in (0,1]");
  const int n = static_cast<int>(indicators_sq.size());
  const double total = indicators_sq.sum();
  if (total <= 0.0) return {};
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (indicators_sq(a) != indicators_sq(b)) return indicators_sq(a) > indicators_sq(b);
    return a < b;
  });
  std::vector<int> marked;
  double acc = 0.0;
  for (int id : order) {
    marked.push_back(id);
    acc += indicators_sq(id);
    if (acc >= theta * total) break;
  }
  return marked;
}

std::vector<double> rate_steps(const std::vector<double>& q, const std::vector<long>& ndof) {
  std::vector<double> rates;
  for (std::size_t l = 0; l + 1 < q.size(); l++) {
    if (q[l] <= 0.0 || q[l + 1] <= 0.0 || ndof[l + 1] <= ndof[l]) {
      rates.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    rates.push_back(-std::log(q[l + 1] / q[l]) / std::log(static_cast<double>(ndof[l + 1]) / ndof[l]));
  }
  return rates;
}

double least_squares_rate(const std::vector<double>& q, const std::vector<long>& ndof, int m) {
  const int n = static_cast<int>(q.size());
  m = std::min(m, n);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  for (int i = n - m; i < n; i++) {
    if (q[i] <= 0.0) continue;
    double x = std::log(static_cast<double>(ndof[i])), y = std::log(q[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    used++;
  }
  if (used < 2) return std::numeric_limits<double>::quiet_NaN();
  return -(used * sxy - sx * sy) / (used * sxx - sx * sx);
}

double tail_rate(const std::vector<double>& q, const std::vector<long>& ndof, double window) {
  const int n = static_cast<int>(q.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double cutoff = static_cast<double>(ndof.back()) / window;
  int m = 0;
  for (int i = n - 1; i >= 0; i--) {
    if (ndof[i] < cutoff && m >= 3) break;
    m++;
  }
  return least_squares_rate(q, ndof, std::max(m, std::min(3, n)));
}

ConvergenceHistory run_afem(const RunConfig& config, const LevelCallback& callback) {
  ConvergenceHistory history;
  history.config = config;
  const auto t0 = std::chrono::steady_clock::now();

  Material material = config.material();
  const bool named = config.benchmark == "square" || config.benchmark == "unit_square" ||
                     config.benchmark == "cooks" || config.benchmark == "cook" || config.benchmark == "lshape";
  // file meshes run the polynomial patch problem
  ProblemData problem = named ? benchmark_problem(config.benchmark, material, config.k)
                              : manufactured_polynomial(config.k + 1, material);
  Triangulation mesh = Triangulation::named(config.benchmark);

  for (int level = 0; level < config.max_levels; level++) {
    auto t_level = std::chrono::steady_clock::now();
    auto dofmap = std::make_shared<const DofMap>(mesh, config.k, config.variant);

    MeshBases bases = MeshBases::build(mesh, config.k + 1, config.k);
    auto ops = build_operators(mesh, bases, *dofmap, material);
    LinearSystem sys = assemble(mesh, bases, ops, dofmap, problem);
    SolveInfo sinfo;
    HhoFunction u = solve(mesh, sys, &sinfo);
    double t_solve = seconds_since(t_level);

    auto t_est = std::chrono::steady_clock::now();
    PiecewisePolyField sigma = discrete_stress(mesh, ops, material, u);
    PiecewisePolyField strain = discrete_strain(mesh, ops, u);
    PiecewisePolyField Ru = potential_field(mesh, ops, u);
    PiecewisePolyField Au = nodal_average(mesh, bases, Ru, problem.u_dirichlet).to_polyfield(mesh, bases);
    EstimatorOptions eopts;
    eopts.jump_full = config.jump_full;
    EstimateBreakdown est = estimate(mesh, bases, problem, u, sigma, strain, Au, eopts);
    double t_estimate = seconds_since(t_est);

    LevelRecord rec;
    rec.level = level;
    rec.n_elements = mesh.n_elements();
    rec.ndof = dofmap->n_dofs();
    rec.n_solved = sinfo.n_unknowns;
    rec.eta = est.eta();
    rec.eta_tilde = est.eta_tilde();
    rec.err_sigma = est.err_sigma;
    rec.err_u = est.err_u;
    rec.err_pi_sigma = est.err_pi_sigma;
    rec.efficiency = problem.has_exact() ? est.efficiency() : std::numeric_limits<double>::quiet_NaN();
    rec.osc_f = est.osc_f;
    rec.osc_g = est.osc_g;
    rec.osc_ud = est.osc_ud;
    rec.h_max = mesh.h_max();
    rec.spd = sinfo.spd;
    rec.t_solve = t_solve;
    rec.t_estimate = t_estimate;

    if (callback) callback(level, mesh, u, est);

    // stop before refining when a budget is exhausted or the estimator is
    // negligible relative to the discrete stress scale
    bool last = level + 1 >= config.max_levels || dofmap->n_dofs() >= config.max_ndof ||
                seconds_since(t0) > config.max_seconds;
    double sigma_scale = 0.0;
    for (int e = 0; e < mesh.n_elements(); e++)
      sigma_scale += mesh.geometry(e).area * sigma.coeff[e].squaredNorm();
    Eigen::VectorXd indicators = est.indicators_sq();
    if (indicators.sum() <= 0.0 || est.eta_tilde() <= 1e-8 * std::sqrt(sigma_scale)) last = true;

    if (!last) {
      auto t_ref = std::chrono::steady_clock::now();
      if (config.mode == "uniform") {
        mesh = mesh.uniform_refine();
      } else {
        std::vector<int> marked = doerfler_mark(indicators, config.theta);
        if (marked.empty()) last = true;
        if (!last) mesh = mesh.refine_nvb(marked);
      }
      rec.t_refine = seconds_since(t_ref);
    }
    history.levels.push_back(rec);
    if (last) break;
  }
  return history;
}

}  // namespace hho
