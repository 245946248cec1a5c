#include <doctest.h>

#include "hho/assembly.hpp"
#include "hho/estimator.hpp"
#include "hho/verification.hpp"

using namespace hho;

namespace {

struct Solved {
  Triangulation mesh;
  MeshBases bases;
  std::shared_ptr<const DofMap> dofmap;
  std::vector<ElementOperators> ops;
  HhoFunction u;
  PiecewisePolyField sigma, strain, Au;

  Solved(Triangulation m, const ProblemData& problem, int k, SchemeVariant variant)
      : mesh(std::move(m)),
        bases(MeshBases::build(mesh, k + 1, k)),
        dofmap(std::make_shared<const DofMap>(mesh, k, variant)),
        ops(build_operators(mesh, bases, *dofmap, problem.material)),
        u(solve(mesh, assemble(mesh, bases, ops, dofmap, problem))),
        sigma(discrete_stress(mesh, ops, problem.material, u)),
        strain(discrete_strain(mesh, ops, u)),
        Au(nodal_average(mesh, bases, potential_field(mesh, ops, u), problem.u_dirichlet).to_polyfield(mesh, bases)) {}
};

}  // namespace

TEST_CASE("estimator vanishes on the patch test") {
  const int k = 2;
  const Material material = Material::from_young_poisson(1e5, 0.4999);
  ProblemData problem = manufactured_polynomial(k + 1, material);
  Solved s(Triangulation::unit_square().uniform_refine(), problem, k, SchemeVariant::Classic);
  EstimateBreakdown est = estimate(s.mesh, s.bases, problem, s.u, s.sigma, s.strain, s.Au);
  double scale = 0.0;
  for (int e = 0; e < s.mesh.n_elements(); e++) scale += s.mesh.geometry(e).area * s.sigma.coeff[e].squaredNorm();
  CHECK(est.eta_tilde() < 1e-8 * std::sqrt(scale));
  CHECK(est.volume_sq.maxCoeff() < 1e-16 * scale);
  CHECK(est.strain_sq.maxCoeff() < 1e-16 * scale);
  CHECK(est.jump_sq.maxCoeff() < 1e-16 * scale);
  CHECK(est.neumann_sq.maxCoeff() == 0.0);  // no Neumann faces on the square
  CHECK(est.osc_f < 1e-10 * std::sqrt(scale));
  CHECK(est.osc_ud < 1e-10);
}

TEST_CASE("single-element closed form of the Neumann term") {
  // constant discrete stress, f = 0: the volume term vanishes and the Neumann
  // term is h_F |F| |g - sigma nu|^2 for constant data
  const int k = 1;
  const Material material(1.0, 1.0);
  Triangulation mesh = Triangulation::cooks_membrane();
  MeshBases bases = MeshBases::build(mesh, k + 1, k);
  auto dofmap = std::make_shared<const DofMap>(mesh, k, SchemeVariant::Classic);

  HhoFunction u(dofmap);  // zero discrete solution -> sigma_h = 0
  auto ops = build_operators(mesh, bases, *dofmap, material);
  PiecewisePolyField sigma = discrete_stress(mesh, ops, material, u);
  PiecewisePolyField strain = discrete_strain(mesh, ops, u);
  PiecewisePolyField Au = nodal_average(mesh, bases, potential_field(mesh, ops, u),
                                        [](const Vec2&) { return Vec2::Zero(); })
                              .to_polyfield(mesh, bases);
  ProblemData problem = cooks_problem(material);
  EstimateBreakdown est = estimate(mesh, bases, problem, u, sigma, strain, Au);
  CHECK(est.volume_sq.maxCoeff() == 0.0);
  CHECK(est.strain_sq.maxCoeff() == 0.0);
  CHECK(est.jump_sq.maxCoeff() == 0.0);
  // g = (0,1) on the sheared side of length 16: expected h_F |F| |g|^2 = 16^2
  double expected = 16.0 * 16.0;
  CHECK(est.neumann_sq.sum() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("face-loop and halved element-loop jump terms agree") {
  const int k = 1;
  const Material material = Material::from_young_poisson(1e5, 0.3);
  ProblemData problem = cooks_problem(material);
  Solved s(Triangulation::cooks_membrane().uniform_refine().uniform_refine(), problem, k, SchemeVariant::Classic);

  EstimatorOptions halved, full;
  full.jump_full = true;
  EstimateBreakdown a = estimate(s.mesh, s.bases, problem, s.u, s.sigma, s.strain, s.Au, halved);
  EstimateBreakdown b = estimate(s.mesh, s.bases, problem, s.u, s.sigma, s.strain, s.Au, full);
  // the global total counts each face once in both conventions
  CHECK(a.eta_sq == doctest::Approx(b.eta_sq).epsilon(1e-14));
  // full assignment doubles the per-element sum of the jump part exactly
  CHECK(b.jump_sq.sum() == doctest::Approx(2.0 * a.jump_sq.sum()).epsilon(1e-14));
  // and the halved convention makes the indicators sum to the global total
  CHECK(a.indicators_sq().sum() ==
        doctest::Approx(a.eta_sq + a.mu1 * a.mu1 * a.dirichlet_sq.sum()).epsilon(1e-13));
}

TEST_CASE("Dirichlet oscillation vanishes for edgewise polynomial data") {
  const int k = 1;
  const Material material = Material::from_young_poisson(1e5, 0.3);
  // u_D of degree 2 = k + 1 is reproduced by the nodal interpolation
  ProblemData problem = manufactured_polynomial(2, material);
  Solved s(Triangulation::unit_square().uniform_refine(), problem, k, SchemeVariant::Classic);
  EstimateBreakdown est = estimate(s.mesh, s.bases, problem, s.u, s.sigma, s.strain, s.Au);
  CHECK(est.osc_ud < 1e-12);
}

TEST_CASE("estimator is reliable and efficient along an adaptive run") {
  RunConfig config;
  config.benchmark = "lshape";
  config.k = 1;
  config.max_ndof = 8000;
  ConvergenceHistory history = run_afem(config);
  REQUIRE(history.levels.size() > 5);
  double first_ratio = 0.0, last_ratio = 0.0;
  for (std::size_t l = 0; l < history.levels.size(); l++) {
    const auto& rec = history.levels[l];
    CHECK(rec.efficiency > 0.4);
    CHECK(rec.efficiency < 2.5);
    double ratio = rec.err_sigma / rec.eta_tilde;
    if (l < history.levels.size() / 2) first_ratio = std::max(first_ratio, ratio);
    last_ratio = std::max(last_ratio, ratio);
  }
  // reliability ratio does not blow up under refinement
  CHECK(last_ratio <= 1.3 * first_ratio);
}

TEST_CASE("efficiency bands at moderate and near-incompressible Poisson ratios overlap") {
  auto run = [](double nu) {
    RunConfig config;
    config.benchmark = "lshape";
    config.k = 2;
    config.poisson = nu;
    config.max_ndof = 6000;
    ConvergenceHistory h = run_afem(config);
    double lo = 1e300, hi = 0.0;
    for (const auto& rec : h.levels) {
      lo = std::min(lo, rec.efficiency);
      hi = std::max(hi, rec.efficiency);
    }
    return std::make_pair(lo, hi);
  };
  auto [lo1, hi1] = run(0.4999);
  auto [lo2, hi2] = run(0.3);
  CHECK(hi1 / hi2 < 4.0);
  CHECK(hi2 / hi1 < 4.0);
  CHECK(std::max(lo1, lo2) <= std::min(hi1, hi2));  // bands overlap
}

TEST_CASE("exact errors: projection error decreases under refinement at the limited rate") {
  const Material material = Material::from_young_poisson(1e5, 0.4999);
  ProblemData problem = lshape_problem(material);
  Triangulation mesh = Triangulation::lshape_rotated();
  std::vector<double> pi_err;
  std::vector<long> ndof;
  for (int level = 0; level < 4; level++) {
    const int k = 1;
    Solved s(mesh, problem, k, SchemeVariant::Classic);
    ExactErrors errs = exact_errors(s.mesh, s.bases, problem, s.u, s.sigma);
    pi_err.push_back(errs.err_pi_sigma);
    ndof.push_back(s.dofmap->n_dofs());
    mesh = mesh.uniform_refine();
  }
  double rate = least_squares_rate(pi_err, ndof, 3);
  CHECK(rate > 0.15);
  CHECK(rate < 0.40);  // sigma-regularity-limited rate around alpha/2
}
