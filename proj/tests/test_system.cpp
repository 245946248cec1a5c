#include <doctest.h>

#include "hho/assembly.hpp"
#include "hho/postprocess.hpp"
#include "hho/verification.hpp"

using namespace hho;

TEST_CASE("zero data gives the zero solution") {
  const int k = 1;
  const Material material = Material::from_young_poisson(1e5, 0.3);
  Triangulation mesh = Triangulation::unit_square().uniform_refine();
  MeshBases bases = MeshBases::build(mesh, k + 1, k);
  auto dofmap = std::make_shared<const DofMap>(mesh, k, SchemeVariant::Classic);
  auto ops = build_operators(mesh, bases, *dofmap, material);
  LinearSystem sys = assemble(mesh, bases, ops, dofmap, zero_problem(material));
  CHECK(sys.rhs.norm() == 0.0);
  HhoFunction u = solve(mesh, sys);
  CHECK(u.x.norm() == 0.0);
}

TEST_CASE("patch test: manufactured linear solution is reproduced") {
  const int k = 1;
  const Material material = Material::from_young_poisson(1e5, 0.3);
  Triangulation mesh = Triangulation::unit_square();
  MeshBases bases = MeshBases::build(mesh, k + 1, k);
  auto dofmap = std::make_shared<const DofMap>(mesh, k, SchemeVariant::Classic);
  auto ops = build_operators(mesh, bases, *dofmap, material);
  ProblemData problem = manufactured_polynomial(1, material);
  SolveInfo info;
  HhoFunction u = solve(mesh, assemble(mesh, bases, ops, dofmap, problem), &info);
  CHECK(info.spd);
  CHECK(info.relative_residual < 1e-12);
  HhoFunction iu = interpolate(mesh, bases, dofmap, problem.exact->u);
  CHECK((u.x - iu.x).norm() < 1e-11 * std::max(1.0, iu.x.norm()));
}

TEST_CASE("condensed and uncondensed paths agree") {
  const int k = 2;
  // moderate conditioning so the comparison is not limited by double precision
  const Material material = Material::from_young_poisson(1e5, 0.3);
  Triangulation mesh = Triangulation::cooks_membrane().uniform_refine();
  MeshBases bases = MeshBases::build(mesh, k + 1, k);
  auto dofmap = std::make_shared<const DofMap>(mesh, k, SchemeVariant::Classic);
  auto ops = build_operators(mesh, bases, *dofmap, material);
  ProblemData problem = cooks_problem(material);
  HhoFunction u_cond = solve(mesh, assemble(mesh, bases, ops, dofmap, problem, true));
  HhoFunction u_full = solve(mesh, assemble(mesh, bases, ops, dofmap, problem, false));
  CHECK((u_cond.x - u_full.x).norm() < 1e-10 * u_full.x.norm());
  CHECK(u_full.x.norm() > 0.0);
}

TEST_CASE("discrete stress: exact on the patch test, zero on zero data") {
  const int k = 2;
  const Material material = Material::from_young_poisson(1e5, 0.4999);
  Triangulation mesh = Triangulation::unit_square().uniform_refine();
  MeshBases bases = MeshBases::build(mesh, k + 1, k);
  auto dofmap = std::make_shared<const DofMap>(mesh, k, SchemeVariant::Classic);
  auto ops = build_operators(mesh, bases, *dofmap, material);
  ProblemData problem = manufactured_polynomial(k + 1, material);
  HhoFunction u = solve(mesh, assemble(mesh, bases, ops, dofmap, problem));
  PiecewisePolyField sigma_h = discrete_stress(mesh, ops, material, u);
  ExactErrors errs = exact_errors(mesh, bases, problem, u, sigma_h);
  double scale = 0.0;
  for (int e = 0; e < mesh.n_elements(); e++) scale += mesh.geometry(e).area * sigma_h.coeff[e].squaredNorm();
  CHECK(errs.err_sigma < 1e-9 * std::sqrt(scale));
  CHECK(errs.err_u < 1e-9);
  CHECK(errs.err_pi_sigma < 1e-9 * std::sqrt(scale));

  HhoFunction zero_u(dofmap);
  PiecewisePolyField zero_sigma = discrete_stress(mesh, ops, material, zero_u);
  for (const auto& c : zero_sigma.coeff) CHECK(c.norm() == 0.0);
}

TEST_CASE("stress of a deviatoric solution is independent of lambda") {
  const int k = 2;
  Triangulation mesh = Triangulation::unit_square().uniform_refine();
  // divergence-free displacement from a stream function: u = curl(psi)
  Poly2 psi = Poly2::monomial(3, 0, 0.5) + Poly2::monomial(1, 2, -1.0);
  VecPoly2 u{psi.dy(), psi.dx() * (-1.0)};
  PiecewisePolyField sigmas[2];
  int idx = 0;
  for (double lambda : {0.0, 1e6}) {
    Material material(lambda, 1.0);
    ProblemData problem = manufactured_from_poly(u, material);
    MeshBases bases = MeshBases::build(mesh, k + 1, k);
    auto dofmap = std::make_shared<const DofMap>(mesh, k, SchemeVariant::Classic);
    auto ops = build_operators(mesh, bases, *dofmap, material);
    HhoFunction uh = solve(mesh, assemble(mesh, bases, ops, dofmap, problem));
    sigmas[idx++] = discrete_stress(mesh, ops, material, uh);
  }
  double diff = 0.0, scale = 0.0;
  for (int e = 0; e < mesh.n_elements(); e++) {
    diff += mesh.geometry(e).area * (sigmas[0].coeff[e] - sigmas[1].coeff[e]).squaredNorm();
    scale += mesh.geometry(e).area * sigmas[0].coeff[e].squaredNorm();
  }
  CHECK(std::sqrt(diff) < 1e-8 * std::sqrt(scale));
}

TEST_CASE("potential field: mean-value constraint and patch exactness") {
  const int k = 1;
  const Material material = Material::from_young_poisson(1e5, 0.3);
  Triangulation mesh = Triangulation::unit_square().uniform_refine();
  MeshBases bases = MeshBases::build(mesh, k + 1, k);
  auto dofmap = std::make_shared<const DofMap>(mesh, k, SchemeVariant::Classic);
  auto ops = build_operators(mesh, bases, *dofmap, material);
  ProblemData problem = manufactured_polynomial(2, material);
  HhoFunction u = solve(mesh, assemble(mesh, bases, ops, dofmap, problem));
  PiecewisePolyField Ru = potential_field(mesh, ops, u);
  const int np1 = dim_pk_2d(k + 1);
  for (int e = 0; e < mesh.n_elements(); e++) {
    // mean of R u equals mean of the cell unknown (first coefficient per comp)
    CHECK(Ru.coeff[e](0) == doctest::Approx(u.cell_block(e)(0)).epsilon(1e-11));
    CHECK(Ru.coeff[e](np1) == doctest::Approx(u.cell_block(e)(dim_pk_2d(k))).epsilon(1e-11));
    // patch: R u = u exactly
    Eigen::VectorXd exact = project_cell_vector(mesh, e, bases.cell[e], problem.exact->u, k + 1, 2 * (k + 2));
    CHECK((Ru.coeff[e] - exact).norm() < 1e-9 * std::max(1.0, exact.norm()));
  }
}

TEST_CASE("nodal average leaves a continuous field unchanged and averages jumps") {
  const int k = 1;
  Triangulation mesh = Triangulation::unit_square();
  MeshBases bases = MeshBases::build(mesh, k + 1, k);

  // continuous quadratic matching u_D at the boundary
  VecPoly2 v{Poly2::monomial(2, 0, 1.0) + Poly2::monomial(0, 1, 0.5), Poly2::monomial(1, 1, -1.0)};
  PiecewisePolyField field(mesh, k + 1, 2);
  for (int e = 0; e < mesh.n_elements(); e++) {
    VectorFn fn = [&](const Vec2& x) { return v(x); };
    field.coeff[e] = project_cell_vector(mesh, e, bases.cell[e], fn, k + 1, 2 * (k + 2));
  }
  VectorFn u_d = [&](const Vec2& x) { return v(x); };
  PiecewisePolyField averaged = nodal_average(mesh, bases, field, u_d).to_polyfield(mesh, bases);
  for (int e = 0; e < mesh.n_elements(); e++)
    CHECK((averaged.coeff[e] - field.coeff[e]).norm() < 1e-11 * field.coeff[e].norm());

  // discontinuous: value 0 on element of t_plus, 2 on t_minus -> mean 1 on the shared edge
  int interior = -1;
  for (int s = 0; s < mesh.n_sides(); s++)
    if (!mesh.side(s).is_boundary()) interior = s;
  REQUIRE(interior >= 0);
  PiecewisePolyField jumpy(mesh, k + 1, 2);
  const int np1 = dim_pk_2d(k + 1);
  jumpy.coeff[mesh.side(interior).t_minus](0) = 2.0;  // constant 2 in x-component
  VectorFn zero_d = [](const Vec2&) { return Vec2::Zero(); };
  ConformingField avg = nodal_average(mesh, bases, jumpy, zero_d);
  (void)np1;
  const Side& sd = mesh.side(interior);
  for (std::size_t i = 0; i < avg.node_pos.size(); i++) {
    if (avg.dirichlet_node[i]) {
      CHECK(avg.value[i].norm() == 0.0);
      continue;
    }
    Vec2 p = avg.node_pos[i];
    bool on_diag = std::abs((p - mesh.vertex(sd.a)).x() * (p - mesh.vertex(sd.b)).y() -
                            (p - mesh.vertex(sd.a)).y() * (p - mesh.vertex(sd.b)).x()) < 1e-13;
    if (on_diag) CHECK(avg.value[i].x() == doctest::Approx(1.0));
  }
}

TEST_CASE("nodal average makes the averaging term vanish on the patch test") {
  const int k = 2;
  const Material material = Material::from_young_poisson(1e5, 0.4999);
  Triangulation mesh = Triangulation::unit_square().uniform_refine();
  MeshBases bases = MeshBases::build(mesh, k + 1, k);
  auto dofmap = std::make_shared<const DofMap>(mesh, k, SchemeVariant::Classic);
  auto ops = build_operators(mesh, bases, *dofmap, material);
  ProblemData problem = manufactured_polynomial(k + 1, material);
  HhoFunction u = solve(mesh, assemble(mesh, bases, ops, dofmap, problem));
  PiecewisePolyField Ru = potential_field(mesh, ops, u);
  PiecewisePolyField Au = nodal_average(mesh, bases, Ru, problem.u_dirichlet).to_polyfield(mesh, bases);
  PiecewisePolyField strain = discrete_strain(mesh, ops, u);
  const int nk = dim_pk_2d(k);
  double gap = 0.0, scale = 0.0;
  for (int e = 0; e < mesh.n_elements(); e++) {
    auto p = mesh.element_vertices(e);
    QuadRule rule = triangle_rule(p[0], p[1], p[2], 2 * (k + 1));
    for (std::size_t q = 0; q < rule.size(); q++) {
      Mat2 g = Au.gradient_vector(e, bases.cell[e], rule.points[q]);
      Mat2 eps_a = 0.5 * (g + g.transpose());
      Eigen::RowVectorXd phi = bases.cell[e].values(rule.points[q]).head(nk);
      Eigen::VectorXd sc = strain.coeff[e];
      Mat2 eh;
      eh << phi.dot(sc.segment(0, nk)), phi.dot(sc.segment(nk, nk)), phi.dot(sc.segment(2 * nk, nk)),
          phi.dot(sc.segment(3 * nk, nk));
      gap += rule.weights[q] * (eps_a - eh).squaredNorm();
      scale += rule.weights[q] * eh.squaredNorm();
    }
  }
  CHECK(std::sqrt(gap) < 1e-9 * std::sqrt(scale));
}

TEST_CASE("assembled matrix is symmetric") {
  const int k = 1;
  const Material material = Material::from_young_poisson(1e5, 0.4999);
  Triangulation mesh = Triangulation::lshape_rotated();
  MeshBases bases = MeshBases::build(mesh, k + 1, k);
  auto dofmap = std::make_shared<const DofMap>(mesh, k, SchemeVariant::Classic);
  auto ops = build_operators(mesh, bases, *dofmap, material);
  for (bool condense : {true, false}) {
    LinearSystem sys = assemble(mesh, bases, ops, dofmap, lshape_problem(material), condense);
    Eigen::SparseMatrix<double> diff = Eigen::SparseMatrix<double>(sys.matrix.transpose()) - sys.matrix;
    CHECK(diff.coeffs().cwiseAbs().maxCoeff() < 1e-12 * sys.matrix.coeffs().cwiseAbs().maxCoeff());
  }
}

TEST_CASE("inhomogeneous Dirichlet data enters through the stored face values") {
  const int k = 1;
  const Material material = Material::from_young_poisson(1e5, 0.3);
  Triangulation mesh = Triangulation::unit_square();
  MeshBases bases = MeshBases::build(mesh, k + 1, k);
  auto dofmap = std::make_shared<const DofMap>(mesh, k, SchemeVariant::Classic);
  auto ops = build_operators(mesh, bases, *dofmap, material);
  ProblemData problem = manufactured_polynomial(2, material);
  HhoFunction u = solve(mesh, assemble(mesh, bases, ops, dofmap, problem));
  for (int s = 0; s < mesh.n_sides(); s++) {
    if (!dofmap->is_dirichlet(s)) continue;
    Eigen::VectorXd expected = project_face_vector(mesh, s, bases.face[s], problem.u_dirichlet, k, 2 * (k + 1) + 2);
    CHECK((u.face_block(s) - expected).norm() < 1e-12 * std::max(1.0, expected.norm()));
  }
}
