#include "hho/verification.hpp"

#include <iostream>
#include <random>

namespace hho {

namespace {

constexpr double kTiny = 1e-300;

Mat2 poly_grad(const std::array<std::array<Poly2, 2>, 2>& g, const Vec2& x) {
  Mat2 m;
  m << g[0][0](x), g[0][1](x), g[1][0](x), g[1][1](x);
  return m;
}

double polyfield_norm_sq(const Triangulation& mesh, const PiecewisePolyField& f) {
  double s = 0.0;
  for (int e = 0; e < mesh.n_elements(); e++) s += mesh.geometry(e).area * f.coeff[e].squaredNorm();
  return s;
}

// || sigma ||_{L2} of an exact matrix field by quadrature
double matrix_field_norm(const Triangulation& mesh, const MatrixFn& sigma, int quad_degree) {
  double s = 0.0;
  for (int e = 0; e < mesh.n_elements(); e++) {
    auto p = mesh.element_vertices(e);
    QuadRule rule = triangle_rule(p[0], p[1], p[2], quad_degree);
    for (std::size_t q = 0; q < rule.size(); q++) s += rule.weights[q] * sigma(rule.points[q]).squaredNorm();
  }
  return std::sqrt(s);
}

}  // namespace

VecPoly2 random_polynomial(int degree, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  VecPoly2 u;
  for (int a = 0; a <= degree; a++)
    for (int b = 0; a + b <= degree; b++) {
      u.x = u.x + Poly2::monomial(a, b, dist(rng));
      u.y = u.y + Poly2::monomial(a, b, dist(rng));
    }
  return u;
}

HhoFunction interpolate_polyfield(const Triangulation& mesh, const MeshBases& bases,
                                  std::shared_ptr<const DofMap> dofmap, const PiecewisePolyField& v) {
  const int k = dofmap->k();
  const int qd = 2 * std::max(v.degree, dofmap->cell_degree()) + 2;
  HhoFunction fn(dofmap);
  for (int e = 0; e < mesh.n_elements(); e++) {
    VectorFn val = [&](const Vec2& x) { return v.value_vector(e, bases.cell[e], x); };
    fn.cell_block(e) = project_cell_vector(mesh, e, bases.cell[e], val, dofmap->cell_degree(), qd);
  }
  for (int s = 0; s < mesh.n_sides(); s++) {
    const int e = mesh.side(s).t_plus;
    VectorFn val = [&](const Vec2& x) { return v.value_vector(e, bases.cell[e], x); };
    fn.set_face_block(s, project_face_vector(mesh, s, bases.face[s], val, k, qd));
  }
  return fn;
}

PiecewisePolyField random_conforming_field(const Triangulation& mesh, const MeshBases& bases, int degree,
                                           unsigned seed) {
  ConformingField field = conforming_layout(mesh, degree);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (std::size_t i = 0; i < field.value.size(); i++) {
    field.value[i] = Vec2(dist(rng), dist(rng));
    if (field.dirichlet_node[i]) field.value[i].setZero();
  }
  return field.to_polyfield(mesh, bases);
}

std::vector<CheckResult> verify_operators(const std::vector<int>& ks) {
  std::vector<CheckResult> results;
  const Material material(1.3, 0.7);
  const std::vector<std::pair<std::string, Triangulation>> meshes = {
      {"square", Triangulation::unit_square().uniform_refine()},
      {"cooks", Triangulation::cooks_membrane()},
      {"lshape", Triangulation::lshape_rotated()}};

  for (int k : ks) {
    double commute = 0.0, commute_c = 0.0, resid_var = 0.0, resid_mom = 0.0, resid_samples = 0.0, ortho = 0.0;
    for (const auto& [mesh_name, mesh] : meshes) {
      (void)mesh_name;
      MeshBases bases = MeshBases::build(mesh, k + 1, k);
      auto dofmap = std::make_shared<const DofMap>(mesh, k, SchemeVariant::Classic);
      auto ops = build_operators(mesh, bases, *dofmap, material);
      const int nk = dim_pk_2d(k);

      // commuting diagram with a degree k+2 polynomial
      VecPoly2 v = random_polynomial(k + 2, 17 + k);
      auto gv = v.grad();
      VectorFn vfn = [&](const Vec2& x) { return v(x); };
      HhoFunction iv = interpolate(mesh, bases, dofmap, vfn, 2 * (k + 3));
      MatrixFn eps_v = [&](const Vec2& x) {
        Mat2 g = poly_grad(gv, x);
        return Mat2(0.5 * (g + g.transpose()));
      };
      MatrixFn c_eps_v = [&](const Vec2& x) {
        return apply_elasticity_tensor(eps_v(x), material.lambda_const(), material.mu_const());
      };
      double num = 0.0, den = 0.0, num_c = 0.0, den_c = 0.0;
      for (int e = 0; e < mesh.n_elements(); e++) {
        Eigen::VectorXd eps_h = ops[e].Eps * iv.local_dofs(mesh, e);
        Eigen::VectorXd proj = project_cell_matrix(mesh, e, bases.cell[e], eps_v, k, 2 * (k + 3));
        num += mesh.geometry(e).area * (eps_h - proj).squaredNorm();
        den += mesh.geometry(e).area * proj.squaredNorm();
        // C-weighted variant with piecewise constant parameters
        Eigen::VectorXd c_eps_h(4 * nk);
        Eigen::VectorXd tr = eps_h.segment(0, nk) + eps_h.segment(3 * nk, nk);
        const double lam = material.lambda_const(), mu = material.mu_const();
        c_eps_h.segment(0, nk) = 2.0 * mu * eps_h.segment(0, nk) + lam * tr;
        c_eps_h.segment(nk, nk) = 2.0 * mu * eps_h.segment(nk, nk);
        c_eps_h.segment(2 * nk, nk) = 2.0 * mu * eps_h.segment(2 * nk, nk);
        c_eps_h.segment(3 * nk, nk) = 2.0 * mu * eps_h.segment(3 * nk, nk) + lam * tr;
        Eigen::VectorXd proj_c = project_cell_matrix(mesh, e, bases.cell[e], c_eps_v, k, 2 * (k + 3));
        num_c += mesh.geometry(e).area * (c_eps_h - proj_c).squaredNorm();
        den_c += mesh.geometry(e).area * proj_c.squaredNorm();
      }
      commute = std::max(commute, std::sqrt(num / std::max(den, kTiny)));
      commute_c = std::max(commute_c, std::sqrt(num_c / std::max(den_c, kTiny)));

      // variational residual and moment conditions of the reconstruction
      std::mt19937_64 rng(99 + k);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      for (int e = 0; e < mesh.n_elements(); e++) {
        ElementOperatorBuilder builder(mesh, e, bases, ops[e].layout);
        const Eigen::MatrixXd& K = builder.strain_stiffness();
        const Eigen::MatrixXd& B = builder.potential_rhs();
        Eigen::MatrixXd res_var = K * ops[e].R - B;
        Eigen::MatrixXd res_mom = builder.constraints() * ops[e].R - builder.constraint_rhs();
        resid_var = std::max(resid_var, res_var.norm() / std::max(B.norm(), kTiny));
        resid_mom = std::max(resid_mom, res_mom.norm() / std::max(builder.constraint_rhs().norm(), kTiny));
        for (int s = 0; s < 100; s++) {
          Eigen::VectorXd vh(ops[e].layout.n_total());
          for (int i = 0; i < vh.size(); i++) vh(i) = dist(rng);
          Eigen::VectorXd lhs = K * (ops[e].R * vh);
          Eigen::VectorXd rhs = B * vh;
          resid_samples = std::max(resid_samples, (lhs - rhs).norm() / std::max(rhs.norm(), kTiny));
        }
      }

      // best-approximation orthogonality of the potential reconstruction
      VecPoly2 w = random_polynomial(k + 3, 23 + k);
      auto gw = w.grad();
      VectorFn wfn = [&](const Vec2& x) { return w(x); };
      HhoFunction iw = interpolate(mesh, bases, dofmap, wfn, 2 * (k + 3));
      for (int e = 0; e < mesh.n_elements(); e++) {
        ElementOperatorBuilder builder(mesh, e, bases, ops[e].layout);
        const Eigen::MatrixXd& K = builder.strain_stiffness();
        const int np1 = dim_pk_2d(k + 1);
        Eigen::VectorXd rw = ops[e].R * iw.local_dofs(mesh, e);
        auto p = mesh.element_vertices(e);
        QuadRule rule = triangle_rule(p[0], p[1], p[2], 2 * (k + 3));
        Eigen::VectorXd t = Eigen::VectorXd::Zero(2 * np1);
        double eps_w_sq = 0.0;
        for (std::size_t q = 0; q < rule.size(); q++) {
          Mat2 g = poly_grad(gw, rule.points[q]);
          Mat2 eps = 0.5 * (g + g.transpose());
          eps_w_sq += rule.weights[q] * eps.squaredNorm();
          Eigen::MatrixXd grad = bases.cell[e].gradients(rule.points[q]).topRows(np1);
          // contraction of a symmetric matrix with eps(phi_i e_c)
          t.segment(0, np1) += rule.weights[q] * (grad * eps.row(0).transpose());
          t.segment(np1, np1) += rule.weights[q] * (grad * eps.row(1).transpose());
        }
        Eigen::VectorXd q_res = t - K * rw;
        double scale = std::sqrt(eps_w_sq) * std::sqrt(K.diagonal().maxCoeff());
        ortho = std::max(ortho, q_res.cwiseAbs().maxCoeff() / std::max(scale, kTiny));
      }
    }
    char name[120];
    std::snprintf(name, sizeof(name), "commuting diagram (k=%d, deg k+2)", k);
    results.push_back({name, commute, 1e-11, commute <= 1e-11, ""});
    std::snprintf(name, sizeof(name), "C-weighted commuting diagram (k=%d)", k);
    results.push_back({name, commute_c, 1e-11, commute_c <= 1e-11, ""});
    std::snprintf(name, sizeof(name), "reconstruction variational residual (k=%d)", k);
    results.push_back({name, std::max(resid_var, resid_samples), 1e-11, std::max(resid_var, resid_samples) <= 1e-11, ""});
    std::snprintf(name, sizeof(name), "reconstruction moment conditions (k=%d)", k);
    results.push_back({name, resid_mom, 1e-11, resid_mom <= 1e-11, ""});
    std::snprintf(name, sizeof(name), "strain best-approximation orthogonality (k=%d)", k);
    results.push_back({name, ortho, 1e-10, ortho <= 1e-10, ""});
  }
  return results;
}

std::vector<CheckResult> verify_stabilization(const std::vector<int>& ks) {
  std::vector<CheckResult> results;
  const Material material(1.0, 1.0);

  for (int k : ks) {
    // kernel on conforming P_{k+1} functions, all variants
    for (SchemeVariant variant : {SchemeVariant::Classic, SchemeVariant::Tilde, SchemeVariant::Hdg}) {
      double worst = 0.0;
      for (const Triangulation& mesh :
           {Triangulation::unit_square().uniform_refine(), Triangulation::lshape_rotated()}) {
        MeshBases bases = MeshBases::build(mesh, k + 1, k);
        auto dofmap = std::make_shared<const DofMap>(mesh, k, variant);
        auto ops = build_operators(mesh, bases, *dofmap, material);
        PiecewisePolyField v = random_conforming_field(mesh, bases, k + 1, 7 + k);
        HhoFunction vh = interpolate_polyfield(mesh, bases, dofmap, v);
        HhoNorms norms = hho_norms(mesh, bases, ops, material, vh);
        double sq = norms.seminorm_s_hat * norms.seminorm_s_hat / std::max(norms.norm_h * norms.norm_h, kTiny);
        worst = std::max(worst, sq);
      }
      char name[120];
      std::snprintf(name, sizeof(name), "stabilization kernel, %s (k=%d)", to_string(variant).c_str(), k);
      results.push_back({name, worst, 1e-11, worst <= 1e-11, "s(Iv,Iv)/||v||_h^2 on conforming v"});
    }

    // classic/alternative equivalence band across uniform refinements
    Triangulation mesh = Triangulation::unit_square();
    auto dofmap_proto = std::make_shared<const DofMap>(mesh, k, SchemeVariant::Classic);
    std::vector<double> lo_per_level, hi_per_level;
    int expected_kernel = 2 * dim_pk_2d(k + 1);
    bool kernel_dim_ok = true;
    for (int level = 0; level < 4; level++) {
      MeshBases bases = MeshBases::build(mesh, k + 1, k);
      auto dofmap = std::make_shared<const DofMap>(mesh, k, SchemeVariant::Classic);
      double lo = 1e300, hi = 0.0;
      for (int e = 0; e < mesh.n_elements(); e++) {
        LocalDofLayout layout = dofmap->layout(mesh, e);
        ElementOperatorBuilder builder(mesh, e, bases, layout);
        Eigen::MatrixXd R = builder.potential_reconstruction();
        Eigen::MatrixXd S = builder.stabilization(R, SchemeVariant::Classic);
        Eigen::MatrixXd St = builder.stabilization(R, SchemeVariant::Tilde);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S);
        const double lmax = eig.eigenvalues().maxCoeff();
        std::vector<int> keep;
        for (int i = 0; i < eig.eigenvalues().size(); i++)
          if (eig.eigenvalues()(i) > 1e-8 * lmax) keep.push_back(i);
        if (static_cast<int>(layout.n_total() - keep.size()) != expected_kernel) kernel_dim_ok = false;
        Eigen::MatrixXd W(layout.n_total(), keep.size());
        for (std::size_t i = 0; i < keep.size(); i++) W.col(i) = eig.eigenvectors().col(keep[i]);
        Eigen::MatrixXd A = W.transpose() * St * W;
        Eigen::MatrixXd Bm = W.transpose() * S * W;
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> geig(A, Bm);
        lo = std::min(lo, geig.eigenvalues().minCoeff());
        hi = std::max(hi, geig.eigenvalues().maxCoeff());
      }
      lo_per_level.push_back(lo);
      hi_per_level.push_back(hi);
      if (level < 3) mesh = mesh.uniform_refine();
    }
    double lo_ratio = *std::max_element(lo_per_level.begin(), lo_per_level.end()) /
                      *std::min_element(lo_per_level.begin(), lo_per_level.end());
    double hi_ratio = *std::max_element(hi_per_level.begin(), hi_per_level.end()) /
                      *std::min_element(hi_per_level.begin(), hi_per_level.end());
    char name[160], note[160];
    std::snprintf(note, sizeof(note), "band [%.3g, %.3g] at the finest level", lo_per_level.back(),
                  hi_per_level.back());
    std::snprintf(name, sizeof(name), "stabilization equivalence band stability (k=%d)", k);
    double value = std::max(lo_ratio, hi_ratio);
    results.push_back({name, value, 2.0, value <= 2.0 && kernel_dim_ok, note});
  }
  return results;
}

std::vector<CheckResult> verify_patch(const std::vector<int>& ks) {
  std::vector<CheckResult> results;
  const Material material = Material::from_young_poisson(1e5, 0.4999);
  Triangulation mesh = Triangulation::unit_square().uniform_refine().uniform_refine();

  for (int k : ks) {
    for (SchemeVariant variant : {SchemeVariant::Classic, SchemeVariant::Hdg}) {
      for (int d : {1, k + 1}) {
        ProblemData problem = manufactured_polynomial(d, material);
        MeshBases bases = MeshBases::build(mesh, k + 1, k);
        auto dofmap = std::make_shared<const DofMap>(mesh, k, variant);
        auto ops = build_operators(mesh, bases, *dofmap, material);
        LinearSystem sys = assemble(mesh, bases, ops, dofmap, problem);
        SolveInfo sinfo;
        HhoFunction u = solve(mesh, sys, &sinfo);
        PiecewisePolyField sigma = discrete_stress(mesh, ops, material, u);
        PiecewisePolyField strain = discrete_strain(mesh, ops, u);
        PiecewisePolyField Ru = potential_field(mesh, ops, u);
        PiecewisePolyField Au = nodal_average(mesh, bases, Ru, problem.u_dirichlet).to_polyfield(mesh, bases);
        EstimateBreakdown est = estimate(mesh, bases, problem, u, sigma, strain, Au);
        const double sigma_norm = matrix_field_norm(mesh, problem.exact->sigma, 2 * (d + 1));

        char name[160];
        std::snprintf(name, sizeof(name), "patch stress error, %s (k=%d, d=%d)", to_string(variant).c_str(), k, d);
        double val = est.err_sigma / sigma_norm;
        results.push_back({name, val, 1e-9, val <= 1e-9 && sinfo.spd, sinfo.spd ? "" : "factorization failed"});
        std::snprintf(name, sizeof(name), "patch estimator, %s (k=%d, d=%d)", to_string(variant).c_str(), k, d);
        double vale = est.eta_tilde() / sigma_norm;
        results.push_back({name, vale, 1e-8, vale <= 1e-8, ""});

        if (variant == SchemeVariant::Classic && d == k + 1) {
          // residual of the interpolated exact solution in the uncondensed system
          LinearSystem full = assemble(mesh, bases, ops, dofmap, problem, false);
          HhoFunction iu = interpolate(mesh, bases, dofmap, problem.exact->u, 2 * (d + k + 1));
          double res = (full.matrix * iu.x - full.rhs).norm() / std::max(full.rhs.norm(), kTiny);
          std::snprintf(name, sizeof(name), "interpolated solution residual (k=%d, d=%d)", k, d);
          results.push_back({name, res, 1e-10, res <= 1e-10, ""});
        }
      }
    }
  }
  return results;
}

std::vector<CheckResult> verify_orthogonality() {
  std::vector<CheckResult> results;
  const Material material = Material::from_young_poisson(1e5, 0.4999);
  const int k = 2;

  // displacement vanishing on the unit square boundary, f = -div sigma in P_2
  Poly2 bubble = Poly2::x() * (Poly2(1.0) - Poly2::x()) * Poly2::y() * (Poly2(1.0) - Poly2::y());
  VecPoly2 u{bubble, bubble * 2.0};
  ProblemData problem = manufactured_from_poly(u, material);

  Triangulation mesh = Triangulation::unit_square().uniform_refine().uniform_refine();
  MeshBases bases = MeshBases::build(mesh, k + 1, k);
  auto dofmap = std::make_shared<const DofMap>(mesh, k, SchemeVariant::Classic);
  auto ops = build_operators(mesh, bases, *dofmap, material);
  LinearSystem sys = assemble(mesh, bases, ops, dofmap, problem);
  HhoFunction uh = solve(mesh, sys);
  PiecewisePolyField sigma_h = discrete_stress(mesh, ops, material, uh);
  const int nk = dim_pk_2d(k);

  const double sigma_scale = matrix_field_norm(mesh, problem.exact->sigma, 8);

  // Galerkin orthogonality against every conforming P1 nodal field
  std::vector<bool> boundary_vertex(mesh.n_vertices(), false);
  for (int s = 0; s < mesh.n_sides(); s++)
    if (mesh.side(s).is_boundary()) {
      boundary_vertex[mesh.side(s).a] = true;
      boundary_vertex[mesh.side(s).b] = true;
    }
  auto star = mesh.vertex_star();
  double worst = 0.0;
  for (int z = 0; z < mesh.n_vertices(); z++) {
    if (boundary_vertex[z]) continue;
    for (int comp = 0; comp < 2; comp++) {
      double residual = 0.0, eps_phi_sq = 0.0;
      for (int e : star[z]) {
        int local = -1;
        for (int i = 0; i < 3; i++)
          if (mesh.element(e)[i] == z) local = i;
        const auto& geom = mesh.geometry(e);
        Vec2 grad_hat = -geom.normal[local] * geom.edge_length[local] / (2.0 * geom.area);
        // (sigma_h, grad(hat e_comp))_T from the mean value of sigma_h
        Eigen::VectorXd c = sigma_h.coeff[e];
        Vec2 row(c(2 * comp * nk), c((2 * comp + 1) * nk));
        residual += geom.area * row.dot(grad_hat);
        Mat2 eps_phi = Mat2::Zero();
        eps_phi.row(comp) += 0.5 * grad_hat.transpose();
        eps_phi.col(comp) += 0.5 * grad_hat;
        eps_phi_sq += geom.area * eps_phi.squaredNorm();
        // (f, hat e_comp)_T
        auto p = mesh.element_vertices(e);
        QuadRule rule = triangle_rule(p[0], p[1], p[2], 4);
        for (std::size_t q = 0; q < rule.size(); q++) {
          // hat value from the barycentric coordinate of the local vertex
          Mat2 T;
          T.col(0) = p[(local + 1) % 3] - p[local];
          T.col(1) = p[(local + 2) % 3] - p[local];
          Vec2 ab = T.inverse() * (rule.points[q] - p[local]);
          double hat = 1.0 - ab.x() - ab.y();
          residual -= rule.weights[q] * problem.f(rule.points[q])(comp)*hat;
        }
      }
      worst = std::max(worst, std::abs(residual) / (sigma_scale * std::sqrt(eps_phi_sq)));
    }
  }
  results.push_back({"discrete Galerkin orthogonality (P1 fields)", worst, 1e-10, worst <= 1e-10, ""});

  // mean-trace identity for pure Dirichlet data
  double tr_exact = 0.0;
  for (int e = 0; e < mesh.n_elements(); e++) {
    auto p = mesh.element_vertices(e);
    QuadRule rule = triangle_rule(p[0], p[1], p[2], 6);
    for (std::size_t q = 0; q < rule.size(); q++)
      tr_exact += rule.weights[q] * problem.exact->sigma(rule.points[q]).trace();
  }
  double tr_h = 0.0;
  for (int e = 0; e < mesh.n_elements(); e++)
    tr_h += mesh.geometry(e).area * (sigma_h.coeff[e](0) + sigma_h.coeff[e](3 * nk));
  double val = std::abs(tr_exact - tr_h) / (sigma_scale * 1.0);
  results.push_back({"pure-Dirichlet mean trace identity", val, 1e-9, val <= 1e-9, ""});
  return results;
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

void print_results(const std::vector<CheckResult>& results, std::ostream& out) {
  for (const auto& r : results) {
    char line[256];
    std::snprintf(line, sizeof(line), "%-58s %10.3e <= %8.1e  %s", r.name.c_str(), r.value, r.bound,
                  r.pass ? "PASS" : "FAIL");
    out << line;
    if (!r.note.empty()) out << "  (" << r.note << ")";
    out << "\n";
  }
}

}  // namespace hho
