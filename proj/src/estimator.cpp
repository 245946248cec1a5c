#include "hho/estimator.hpp"

namespace hho {

namespace {

Mat2 sym(const Mat2& m) { return 0.5 * (m + m.transpose()); }

// 1D polynomial interpolation through (nodes, values) by Vandermonde solve;
// returns derivative values at the requested points.
Eigen::VectorXd lagrange_derivative(const std::vector<double>& nodes, const Eigen::VectorXd& values,
                                    const std::vector<double>& eval) {
  const int n = static_cast<int>(nodes.size());
  Eigen::MatrixXd V(n, n);
  for (int i = 0; i < n; i++) {
    double p = 1.0;
    for (int j = 0; j < n; j++) {
      V(i, j) = p;
      p *= nodes[i];
    }
  }
  Eigen::VectorXd c = Eigen::PartialPivLU<Eigen::MatrixXd>(V).solve(values);
  Eigen::VectorXd out(eval.size());
  for (std::size_t q = 0; q < eval.size(); q++) {
    double d = 0.0, p = 1.0;
    for (int j = 1; j < n; j++) {
      d += j * c(j) * p;
      p *= eval[q];
    }
    out(q) = d;
  }
  return out;
}

}  // namespace

std::vector<QuadRule> element_error_rules(const Triangulation& mesh, int element, int degree, bool singular_origin,
                                          int levels) {
  auto p = mesh.element_vertices(element);
  int corner = -1;
  if (singular_origin) {
    for (int i = 0; i < 3; i++)
      if (p[i].norm() < 1e-14) corner = i;
  }
  if (corner < 0) return {triangle_rule(p[0], p[1], p[2], degree)};

  // geometric grading toward the singular vertex
  Vec2 v0 = p[corner], v1 = p[(corner + 1) % 3], v2 = p[(corner + 2) % 3];
  std::vector<QuadRule> rules;
  Vec2 a_prev = v1, b_prev = v2;
  for (int l = 1; l <= levels; l++) {
    Vec2 a = v0 + (v1 - v0) / std::pow(2.0, l);
    Vec2 b = v0 + (v2 - v0) / std::pow(2.0, l);
    rules.push_back(triangle_rule(a, a_prev, b_prev, degree));
    rules.push_back(triangle_rule(a, b_prev, b, degree));
    a_prev = a;
    b_prev = b;
  }
  rules.push_back(triangle_rule(v0, a_prev, b_prev, degree));
  return rules;
}

Eigen::VectorXd EstimateBreakdown::indicators_sq() const {
  return volume_sq + strain_sq + jump_sq + neumann_sq + mu1 * mu1 * dirichlet_sq;
}

EstimateBreakdown estimate(const Triangulation& mesh, const MeshBases& bases, const ProblemData& problem,
                           const HhoFunction& u, const PiecewisePolyField& sigma_h,
                           const PiecewisePolyField& strain_h, const PiecewisePolyField& Au,
                           const EstimatorOptions& opts) {
  const int k = u.dofmap->k();
  const int qd = opts.quad_degree > 0 ? opts.quad_degree : 2 * (k + 1) + 2;
  const int nt = mesh.n_elements();

  EstimateBreakdown out;
  out.volume_sq = Eigen::VectorXd::Zero(nt);
  out.strain_sq = Eigen::VectorXd::Zero(nt);
  out.jump_sq = Eigen::VectorXd::Zero(nt);
  out.neumann_sq = Eigen::VectorXd::Zero(nt);
  out.dirichlet_sq = Eigen::VectorXd::Zero(nt);
  auto [mu0, mu1] = problem.material.mu_bounds(mesh);
  (void)mu0;
  out.mu1 = mu1;

  // volume residual and strain averaging terms
  for (int e = 0; e < nt; e++) {
    auto p = mesh.element_vertices(e);
    const double h = mesh.geometry(e).diameter;
    const double mu_t = problem.material.mu(mesh, e);
    QuadRule rule = triangle_rule(p[0], p[1], p[2], qd);
    double vol = 0.0, strain = 0.0;
    for (std::size_t q = 0; q < rule.size(); q++) {
      const Vec2& x = rule.points[q];
      Vec2 res = problem.f(x) + sigma_h.divergence_matrix(e, bases.cell[e], x);
      vol += rule.weights[q] * res.squaredNorm();
      Mat2 diff = sym(Au.gradient_vector(e, bases.cell[e], x)) - strain_h.value_matrix(e, bases.cell[e], x);
      strain += rule.weights[q] * diff.squaredNorm();
    }
    out.volume_sq(e) = h * h * vol;
    out.strain_sq(e) = mu_t * mu_t * strain;
  }

  // face terms
  double jump_total = 0.0, neumann_total = 0.0, dirichlet_total = 0.0;
  for (int s = 0; s < mesh.n_sides(); s++) {
    const Side& side = mesh.side(s);
    QuadRule rule = segment_rule(mesh.vertex(side.a), mesh.vertex(side.b), qd);
    if (side.label == SideLabel::Interior) {
      double val = 0.0;
      for (std::size_t q = 0; q < rule.size(); q++) {
        const Vec2& x = rule.points[q];
        Mat2 sp = sigma_h.value_matrix(side.t_plus, bases.cell[side.t_plus], x);
        Mat2 sm = sigma_h.value_matrix(side.t_minus, bases.cell[side.t_minus], x);
        val += rule.weights[q] * ((sp - sm) * side.normal).squaredNorm();
      }
      val *= side.length;
      jump_total += val;
      const double share = opts.jump_full ? val : 0.5 * val;
      out.jump_sq(side.t_plus) += share;
      out.jump_sq(side.t_minus) += share;
    } else if (side.label == SideLabel::Neumann) {
      double val = 0.0;
      for (std::size_t q = 0; q < rule.size(); q++) {
        const Vec2& x = rule.points[q];
        Vec2 res = problem.g(x, side.normal) - sigma_h.value_matrix(side.t_plus, bases.cell[side.t_plus], x) * side.normal;
        val += rule.weights[q] * res.squaredNorm();
      }
      out.neumann_sq(side.t_plus) += side.length * val;
      neumann_total += side.length * val;
    } else {
      // osc(u_D, F)^2 = h_F || d/ds (u_D - I_D u_D) ||_F^2 with the nodal
      // P_{k+1} interpolation at Gauss-Lobatto points
      const Vec2 a = mesh.vertex(side.a), b = mesh.vertex(side.b);
      const Vec2 tau = (b - a) / side.length;
      const std::vector<double> gl = gauss_lobatto_01(k + 2);
      Eigen::VectorXd vx(k + 2), vy(k + 2);
      for (int i = 0; i < k + 2; i++) {
        Vec2 val = problem.u_dirichlet(a + gl[i] * (b - a));
        vx(i) = val.x();
        vy(i) = val.y();
      }
      std::vector<double> eval(rule.size());
      for (std::size_t q = 0; q < rule.size(); q++) eval[q] = (rule.points[q] - a).dot(tau) / side.length;
      Eigen::VectorXd dx = lagrange_derivative(gl, vx, eval);  // d/dt, t in [0,1]
      Eigen::VectorXd dy = lagrange_derivative(gl, vy, eval);
      double val = 0.0;
      for (std::size_t q = 0; q < rule.size(); q++) {
        Vec2 dud;
        if (problem.grad_u_dirichlet) {
          dud = problem.grad_u_dirichlet(rule.points[q]) * tau;
        } else {
          const double step = 1e-6 * side.length;
          dud = (problem.u_dirichlet(rule.points[q] + step * tau) -
                 problem.u_dirichlet(rule.points[q] - step * tau)) /
                (2.0 * step);
        }
        Vec2 di(dx(q) / side.length, dy(q) / side.length);
        val += rule.weights[q] * (dud - di).squaredNorm();
      }
      out.dirichlet_sq(side.t_plus) += side.length * val;
      dirichlet_total += side.length * val;
    }
  }

  out.eta_sq = out.volume_sq.sum() + out.strain_sq.sum() + jump_total + neumann_total;
  out.osc_ud = std::sqrt(dirichlet_total);
  out.eta_tilde_sq = out.eta_sq + mu1 * mu1 * dirichlet_total;
  out.osc_f = oscillation_volume(mesh, problem.f, k, qd);
  double osc_g_sq = 0.0;
  for (int s = 0; s < mesh.n_sides(); s++) {
    if (mesh.side(s).label != SideLabel::Neumann) continue;
    const Vec2 nu = mesh.side(s).normal;
    VectorFn gs = [&](const Vec2& x) { return problem.g(x, nu); };
    osc_g_sq += oscillation_face_sq(mesh, s, gs, k, qd);
  }
  out.osc_g = std::sqrt(osc_g_sq);

  if (problem.has_exact()) {
    ExactErrors errs = exact_errors(mesh, bases, problem, u, sigma_h, opts);
    out.err_sigma = errs.err_sigma;
    out.err_u = errs.err_u;
    out.err_pi_sigma = errs.err_pi_sigma;
  }
  return out;
}

ExactErrors exact_errors(const Triangulation& mesh, const MeshBases& bases, const ProblemData& problem,
                         const HhoFunction& u, const PiecewisePolyField& sigma_h, const EstimatorOptions& opts) {
  if (!problem.has_exact()) throw std::invalid_argument("exact_errors: problem has no exact solution");
  const ExactSolution& exact = *problem.exact;
  const int k = u.dofmap->k();
  const int nk = dim_pk_2d(k);

  ExactErrors out;
  double sig_sq = 0.0, u_sq = 0.0, pi_sq = 0.0;
  for (int e = 0; e < mesh.n_elements(); e++) {
    auto rules = element_error_rules(mesh, e, opts.error_quad_degree, problem.singular_at_origin,
                                     opts.grading_levels);
    const CellBasis& cb = bases.cell[e];
    const double inv_measure = 1.0 / cb.measure();

    // projections of u and sigma under the composite rule
    Eigen::MatrixXd cu = Eigen::MatrixXd::Zero(nk, 2);
    Eigen::MatrixXd cs = Eigen::MatrixXd::Zero(nk, 4);
    for (const auto& rule : rules)
      for (std::size_t q = 0; q < rule.size(); q++) {
        const Vec2& x = rule.points[q];
        Eigen::VectorXd phi = cb.values(x).head(nk).transpose();
        Vec2 uv = exact.u(x);
        Mat2 sv = exact.sigma(x);
        cu.noalias() += (rule.weights[q] * inv_measure) * phi * Eigen::RowVector2d(uv.x(), uv.y());
        cs.noalias() += (rule.weights[q] * inv_measure) * phi *
                        Eigen::RowVector4d(sv(0, 0), sv(0, 1), sv(1, 0), sv(1, 1));
      }

    for (const auto& rule : rules)
      for (std::size_t q = 0; q < rule.size(); q++) {
        const Vec2& x = rule.points[q];
        Eigen::RowVectorXd phi = cb.values(x).head(nk);
        Mat2 sv = exact.sigma(x);
        Mat2 sh = sigma_h.value_matrix(e, cb, x);
        sig_sq += rule.weights[q] * (sv - sh).squaredNorm();
        Mat2 proj;
        proj << phi * cs.col(0), phi * cs.col(1), phi * cs.col(2), phi * cs.col(3);
        pi_sq += rule.weights[q] * (sv - proj).squaredNorm();
      }

    // || Pi_T^k u - u_T || from coefficients
    Eigen::VectorXd cell = u.cell_block(e);
    const int nc = dim_pk_2d(u.dofmap->cell_degree());
    Eigen::VectorXd diff(2 * nk);
    diff.segment(0, nk) = cu.col(0) - cell.segment(0, nk);
    diff.segment(nk, nk) = cu.col(1) - cell.segment(nc, nk);
    u_sq += mesh.geometry(e).area * diff.squaredNorm();
  }
  out.err_sigma = std::sqrt(sig_sq);
  out.err_u = std::sqrt(u_sq);
  out.err_pi_sigma = std::sqrt(std::max(pi_sq, 0.0));
  return out;
}

}  // namespace hho
