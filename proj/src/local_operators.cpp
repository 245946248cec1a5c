#include "hho/local_operators.hpp"

#include "hho/parallel.hpp"

namespace hho {

namespace {

// elasticity tensor on the component basis e00,e01,e10,e11
Eigen::Matrix4d elasticity_component_matrix(double lambda, double mu) {
  Eigen::Matrix4d c = Eigen::Matrix4d::Zero();
  c(0, 0) = 2.0 * mu + lambda;
  c(3, 3) = 2.0 * mu + lambda;
  c(0, 3) = c(3, 0) = lambda;
  c(1, 1) = 2.0 * mu;
  c(2, 2) = 2.0 * mu;
  return c;
}

}  // namespace

ElementOperatorBuilder::ElementOperatorBuilder(const Triangulation& mesh, int element, const MeshBases& bases,
                                               const LocalDofLayout& layout)
    : mesh_(mesh), element_(element), bases_(bases), layout_(layout) {
  const int k = layout_.k;
  auto p = mesh.element_vertices(element);
  cell_rule_ = triangle_rule(p[0], p[1], p[2], 2 * (k + 1));
  const auto& geom = mesh.geometry(element);
  area_ = geom.area;
  diameter_ = geom.diameter;
  const auto& sides = mesh.element_sides(element);
  for (int i = 0; i < 3; i++) {
    const Side& s = mesh.side(sides[i]);
    face_rules_[i] = segment_rule(mesh.vertex(s.a), mesh.vertex(s.b), 2 * k + 3);
    normals_[i] = geom.normal[i];
    face_len_[i] = s.length;
  }

  // trace projection onto P_k(F): (1/|F|) int_F chi_m phi_i for the full cell basis
  const CellBasis& cb = bases_.cell[element_];
  for (int i = 0; i < 3; i++) {
    const FaceBasis& fb = bases_.face[sides[i]];
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(fb.size(), cb.size());
    for (std::size_t q = 0; q < face_rules_[i].size(); q++) {
      const Vec2& x = face_rules_[i].points[q];
      t.noalias() += (face_rules_[i].weights[q] / fb.measure()) *
                     (fb.values(x).transpose() * cb.values(x));
    }
    trace_[i] = t;
  }

  build_potential_system();
}

void ElementOperatorBuilder::build_potential_system() {
  const int k = layout_.k;
  const int np1 = dim_pk_2d(k + 1);
  const int nc_scalar = dim_pk_2d(layout_.cell_degree);
  const int nf_scalar = dim_pk_1d(k);
  const int nloc = layout_.n_total();
  const CellBasis& cb = bases_.cell[element_];

  K_ = Eigen::MatrixXd::Zero(2 * np1, 2 * np1);
  B_ = Eigen::MatrixXd::Zero(2 * np1, nloc);
  C_ = Eigen::MatrixXd::Zero(3, 2 * np1);
  D_ = Eigen::MatrixXd::Zero(3, nloc);

  // cell quadrature: strain stiffness and -(psi_i, div eps(phi_j))
  for (std::size_t q = 0; q < cell_rule_.size(); q++) {
    const double w = cell_rule_.weights[q];
    const Vec2& x = cell_rule_.points[q];
    Eigen::MatrixXd grad = cb.gradients(x);         // np1 x 2
    Eigen::MatrixXd hess = cb.second_derivatives(x);  // np1 x 3 (dxx,dxy,dyy)
    Eigen::RowVectorXd phi = cb.values(x);

    // eps(phi_i e_c) : eps(phi_j e_d)
    Eigen::VectorXd gx = grad.col(0).head(np1), gy = grad.col(1).head(np1);
    Eigen::MatrixXd dot = gx * gx.transpose() + gy * gy.transpose();
    K_.block(0, 0, np1, np1).noalias() += 0.5 * w * (dot + gx * gx.transpose());
    K_.block(np1, np1, np1, np1).noalias() += 0.5 * w * (dot + gy * gy.transpose());
    K_.block(0, np1, np1, np1).noalias() += 0.5 * w * (gy * gx.transpose());
    K_.block(np1, 0, np1, np1).noalias() += 0.5 * w * (gx * gy.transpose());

    // div eps(phi_j e_d): component a = (delta_ad lap + d_a d_d) phi_j / 2
    Eigen::VectorXd lap = hess.col(0).head(np1) + hess.col(2).head(np1);
    Eigen::VectorXd dxx = hess.col(0).head(np1), dxy = hess.col(1).head(np1), dyy = hess.col(2).head(np1);
    Eigen::RowVectorXd psi = phi.head(nc_scalar);
    // row (d,j), col (c,i): -(psi_i, [div eps(phi_j e_d)]_c)
    // d=0: div = ((lap+dxx)/2, dxy/2); d=1: div = (dxy/2, (lap+dyy)/2)
    B_.block(0, 0, np1, nc_scalar).noalias() -= 0.5 * w * (lap + dxx) * psi;
    B_.block(0, nc_scalar, np1, nc_scalar).noalias() -= 0.5 * w * dxy * psi;
    B_.block(np1, 0, np1, nc_scalar).noalias() -= 0.5 * w * dxy * psi;
    B_.block(np1, nc_scalar, np1, nc_scalar).noalias() -= 0.5 * w * (lap + dyy) * psi;

    // constraints: mean value and mean rotation of the reconstruction
    C_.block(0, 0, 1, np1).noalias() += (w / area_) * phi.head(np1);
    C_.block(1, np1, 1, np1).noalias() += (w / area_) * phi.head(np1);
    C_.block(2, 0, 1, np1).noalias() -= (0.5 * w / area_) * gy.transpose();
    C_.block(2, np1, 1, np1).noalias() += (0.5 * w / area_) * gx.transpose();

    D_.block(0, 0, 1, nc_scalar).noalias() += (w / area_) * psi;
    D_.block(1, nc_scalar, 1, nc_scalar).noalias() += (w / area_) * psi;
  }

  // face quadrature: (chi_m e_c, eps(phi_j e_d) nu) and the rotation moments
  for (int i = 0; i < 3; i++) {
    const FaceBasis& fb = bases_.face[layout_.side_ids[i]];
    const Vec2 nu = normals_[i];
    const int off = layout_.face_offset(i);
    for (std::size_t q = 0; q < face_rules_[i].size(); q++) {
      const double w = face_rules_[i].weights[q];
      const Vec2& x = face_rules_[i].points[q];
      Eigen::MatrixXd grad = cb.gradients(x).topRows(np1);
      Eigen::RowVectorXd chi = fb.values(x);
      Eigen::VectorXd gn = grad * nu;  // grad phi_j . nu
      Eigen::VectorXd gx = grad.col(0), gy = grad.col(1);
      // (eps(phi_j e_d) nu)_c = (delta_cd gn_j + d_c phi_j nu_d)/2
      B_.block(0, off, np1, nf_scalar).noalias() += 0.5 * w * (gn + gx * nu.x()) * chi;
      B_.block(0, off + nf_scalar, np1, nf_scalar).noalias() += 0.5 * w * (gy * nu.x()) * chi;
      B_.block(np1, off, np1, nf_scalar).noalias() += 0.5 * w * (gx * nu.y()) * chi;
      B_.block(np1, off + nf_scalar, np1, nf_scalar).noalias() += 0.5 * w * (gn + gy * nu.y()) * chi;

      // mean rotation datum: int_T asym(grad w) = 1/2 sum_F int_F (w_1 nu_0 - w_0 nu_1)
      D_.block(2, off, 1, nf_scalar).noalias() -= (0.5 * w / area_) * nu.y() * chi;
      D_.block(2, off + nf_scalar, 1, nf_scalar).noalias() += (0.5 * w / area_) * nu.x() * chi;
    }
  }
}

Eigen::MatrixXd ElementOperatorBuilder::potential_reconstruction() const {
  const int n = static_cast<int>(K_.rows());
  Eigen::MatrixXd saddle = Eigen::MatrixXd::Zero(n + 3, n + 3);
  saddle.topLeftCorner(n, n) = K_;
  saddle.topRightCorner(n, 3) = C_.transpose();
  saddle.bottomLeftCorner(3, n) = C_;
  Eigen::MatrixXd rhs(n + 3, layout_.n_total());
  rhs.topRows(n) = B_;
  rhs.bottomRows(3) = D_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(saddle);
  return lu.solve(rhs).topRows(n);
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> ElementOperatorBuilder::strain_reconstruction() const {
  const int k = layout_.k;
  const int nk = dim_pk_2d(k);
  const int nc_scalar = dim_pk_2d(layout_.cell_degree);
  const int nf_scalar = dim_pk_1d(k);
  const int nloc = layout_.n_total();
  const CellBasis& cb = bases_.cell[element_];

  // component blocks of the moments (Phi_j e_ab): mass matrix is area * I
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(4 * nk, nloc);
  for (std::size_t q = 0; q < cell_rule_.size(); q++) {
    const double w = cell_rule_.weights[q];
    const Vec2& x = cell_rule_.points[q];
    Eigen::MatrixXd grad = cb.gradients(x).topRows(nk);
    Eigen::RowVectorXd psi = cb.values(x).head(nc_scalar);
    // -(psi_i e_c, div(phi_j e_ab)) with div(phi e_ab) = d_b phi e_a
    rhs.block(0 * nk, 0, nk, nc_scalar).noalias() -= w * grad.col(0) * psi;          // (0,0): a=0,b=0
    rhs.block(1 * nk, 0, nk, nc_scalar).noalias() -= w * grad.col(1) * psi;          // (0,1): a=0,b=1
    rhs.block(2 * nk, nc_scalar, nk, nc_scalar).noalias() -= w * grad.col(0) * psi;  // (1,0)
    rhs.block(3 * nk, nc_scalar, nk, nc_scalar).noalias() -= w * grad.col(1) * psi;  // (1,1)
  }
  for (int i = 0; i < 3; i++) {
    const FaceBasis& fb = bases_.face[layout_.side_ids[i]];
    const Vec2 nu = normals_[i];
    const int off = layout_.face_offset(i);
    for (std::size_t q = 0; q < face_rules_[i].size(); q++) {
      const double w = face_rules_[i].weights[q];
      const Vec2& x = face_rules_[i].points[q];
      Eigen::VectorXd phi = cb.values(x).head(nk).transpose();
      Eigen::RowVectorXd chi = fb.values(x);
      // (chi_m e_c, (phi_j e_ab) nu) = delta_ca nu_b (chi_m, phi_j)
      rhs.block(0 * nk, off, nk, nf_scalar).noalias() += w * nu.x() * phi * chi;
      rhs.block(1 * nk, off, nk, nf_scalar).noalias() += w * nu.y() * phi * chi;
      rhs.block(2 * nk, off + nf_scalar, nk, nf_scalar).noalias() += w * nu.x() * phi * chi;
      rhs.block(3 * nk, off + nf_scalar, nk, nf_scalar).noalias() += w * nu.y() * phi * chi;
    }
  }
  Eigen::MatrixXd G = rhs / area_;
  Eigen::MatrixXd Eps = G;
  Eps.middleRows(1 * nk, nk) = 0.5 * (G.middleRows(1 * nk, nk) + G.middleRows(2 * nk, nk));
  Eps.middleRows(2 * nk, nk) = Eps.middleRows(1 * nk, nk);
  return {std::move(G), std::move(Eps)};
}

Eigen::MatrixXd ElementOperatorBuilder::stabilization(const Eigen::MatrixXd& R, SchemeVariant variant) const {
  const int k = layout_.k;
  const int nk = dim_pk_2d(k);
  const int np1 = dim_pk_2d(k + 1);
  const int nc_scalar = dim_pk_2d(layout_.cell_degree);
  const int nf_scalar = dim_pk_1d(k);
  const int nloc = layout_.n_total();

  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(nloc, nloc);

  if (variant == SchemeVariant::Hdg) {
    // sum_F h_F^{-1} || Pi_F^k (v_F - v_T) ||_F^2
    for (int i = 0; i < 3; i++) {
      Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2 * nf_scalar, nloc);
      const Eigen::MatrixXd tr = trace_[i].leftCols(nc_scalar);
      for (int c = 0; c < 2; c++) {
        d.block(c * nf_scalar, layout_.face_offset(i) + c * nf_scalar, nf_scalar, nf_scalar) =
            Eigen::MatrixXd::Identity(nf_scalar, nf_scalar);
        d.block(c * nf_scalar, c * nc_scalar, nf_scalar, nc_scalar) -= tr;
      }
      S.noalias() += d.transpose() * d;  // h_F^{-1} |F| = 1 on segments
    }
    return S;
  }

  // delta_T = Pi_T^k (v_T - R v_h): leading nk coefficients per component
  Eigen::MatrixXd delta_T = Eigen::MatrixXd::Zero(2 * nk, nloc);
  for (int c = 0; c < 2; c++) {
    delta_T.block(c * nk, c * nc_scalar, nk, nk) = Eigen::MatrixXd::Identity(nk, nk);
    delta_T.middleRows(c * nk, nk) -= R.middleRows(c * np1, nk);
  }

  for (int i = 0; i < 3; i++) {
    // delta_TF = Pi_F^k (v_F - R v_h|_T)
    Eigen::MatrixXd delta_TF = Eigen::MatrixXd::Zero(2 * nf_scalar, nloc);
    for (int c = 0; c < 2; c++) {
      delta_TF.block(c * nf_scalar, layout_.face_offset(i) + c * nf_scalar, nf_scalar, nf_scalar) =
          Eigen::MatrixXd::Identity(nf_scalar, nf_scalar);
      delta_TF.middleRows(c * nf_scalar, nf_scalar) -= trace_[i] * R.middleRows(c * np1, np1);
    }
    if (variant == SchemeVariant::Classic) {
      // trace of delta_T is exactly representable on the face basis
      Eigen::MatrixXd diff = delta_TF;
      for (int c = 0; c < 2; c++)
        diff.middleRows(c * nf_scalar, nf_scalar) -= trace_[i].leftCols(nk) * delta_T.middleRows(c * nk, nk);
      S.noalias() += diff.transpose() * diff;  // h_F^{-1} * |F| = 1 on segments
    } else {
      S.noalias() += delta_TF.transpose() * delta_TF;
    }
  }
  if (variant == SchemeVariant::Tilde)
    S.noalias() += (area_ / (diameter_ * diameter_)) * delta_T.transpose() * delta_T;
  return S;
}

Eigen::MatrixXd ElementOperatorBuilder::stiffness(const Eigen::MatrixXd& Eps, const Eigen::MatrixXd& S,
                                                  double lambda, double mu) const {
  const int nk = static_cast<int>(Eps.rows()) / 4;
  Eigen::Matrix4d cmat = elasticity_component_matrix(lambda, mu);
  Eigen::MatrixXd weighted = Eigen::MatrixXd::Zero(Eps.rows(), Eps.cols());
  for (int a = 0; a < 4; a++)
    for (int b = 0; b < 4; b++) {
      if (cmat(a, b) == 0.0) continue;
      weighted.middleRows(a * nk, nk) += cmat(a, b) * Eps.middleRows(b * nk, nk);
    }
  return area_ * Eps.transpose() * weighted + mu * S;
}

Eigen::VectorXd ElementOperatorBuilder::load_vector(const ProblemData& problem, int quad_degree) const {
  const int nc_scalar = dim_pk_2d(layout_.cell_degree);
  const int nf_scalar = dim_pk_1d(layout_.k);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(layout_.n_total());
  const CellBasis& cb = bases_.cell[element_];

  auto p = mesh_.element_vertices(element_);
  QuadRule rule = triangle_rule(p[0], p[1], p[2], quad_degree);
  for (std::size_t q = 0; q < rule.size(); q++) {
    Vec2 f = problem.f(rule.points[q]);
    Eigen::RowVectorXd psi = cb.values(rule.points[q]).head(nc_scalar);
    b.segment(0, nc_scalar) += rule.weights[q] * f.x() * psi.transpose();
    b.segment(nc_scalar, nc_scalar) += rule.weights[q] * f.y() * psi.transpose();
  }
  for (int i = 0; i < 3; i++) {
    const Side& s = mesh_.side(layout_.side_ids[i]);
    if (s.label != SideLabel::Neumann) continue;
    const FaceBasis& fb = bases_.face[layout_.side_ids[i]];
    QuadRule frule = segment_rule(mesh_.vertex(s.a), mesh_.vertex(s.b), quad_degree);
    const int off = layout_.face_offset(i);
    for (std::size_t q = 0; q < frule.size(); q++) {
      Vec2 g = problem.g(frule.points[q], normals_[i]);
      Eigen::RowVectorXd chi = fb.values(frule.points[q]);
      b.segment(off, nf_scalar) += frule.weights[q] * g.x() * chi.transpose();
      b.segment(off + nf_scalar, nf_scalar) += frule.weights[q] * g.y() * chi.transpose();
    }
  }
  return b;
}

std::vector<ElementOperators> build_operators(const Triangulation& mesh, const MeshBases& bases,
                                              const DofMap& dofmap, const Material& material) {
  std::vector<ElementOperators> ops(mesh.n_elements());
  parallel_for(mesh.n_elements(), [&](std::size_t e) {
    ElementOperators& op = ops[e];
    op.layout = dofmap.layout(mesh, static_cast<int>(e));
    ElementOperatorBuilder builder(mesh, static_cast<int>(e), bases, op.layout);
    op.R = builder.potential_reconstruction();
    std::tie(op.G, op.Eps) = builder.strain_reconstruction();
    op.S = builder.stabilization(op.R, dofmap.variant());
    op.A = builder.stiffness(op.Eps, op.S, material.lambda(mesh, static_cast<int>(e)),
                             material.mu(mesh, static_cast<int>(e)));
  });
  return ops;
}

HhoNorms hho_norms(const Triangulation& mesh, const MeshBases& bases, const std::vector<ElementOperators>& ops,
                   const Material& material, const HhoFunction& vh) {
  HhoNorms norms;
  const int k = vh.dofmap->k();
  const int nc_scalar = dim_pk_2d(vh.dofmap->cell_degree());
  double norm_h_sq = 0.0, s_sq = 0.0, shat_sq = 0.0, ah_sq = 0.0;
  for (int e = 0; e < mesh.n_elements(); e++) {
    Eigen::VectorXd loc = vh.local_dofs(mesh, e);
    double sT = loc.dot(ops[e].S * loc);
    shat_sq += sT;
    s_sq += material.mu(mesh, e) * sT;
    ah_sq += loc.dot(ops[e].A * loc);

    // || eps_pw(v_T) ||^2 + sum_F h_F^{-1} || v_F - v_T ||_F^2
    const CellBasis& cb = bases.cell[e];
    auto p = mesh.element_vertices(e);
    QuadRule rule = triangle_rule(p[0], p[1], p[2], 2 * k);
    for (std::size_t q = 0; q < rule.size(); q++) {
      Eigen::MatrixXd grad = cb.gradients(rule.points[q]).topRows(nc_scalar);
      Vec2 gx(loc.segment(0, nc_scalar).dot(grad.col(0)), loc.segment(0, nc_scalar).dot(grad.col(1)));
      Vec2 gy(loc.segment(nc_scalar, nc_scalar).dot(grad.col(0)), loc.segment(nc_scalar, nc_scalar).dot(grad.col(1)));
      Mat2 g;
      g.row(0) = gx.transpose();
      g.row(1) = gy.transpose();
      Mat2 eps = 0.5 * (g + g.transpose());
      norm_h_sq += rule.weights[q] * eps.squaredNorm();
    }
    const auto& sides = mesh.element_sides(e);
    const int nf_scalar = dim_pk_1d(k);
    for (int i = 0; i < 3; i++) {
      const Side& s = mesh.side(sides[i]);
      const FaceBasis& fb = bases.face[sides[i]];
      Eigen::VectorXd vf = vh.face_block(sides[i]);
      QuadRule frule = segment_rule(mesh.vertex(s.a), mesh.vertex(s.b), 2 * (k + 1) + 2);
      double diff_sq = 0.0;
      for (std::size_t q = 0; q < frule.size(); q++) {
        Eigen::RowVectorXd chi = fb.values(frule.points[q]);
        Eigen::RowVectorXd phi = cb.values(frule.points[q]).head(nc_scalar);
        double dx = chi.dot(vf.segment(0, nf_scalar)) - phi.dot(loc.segment(0, nc_scalar));
        double dy = chi.dot(vf.segment(nf_scalar, nf_scalar)) - phi.dot(loc.segment(nc_scalar, nc_scalar));
        diff_sq += frule.weights[q] * (dx * dx + dy * dy);
      }
      norm_h_sq += diff_sq / s.length;
    }
  }
  norms.norm_h = std::sqrt(norm_h_sq);
  norms.seminorm_s = std::sqrt(std::max(s_sq, 0.0));
  norms.seminorm_s_hat = std::sqrt(std::max(shat_sq, 0.0));
  norms.norm_ah = std::sqrt(std::max(ah_sq, 0.0));
  return norms;
}

}  // namespace hho
