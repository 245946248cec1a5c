#include "hho/assembly.hpp"

#include <Eigen/SparseCholesky>

#include "hho/parallel.hpp"

namespace hho {

LinearSystem assemble(const Triangulation& mesh, const MeshBases& bases, const std::vector<ElementOperators>& ops,
                      std::shared_ptr<const DofMap> dofmap, const ProblemData& problem, bool condense,
                      int quad_degree) {
  const int k = dofmap->k();
  if (quad_degree < 0) quad_degree = 2 * (k + 1) + 2;
  const int nc = dofmap->cell_block_size();
  const int nf = dofmap->face_block_size();
  const int nt = mesh.n_elements();

  // with a pure Dirichlet boundary the model assumes global material constants
  if (mesh.n_neumann_sides() == 0 && !problem.material.is_constant())
    throw std::invalid_argument("assemble: pure Dirichlet problems require constant Lame parameters");

  LinearSystem sys;
  sys.dofmap = dofmap;
  sys.condensed = condense;

  // prescribed Dirichlet coefficients
  sys.dirichlet_values.assign(mesh.n_sides(), Eigen::VectorXd());
  for (int s = 0; s < mesh.n_sides(); s++) {
    if (!dofmap->is_dirichlet(s)) continue;
    sys.dirichlet_values[s] = project_face_vector(mesh, s, bases.face[s], problem.u_dirichlet, k, quad_degree);
  }

  // local loads and condensation factors, element-parallel
  std::vector<Eigen::VectorXd> load(nt);
  std::vector<Eigen::MatrixXd> schur(nt);       // condensed face-face matrix
  std::vector<Eigen::VectorXd> schur_rhs(nt);   // condensed face rhs
  sys.recover_mat.assign(condense ? nt : 0, Eigen::MatrixXd());
  sys.recover_rhs.assign(condense ? nt : 0, Eigen::VectorXd());
  parallel_for(nt, [&](std::size_t e) {
    ElementOperatorBuilder builder(mesh, static_cast<int>(e), bases, ops[e].layout);
    load[e] = builder.load_vector(problem, quad_degree);
    if (!condense) return;
    const Eigen::MatrixXd& A = ops[e].A;
    Eigen::MatrixXd Acc = A.topLeftCorner(nc, nc);
    Eigen::MatrixXd Acf = A.topRightCorner(nc, 3 * nf);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(Acc);
    if (ldlt.info() != Eigen::Success)
      throw std::runtime_error("assemble: singular cell block (operators are broken)");
    Eigen::MatrixXd AccInvAcf = ldlt.solve(Acf);
    Eigen::VectorXd AccInvBc = ldlt.solve(load[e].head(nc));
    schur[e] = A.bottomRightCorner(3 * nf, 3 * nf) - Acf.transpose() * AccInvAcf;
    schur_rhs[e] = load[e].tail(3 * nf) - Acf.transpose() * AccInvBc;
    sys.recover_mat[e] = AccInvAcf;
    sys.recover_rhs[e] = AccInvBc;
  });

  const long n = condense ? dofmap->n_face_dofs() : dofmap->n_dofs();
  sys.rhs = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(nt) * (condense ? 9 * nf * nf : (nc + 3 * nf) * (nc + 3 * nf)));

  auto face_global = [&](int side) -> long {
    long off = static_cast<long>(dofmap->free_face_index(side)) * nf;
    return condense ? off : dofmap->n_cell_dofs() + off;
  };

  for (int e = 0; e < nt; e++) {
    const auto& sides = mesh.element_sides(e);
    if (condense) {
      const Eigen::MatrixXd& S = schur[e];
      // scatter rows/cols; Dirichlet columns move to the rhs
      for (int i = 0; i < 3; i++) {
        if (dofmap->is_dirichlet(sides[i])) continue;
        long gi = face_global(sides[i]);
        sys.rhs.segment(gi, nf) += schur_rhs[e].segment(i * nf, nf);
        for (int j = 0; j < 3; j++) {
          const Eigen::MatrixXd block = S.block(i * nf, j * nf, nf, nf);
          if (dofmap->is_dirichlet(sides[j])) {
            sys.rhs.segment(gi, nf) -= block * sys.dirichlet_values[sides[j]];
          } else {
            long gj = face_global(sides[j]);
            for (int r = 0; r < nf; r++)
              for (int c = 0; c < nf; c++) triplets.emplace_back(gi + r, gj + c, block(r, c));
          }
        }
      }
    } else {
      const Eigen::MatrixXd& A = ops[e].A;
      // global indices per local dof, -1 for Dirichlet
      std::vector<long> idx(nc + 3 * nf, -1);
      for (int i = 0; i < nc; i++) idx[i] = dofmap->cell_offset(e) + i;
      for (int f = 0; f < 3; f++) {
        if (dofmap->is_dirichlet(sides[f])) continue;
        for (int i = 0; i < nf; i++) idx[nc + f * nf + i] = face_global(sides[f]) + i;
      }
      for (int i = 0; i < nc + 3 * nf; i++) {
        if (idx[i] < 0) continue;
        sys.rhs(idx[i]) += load[e](i);
        for (int j = 0; j < nc + 3 * nf; j++) {
          if (idx[j] >= 0) continue;
          int f = (j - nc) / nf;
          sys.rhs(idx[i]) -= A(i, j) * sys.dirichlet_values[sides[f]]((j - nc) % nf);
        }
        for (int j = 0; j < nc + 3 * nf; j++)
          if (idx[j] >= 0) triplets.emplace_back(idx[i], idx[j], A(i, j));
      }
    }
  }

  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.matrix.makeCompressed();
  return sys;
}

HhoFunction solve(const Triangulation& mesh, const LinearSystem& sys, SolveInfo* info) {
  const DofMap& map = *sys.dofmap;
  const int nf = map.face_block_size();

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(sys.matrix);
  if (ldlt.info() != Eigen::Success || (ldlt.vectorD().size() > 0 && ldlt.vectorD().minCoeff() <= 0.0)) {
    if (info) info->spd = false;
    throw std::runtime_error("solve: matrix is not symmetric positive definite");
  }

  Eigen::VectorXd x = ldlt.solve(sys.rhs);
  const double rhs_norm = std::max(sys.rhs.norm(), 1e-300);
  int steps = 0;
  double rel = (sys.rhs - sys.matrix * x).norm() / rhs_norm;
  while (rel > 1e-13 && steps < 6) {
    x += ldlt.solve(sys.rhs - sys.matrix * x);
    rel = (sys.rhs - sys.matrix * x).norm() / rhs_norm;
    steps++;
  }
  if (info) {
    info->spd = true;
    info->relative_residual = rel;
    info->refinement_steps = steps;
    info->n_unknowns = sys.matrix.rows();
  }

  HhoFunction u(sys.dofmap);
  for (int s = 0; s < mesh.n_sides(); s++)
    if (map.is_dirichlet(s)) u.dirichlet_values[s] = sys.dirichlet_values[s];

  if (!sys.condensed) {
    u.x.head(map.n_cell_dofs()) = x.head(map.n_cell_dofs());
    u.x.tail(map.n_face_dofs()) = x.tail(map.n_face_dofs());
    return u;
  }

  // scatter face solution, then recover the cell blocks
  for (int s = 0; s < mesh.n_sides(); s++) {
    if (map.is_dirichlet(s)) continue;
    u.x.segment(map.face_offset(s), nf) = x.segment(static_cast<long>(map.free_face_index(s)) * nf, nf);
  }
  for (int e = 0; e < mesh.n_elements(); e++) {
    const auto& sides = mesh.element_sides(e);
    Eigen::VectorXd faces(3 * nf);
    for (int i = 0; i < 3; i++) faces.segment(i * nf, nf) = u.face_block(sides[i]);
    u.cell_block(e) = sys.recover_rhs[e] - sys.recover_mat[e] * faces;
  }
  return u;
}

}  // namespace hho
