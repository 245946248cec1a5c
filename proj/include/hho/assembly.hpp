// Global assembly of the discrete problem, static condensation, and the
// sparse symmetric solve.

#ifndef HHO_ASSEMBLY_HPP
#define HHO_ASSEMBLY_HPP

#include <Eigen/Sparse>

#include "hho/local_operators.hpp"

namespace hho {

/// Assembled system. In condensed form the matrix couples only the free face
/// unknowns; cell blocks are recovered element-wise from the stored factors.
struct LinearSystem {
  std::shared_ptr<const DofMap> dofmap;
  bool condensed = true;
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  std::vector<Eigen::VectorXd> dirichlet_values;  ///< per side, prescribed face coefficients
  // cell recovery data: u_cell = recover_rhs[e] - recover_mat[e] * (all three face blocks)
  std::vector<Eigen::MatrixXd> recover_mat;
  std::vector<Eigen::VectorXd> recover_rhs;
};

struct SolveInfo {
  bool spd = false;
  double relative_residual = 0.0;
  int refinement_steps = 0;
  long n_unknowns = 0;
};

/// Assemble the discrete problem; Dirichlet faces carry Pi_F^k u_D and are
/// moved to the right-hand side.
LinearSystem assemble(const Triangulation& mesh, const MeshBases& bases, const std::vector<ElementOperators>& ops,
                      std::shared_ptr<const DofMap> dofmap, const ProblemData& problem, bool condense = true,
                      int quad_degree = -1);

/// Factorize and solve; the matrix must be symmetric positive definite.
/// Iterative refinement pushes the relative residual to ~1e-14.
HhoFunction solve(const Triangulation& mesh, const LinearSystem& system, SolveInfo* info = nullptr);

}  // namespace hho

#endif
