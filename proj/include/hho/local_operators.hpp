// Element-local HHO operators: potential and gradient/strain reconstruction,
// the three stabilizations, and the local stiffness contribution.

#ifndef HHO_LOCAL_OPERATORS_HPP
#define HHO_LOCAL_OPERATORS_HPP

#include "hho/hho_space.hpp"

namespace hho {

/// All local matrices act on the element dof vector (cell block + 3 face
/// blocks). Vector/matrix-valued polynomial coefficients are component-major
/// against the orthonormal cell basis (matrix components 00,01,10,11).
struct ElementOperators {
  LocalDofLayout layout;
  Eigen::MatrixXd R;    ///< dofs -> P_{k+1} potential coefficients (2 comps)
  Eigen::MatrixXd G;    ///< dofs -> P_k gradient coefficients (4 comps)
  Eigen::MatrixXd Eps;  ///< dofs -> P_k symmetric strain coefficients (4 comps)
  Eigen::MatrixXd S;    ///< stabilization bilinear form (variant dependent)
  Eigen::MatrixXd A;    ///< local stiffness Eps' M_C Eps + mu S
};

/// Intermediate element quantities shared by the operator builders.
class ElementOperatorBuilder {
 public:
  ElementOperatorBuilder(const Triangulation& mesh, int element, const MeshBases& bases,
                         const LocalDofLayout& layout);

  /// potential reconstruction: variational system against eps(P_{k+1})^2 with
  /// three mean-value/rotation constraints
  Eigen::MatrixXd potential_reconstruction() const;
  /// gradient reconstruction and its symmetric part
  std::pair<Eigen::MatrixXd, Eigen::MatrixXd> strain_reconstruction() const;
  Eigen::MatrixXd stabilization(const Eigen::MatrixXd& R, SchemeVariant variant) const;
  Eigen::MatrixXd stiffness(const Eigen::MatrixXd& Eps, const Eigen::MatrixXd& S, double lambda, double mu) const;

  /// local load vector: (f, cell basis)_T plus (g, face basis)_F on Neumann sides
  Eigen::VectorXd load_vector(const ProblemData& problem, int quad_degree) const;

  /// stiffness matrix of eps(.) on the vector P_{k+1} basis (used in tests)
  const Eigen::MatrixXd& strain_stiffness() const { return K_; }
  /// right-hand side operator of the potential reconstruction (used in tests)
  const Eigen::MatrixXd& potential_rhs() const { return B_; }
  /// constraint rows and their dof realization (scaled by 1/|T|)
  const Eigen::MatrixXd& constraints() const { return C_; }
  const Eigen::MatrixXd& constraint_rhs() const { return D_; }

 private:
  const Triangulation& mesh_;
  int element_;
  const MeshBases& bases_;
  LocalDofLayout layout_;
  QuadRule cell_rule_;
  std::array<QuadRule, 3> face_rules_;
  std::array<Vec2, 3> normals_;
  std::array<double, 3> face_len_;
  double area_ = 0.0, diameter_ = 0.0;

  Eigen::MatrixXd K_, B_, C_, D_;
  // trace projections P_k(F) <- cell basis (leading columns select lower degree)
  std::array<Eigen::MatrixXd, 3> trace_;

  void build_potential_system();
};

/// Build every element operator (in parallel over elements).
std::vector<ElementOperators> build_operators(const Triangulation& mesh, const MeshBases& bases,
                                              const DofMap& dofmap, const Material& material);

struct HhoNorms {
  double norm_h = 0.0;       ///< discrete energy norm (2-norm of strains + face jumps)
  double seminorm_s = 0.0;   ///< mu-weighted stabilization seminorm
  double seminorm_s_hat = 0.0;  ///< unweighted stabilization seminorm
  double norm_ah = 0.0;      ///< norm induced by the discrete bilinear form
};

HhoNorms hho_norms(const Triangulation& mesh, const MeshBases& bases, const std::vector<ElementOperators>& ops,
                   const Material& material, const HhoFunction& vh);

}  // namespace hho

#endif
