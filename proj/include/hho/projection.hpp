// L2 projections onto cell/face polynomial spaces, piecewise polynomial
// fields and data oscillation terms.

#ifndef HHO_PROJECTION_HPP
#define HHO_PROJECTION_HPP

#include <Eigen/Dense>
#include <functional>

#include "hho/basis.hpp"
#include "hho/mesh.hpp"

namespace hho {

using Mat2 = Eigen::Matrix2d;
using ScalarFn = std::function<double(const Vec2&)>;
using VectorFn = std::function<Vec2(const Vec2&)>;
using MatrixFn = std::function<Mat2(const Vec2&)>;

/// Per-element polynomial bases shared across the solver. The cell basis has
/// degree cell_degree; lower-degree spaces are its leading subsets.
struct MeshBases {
  int cell_degree = 0;
  int face_degree = 0;
  std::vector<CellBasis> cell;
  std::vector<FaceBasis> face;

  static MeshBases build(const Triangulation& mesh, int cell_degree, int face_degree);
};

/// Coefficients of one polynomial per element against the orthonormal cell
/// basis, with comps scalar components stored block-wise (matrix fields use
/// the four components 00,01,10,11 in row-major order).
struct PiecewisePolyField {
  int degree = 0;
  int comps = 1;
  std::vector<Eigen::VectorXd> coeff;

  PiecewisePolyField() = default;
  PiecewisePolyField(const Triangulation& mesh, int degree, int comps)
      : degree(degree), comps(comps), coeff(mesh.n_elements(), Eigen::VectorXd::Zero(comps * dim_pk_2d(degree))) {}

  int block_size() const { return dim_pk_2d(degree); }

  double value_scalar(int e, const CellBasis& basis, const Vec2& x) const;
  Vec2 value_vector(int e, const CellBasis& basis, const Vec2& x) const;
  Mat2 value_matrix(int e, const CellBasis& basis, const Vec2& x) const;
  Mat2 gradient_vector(int e, const CellBasis& basis, const Vec2& x) const;  ///< rows = components
  Vec2 divergence_matrix(int e, const CellBasis& basis, const Vec2& x) const;

  /// global L2 norm; the element measure enters through the basis orthonormality
  double l2_norm(const Triangulation& mesh) const;
};

/// L2 projections; the basis degree may exceed the projection degree, the
/// coefficients refer to its leading dim P_degree functions.
Eigen::VectorXd project_cell_scalar(const Triangulation& mesh, int element, const CellBasis& basis,
                                    const ScalarFn& f, int degree, int quad_degree);
Eigen::VectorXd project_cell_vector(const Triangulation& mesh, int element, const CellBasis& basis,
                                    const VectorFn& f, int degree, int quad_degree);
Eigen::VectorXd project_cell_matrix(const Triangulation& mesh, int element, const CellBasis& basis,
                                    const MatrixFn& f, int degree, int quad_degree);

Eigen::VectorXd project_face_scalar(const Triangulation& mesh, int side, const FaceBasis& basis, const ScalarFn& g,
                                    int degree, int quad_degree);
Eigen::VectorXd project_face_vector(const Triangulation& mesh, int side, const FaceBasis& basis, const VectorFn& g,
                                    int degree, int quad_degree);

/// osc(f,T)^2 = h_T^2 || f - Pi_T^k f ||_{L2(T)}^2 (same rule for projection and residual)
double oscillation_cell_sq(const Triangulation& mesh, int element, const VectorFn& f, int k, int quad_degree);
/// osc(f,T) over the whole mesh
double oscillation_volume(const Triangulation& mesh, const VectorFn& f, int k, int quad_degree);
/// h_F ||(1 - Pi_F^k) g||^2 for one side
double oscillation_face_sq(const Triangulation& mesh, int side, const VectorFn& g, int k, int quad_degree);
/// osc(g, F_N) over all Neumann sides
double oscillation_neumann(const Triangulation& mesh, const VectorFn& g, int k, int quad_degree);

}  // namespace hho

#endif
