// Scalar polynomial bases on triangles and segments: scaled monomials,
// orthonormalized per element through a Cholesky factorization of the Gram
// matrix so that (1/|M|) (phi_i, phi_j)_{L2(M)} = delta_ij.

#ifndef HHO_BASIS_HPP
#define HHO_BASIS_HPP

#include <Eigen/Dense>

#include "hho/mesh.hpp"
#include "hho/quadrature.hpp"

namespace hho {

/// dim P_k on a triangle
inline int dim_pk_2d(int k) { return k < 0 ? 0 : (k + 1) * (k + 2) / 2; }
/// dim P_k on a segment
inline int dim_pk_1d(int k) { return k < 0 ? 0 : k + 1; }

/// Orthonormalized basis of P_degree on a triangle. Monomials in the scaled
/// coordinates (x - centroid)/h_T are ordered by total degree, so the leading
/// dim P_m functions form an orthonormal basis of P_m for every m <= degree.
class CellBasis {
 public:
  CellBasis(const Vec2& v0, const Vec2& v1, const Vec2& v2, int degree);
  CellBasis(const Triangulation& mesh, int element, int degree);

  int degree() const { return degree_; }
  int size() const { return dim_pk_2d(degree_); }
  const Vec2& center() const { return center_; }
  double scale() const { return scale_; }
  /// squared L2 norm of each basis function: (phi_i, phi_j)_{L2} = measure * delta_ij
  double measure() const { return measure_; }

  /// values of all basis functions at x; row vector of length size()
  Eigen::RowVectorXd values(const Vec2& x) const;
  /// gradients at x: size() x 2, row i = grad phi_i
  Eigen::MatrixXd gradients(const Vec2& x) const;
  /// second derivatives at x: size() x 3 with columns (dxx, dxy, dyy)
  Eigen::MatrixXd second_derivatives(const Vec2& x) const;

 private:
  void build(const Vec2& v0, const Vec2& v1, const Vec2& v2);
  Eigen::RowVectorXd monomials(const Vec2& x) const;

  int degree_;
  Vec2 center_;
  double scale_ = 1.0;
  double measure_ = 0.0;
  std::vector<std::array<int, 2>> powers_;
  Eigen::MatrixXd transform_;  // phi(x)^T = m(x)^T * transform_
};

/// Orthonormalized basis of P_degree on a segment, monomials in the scaled
/// arclength coordinate ((x - midpoint) . tangent)/h_F.
class FaceBasis {
 public:
  FaceBasis(const Vec2& a, const Vec2& b, int degree);
  FaceBasis(const Triangulation& mesh, int side, int degree);

  int degree() const { return degree_; }
  int size() const { return degree_ + 1; }
  double measure() const { return measure_; }
  const Vec2& tangent() const { return tangent_; }

  Eigen::RowVectorXd values(const Vec2& x) const;

 private:
  int degree_;
  Vec2 mid_;
  Vec2 tangent_;
  double scale_ = 1.0;
  double measure_ = 0.0;
  Eigen::MatrixXd transform_;
};

}  // namespace hho

#endif
