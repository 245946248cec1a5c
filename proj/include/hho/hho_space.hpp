// Discrete HHO space: local/global degree-of-freedom layout, coefficient
// vectors with Dirichlet face data, and the canonical interpolation.

#ifndef HHO_SPACE_HPP
#define HHO_SPACE_HPP

#include <Eigen/Dense>
#include <memory>

#include "hho/problem.hpp"
#include "hho/projection.hpp"

namespace hho {

/// Scheme variant: equal-order space with the classic or the alternative
/// stabilization, or the mixed-order space with Lehrenfeld-Schoberl penalty.
enum class SchemeVariant { Classic, Tilde, Hdg };

SchemeVariant variant_from_string(const std::string& s);
std::string to_string(SchemeVariant v);

/// cell polynomial degree of the variant for face degree k
inline int cell_degree_of(SchemeVariant v, int k) { return v == SchemeVariant::Hdg ? k + 1 : k; }

/// Local unknown layout of one element: cell block first, then one block per
/// side in local side order. Dirichlet faces are part of the layout but
/// flagged as constrained.
struct LocalDofLayout {
  int k = 1;
  int cell_degree = 1;
  int n_cell = 0;
  int n_face = 0;
  std::array<int, 3> side_ids = {-1, -1, -1};
  std::array<bool, 3> side_dirichlet = {false, false, false};

  int n_total() const { return n_cell + 3 * n_face; }
  int cell_offset() const { return 0; }
  int face_offset(int i) const { return n_cell + i * n_face; }
};

/// Global numbering: all cell blocks first, then the free (non-Dirichlet)
/// face blocks. Dirichlet faces carry prescribed coefficients instead.
class DofMap {
 public:
  DofMap(const Triangulation& mesh, int k, SchemeVariant variant);

  int k() const { return k_; }
  SchemeVariant variant() const { return variant_; }
  int cell_degree() const { return cell_degree_; }
  int cell_block_size() const { return n_cell_block_; }
  int face_block_size() const { return n_face_block_; }

  int n_elements() const { return n_elements_; }
  int n_sides() const { return static_cast<int>(free_face_index_.size()); }
  int n_free_faces() const { return n_free_faces_; }
  long n_cell_dofs() const { return static_cast<long>(n_elements_) * n_cell_block_; }
  long n_face_dofs() const { return static_cast<long>(n_free_faces_) * n_face_block_; }
  /// dimension of the discrete space (unknowns before condensation)
  long n_dofs() const { return n_cell_dofs() + n_face_dofs(); }

  bool is_dirichlet(int side) const { return free_face_index_[side] < 0; }
  /// index of the side among free faces, -1 for Dirichlet sides
  int free_face_index(int side) const { return free_face_index_[side]; }
  long cell_offset(int e) const { return static_cast<long>(e) * n_cell_block_; }
  /// offset of a free face block in the uncondensed unknown vector
  long face_offset(int side) const { return n_cell_dofs() + static_cast<long>(free_face_index_[side]) * n_face_block_; }

  LocalDofLayout layout(const Triangulation& mesh, int e) const;

 private:
  int k_, cell_degree_;
  SchemeVariant variant_;
  int n_cell_block_, n_face_block_;
  int n_elements_ = 0;
  int n_free_faces_ = 0;
  std::vector<int> free_face_index_;
};

/// Coefficient vector over cell and free-face blocks plus stored Dirichlet
/// face coefficients.
struct HhoFunction {
  std::shared_ptr<const DofMap> dofmap;
  Eigen::VectorXd x;                              ///< cells + free faces
  std::vector<Eigen::VectorXd> dirichlet_values;  ///< per side; empty unless Dirichlet

  explicit HhoFunction(std::shared_ptr<const DofMap> map)
      : dofmap(std::move(map)),
        x(Eigen::VectorXd::Zero(dofmap->n_dofs())),
        dirichlet_values(dofmap->n_sides()) {
    for (int s = 0; s < dofmap->n_sides(); s++)
      if (dofmap->is_dirichlet(s)) dirichlet_values[s] = Eigen::VectorXd::Zero(dofmap->face_block_size());
  }

  Eigen::VectorBlock<Eigen::VectorXd> cell_block(int e) {
    return x.segment(dofmap->cell_offset(e), dofmap->cell_block_size());
  }
  Eigen::VectorXd cell_block(int e) const { return x.segment(dofmap->cell_offset(e), dofmap->cell_block_size()); }
  Eigen::VectorXd face_block(int s) const {
    return dofmap->is_dirichlet(s) ? dirichlet_values[s] : x.segment(dofmap->face_offset(s), dofmap->face_block_size());
  }
  void set_face_block(int s, const Eigen::VectorXd& v) {
    if (dofmap->is_dirichlet(s))
      dirichlet_values[s] = v;
    else
      x.segment(dofmap->face_offset(s), dofmap->face_block_size()) = v;
  }

  /// gathered local dof vector of one element (cell block + its three faces)
  Eigen::VectorXd local_dofs(const Triangulation& mesh, int e) const;
};

/// Canonical interpolation I v = (Pi_T^cell v, Pi_F^k v); Dirichlet faces are
/// populated as well.
HhoFunction interpolate(const Triangulation& mesh, const MeshBases& bases, std::shared_ptr<const DofMap> dofmap,
                        const VectorFn& v, int quad_degree = -1);

}  // namespace hho

#endif
