#include "hho/hho_space.hpp"

#include <stdexcept>

namespace hho {

SchemeVariant variant_from_string(const std::string& s) {
  if (s == "classic") return SchemeVariant::Classic;
  if (s == "tilde") return SchemeVariant::Tilde;
  if (s == "hdg") return SchemeVariant::Hdg;
  throw std::invalid_argument("unknown scheme variant '" + s + "'");
}

std::string to_string(SchemeVariant v) {
  switch (v) {
    case SchemeVariant::Classic: return "classic";
    case SchemeVariant::Tilde: return "tilde";
    default: return "hdg";
  }
}

DofMap::DofMap(const Triangulation& mesh, int k, SchemeVariant variant)
    : k_(k), cell_degree_(cell_degree_of(variant, k)), variant_(variant) {
  if (k < 1) throw std::invalid_argument("DofMap: the method requires k >= 1");
  n_cell_block_ = 2 * dim_pk_2d(cell_degree_);
  n_face_block_ = 2 * dim_pk_1d(k);
  n_elements_ = mesh.n_elements();
  free_face_index_.assign(mesh.n_sides(), -1);
  for (int s = 0; s < mesh.n_sides(); s++) {
    if (mesh.side(s).label != SideLabel::Dirichlet) free_face_index_[s] = n_free_faces_++;
  }
}

LocalDofLayout DofMap::layout(const Triangulation& mesh, int e) const {
  LocalDofLayout l;
  l.k = k_;
  l.cell_degree = cell_degree_;
  l.n_cell = n_cell_block_;
  l.n_face = n_face_block_;
  l.side_ids = mesh.element_sides(e);
  for (int i = 0; i < 3; i++) l.side_dirichlet[i] = is_dirichlet(l.side_ids[i]);
  return l;
}

Eigen::VectorXd HhoFunction::local_dofs(const Triangulation& mesh, int e) const {
  const int nc = dofmap->cell_block_size();
  const int nf = dofmap->face_block_size();
  Eigen::VectorXd loc(nc + 3 * nf);
  loc.segment(0, nc) = cell_block(e);
  const auto& sides = mesh.element_sides(e);
  for (int i = 0; i < 3; i++) loc.segment(nc + i * nf, nf) = face_block(sides[i]);
  return loc;
}

HhoFunction interpolate(const Triangulation& mesh, const MeshBases& bases, std::shared_ptr<const DofMap> dofmap,
                        const VectorFn& v, int quad_degree) {
  const int k = dofmap->k();
  if (quad_degree < 0) quad_degree = 2 * (k + 1) + 2;
  HhoFunction fn(dofmap);
  for (int e = 0; e < mesh.n_elements(); e++)
    fn.cell_block(e) = project_cell_vector(mesh, e, bases.cell[e], v, dofmap->cell_degree(), quad_degree);
  for (int s = 0; s < mesh.n_sides(); s++)
    fn.set_face_block(s, project_face_vector(mesh, s, bases.face[s], v, k, quad_degree));
  return fn;
}

}  // namespace hho
