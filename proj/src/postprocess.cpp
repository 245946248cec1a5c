#include "hho/postprocess.hpp"

namespace hho {

PiecewisePolyField discrete_strain(const Triangulation& mesh, const std::vector<ElementOperators>& ops,
                                   const HhoFunction& u) {
  const int k = u.dofmap->k();
  PiecewisePolyField eps(mesh, k, 4);
  for (int e = 0; e < mesh.n_elements(); e++) eps.coeff[e] = ops[e].Eps * u.local_dofs(mesh, e);
  return eps;
}

PiecewisePolyField discrete_stress(const Triangulation& mesh, const std::vector<ElementOperators>& ops,
                                   const Material& material, const HhoFunction& u) {
  PiecewisePolyField sigma = discrete_strain(mesh, ops, u);
  const int n = sigma.block_size();
  for (int e = 0; e < mesh.n_elements(); e++) {
    const double lambda = material.lambda(mesh, e);
    const double mu = material.mu(mesh, e);
    Eigen::VectorXd eps = sigma.coeff[e];
    Eigen::VectorXd tr = eps.segment(0, n) + eps.segment(3 * n, n);
    sigma.coeff[e].segment(0, n) = 2.0 * mu * eps.segment(0, n) + lambda * tr;
    sigma.coeff[e].segment(n, n) = 2.0 * mu * eps.segment(n, n);
    sigma.coeff[e].segment(2 * n, n) = 2.0 * mu * eps.segment(2 * n, n);
    sigma.coeff[e].segment(3 * n, n) = 2.0 * mu * eps.segment(3 * n, n) + lambda * tr;
  }
  return sigma;
}

PiecewisePolyField potential_field(const Triangulation& mesh, const std::vector<ElementOperators>& ops,
                                   const HhoFunction& u) {
  const int k = u.dofmap->k();
  PiecewisePolyField R(mesh, k + 1, 2);
  for (int e = 0; e < mesh.n_elements(); e++) R.coeff[e] = ops[e].R * u.local_dofs(mesh, e);
  return R;
}

ConformingField conforming_layout(const Triangulation& mesh, int degree) {
  if (degree < 1) throw std::invalid_argument("conforming_layout: degree must be >= 1");
  ConformingField field;
  field.degree = degree;
  const int n_edge = degree - 1;                          // interior nodes per edge
  const int n_int = (degree - 1) * (degree - 2) / 2;      // interior nodes per element
  const std::vector<double> gl = gauss_lobatto_01(degree + 1);

  field.node_pos.reserve(mesh.n_vertices() + n_edge * mesh.n_sides() + n_int * mesh.n_elements());
  for (int v = 0; v < mesh.n_vertices(); v++) field.node_pos.push_back(mesh.vertex(v));
  const int edge_base = mesh.n_vertices();
  for (int s = 0; s < mesh.n_sides(); s++) {
    const Vec2 a = mesh.vertex(mesh.side(s).a), b = mesh.vertex(mesh.side(s).b);
    for (int i = 1; i <= n_edge; i++) field.node_pos.push_back(a + gl[i] * (b - a));
  }
  const int int_base = edge_base + n_edge * mesh.n_sides();
  for (int e = 0; e < mesh.n_elements(); e++) {
    auto p = mesh.element_vertices(e);
    // interior principal lattice points
    for (int i = 1; i <= degree - 2; i++)
      for (int j = 1; i + j <= degree - 1; j++) {
        double l1 = static_cast<double>(i) / degree, l2 = static_cast<double>(j) / degree;
        field.node_pos.push_back(p[0] + l1 * (p[1] - p[0]) + l2 * (p[2] - p[0]));
      }
  }

  field.dirichlet_node.assign(field.node_pos.size(), false);
  for (int s = 0; s < mesh.n_sides(); s++) {
    if (mesh.side(s).label != SideLabel::Dirichlet) continue;
    field.dirichlet_node[mesh.side(s).a] = true;
    field.dirichlet_node[mesh.side(s).b] = true;
    for (int i = 0; i < n_edge; i++) field.dirichlet_node[edge_base + s * n_edge + i] = true;
  }

  field.element_nodes.resize(mesh.n_elements());
  for (int e = 0; e < mesh.n_elements(); e++) {
    auto& nodes = field.element_nodes[e];
    nodes.reserve(dim_pk_2d(degree));
    for (int i = 0; i < 3; i++) nodes.push_back(mesh.element(e)[i]);
    for (int i = 0; i < 3; i++)
      for (int j = 0; j < n_edge; j++) nodes.push_back(edge_base + mesh.element_sides(e)[i] * n_edge + j);
    for (int j = 0; j < n_int; j++) nodes.push_back(int_base + e * n_int + j);
  }
  field.value.assign(field.node_pos.size(), Vec2::Zero());
  return field;
}

PiecewisePolyField ConformingField::to_polyfield(const Triangulation& mesh, const MeshBases& bases) const {
  const int n = dim_pk_2d(degree);
  PiecewisePolyField out(mesh, degree, 2);
  for (int e = 0; e < mesh.n_elements(); e++) {
    const auto& nodes = element_nodes[e];
    Eigen::MatrixXd V(n, n);
    Eigen::MatrixXd vals(n, 2);
    for (int i = 0; i < n; i++) {
      V.row(i) = bases.cell[e].values(node_pos[nodes[i]]).head(n);
      vals(i, 0) = value[nodes[i]].x();
      vals(i, 1) = value[nodes[i]].y();
    }
    Eigen::MatrixXd c = Eigen::PartialPivLU<Eigen::MatrixXd>(V).solve(vals);
    out.coeff[e].segment(0, n) = c.col(0);
    out.coeff[e].segment(n, n) = c.col(1);
  }
  return out;
}

ConformingField nodal_average(const Triangulation& mesh, const MeshBases& bases, const PiecewisePolyField& Ru,
                              const VectorFn& u_dirichlet) {
  ConformingField field = conforming_layout(mesh, Ru.degree);
  std::vector<int> count(field.node_pos.size(), 0);
  for (int e = 0; e < mesh.n_elements(); e++) {
    for (int id : field.element_nodes[e]) {
      field.value[id] += Ru.value_vector(e, bases.cell[e], field.node_pos[id]);
      count[id]++;
    }
  }
  for (std::size_t i = 0; i < field.value.size(); i++) {
    if (count[i] > 1) field.value[i] /= count[i];
    if (field.dirichlet_node[i]) field.value[i] = u_dirichlet(field.node_pos[i]);
  }
  return field;
}

}  // namespace hho
