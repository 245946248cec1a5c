// Post-processed fields of the discrete solution: stress, potential
// reconstruction and its continuous nodal average.

#ifndef HHO_POSTPROCESS_HPP
#define HHO_POSTPROCESS_HPP

#include "hho/local_operators.hpp"

namespace hho {

/// sigma_h = C eps_h u_h, piecewise P_k, pointwise symmetric (4 components)
PiecewisePolyField discrete_stress(const Triangulation& mesh, const std::vector<ElementOperators>& ops,
                                   const Material& material, const HhoFunction& u);

/// eps_h u_h, piecewise P_k (4 components)
PiecewisePolyField discrete_strain(const Triangulation& mesh, const std::vector<ElementOperators>& ops,
                                   const HhoFunction& u);

/// R u_h, piecewise P_{k+1} vector field
PiecewisePolyField potential_field(const Triangulation& mesh, const std::vector<ElementOperators>& ops,
                                   const HhoFunction& u);

/// Continuous piecewise-P_degree vector field on Lagrange nodes (vertices,
/// Gauss-Lobatto edge nodes, interior lattice nodes).
struct ConformingField {
  int degree = 1;
  std::vector<Vec2> node_pos;
  std::vector<Vec2> value;
  std::vector<bool> dirichlet_node;
  std::vector<std::vector<int>> element_nodes;  ///< per element, dim P_degree node ids

  /// exact conversion to per-element polynomial coefficients
  PiecewisePolyField to_polyfield(const Triangulation& mesh, const MeshBases& bases) const;
};

/// Lagrange node layout of degree for a mesh (no values).
ConformingField conforming_layout(const Triangulation& mesh, int degree);

/// Averages the element traces of Ru at every free Lagrange node; nodes on
/// the Dirichlet boundary take the point values of u_D.
ConformingField nodal_average(const Triangulation& mesh, const MeshBases& bases, const PiecewisePolyField& Ru,
                              const VectorFn& u_dirichlet);

}  // namespace hho

#endif
