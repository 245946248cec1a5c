// Planar simplicial triangulations with boundary labels, side topology and
// newest-vertex-bisection refinement.

#ifndef HHO_MESH_HPP
#define HHO_MESH_HPP

#include <Eigen/Dense>
#include <array>
#include <map>
#include <string>
#include <vector>

namespace hho {

using Vec2 = Eigen::Vector2d;

enum class SideLabel { Interior, Dirichlet, Neumann };

/// One mesh side (edge). For interior sides the fixed normal is the outward
/// normal of the adjacent element t_plus; t_minus sees -normal. Boundary
/// sides carry only t_plus and the outward normal of the domain.
struct Side {
  int a = -1, b = -1;  ///< vertex ids
  SideLabel label = SideLabel::Interior;
  Vec2 normal = Vec2::Zero();
  double length = 0.0;
  int t_plus = -1;
  int t_minus = -1;

  bool is_boundary() const { return t_minus < 0; }
};

/// Per-element geometric data; normal[i] is the outward unit normal of the
/// edge opposite local vertex i.
struct ElementGeometry {
  double diameter = 0.0;
  double area = 0.0;
  Vec2 centroid = Vec2::Zero();
  std::array<Vec2, 3> normal;
  std::array<double, 3> edge_length;
};

/// Conforming triangulation. Triangles are stored counterclockwise with local
/// vertex 0 opposite the refinement edge (the "newest vertex" convention), so
/// the refinement edge of element e is (tri[e][1], tri[e][2]). Instances are
/// immutable after construction; refinement returns a new mesh.
class Triangulation {
 public:
  using BoundaryLabels = std::map<std::pair<int, int>, SideLabel>;

  /// Validates conformity, orientation, labels and computes the side topology.
  /// boundary: map from sorted vertex pair to label, one entry per boundary edge.
  Triangulation(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
                const BoundaryLabels& boundary, std::vector<int> generation = {});

  // named benchmark meshes
  static Triangulation unit_square();
  static Triangulation cooks_membrane();
  static Triangulation lshape_rotated();
  static Triangulation named(const std::string& id);  ///< one of square|cooks|lshape or a file path

  static Triangulation read_file(const std::string& path);
  void write_file(const std::string& path) const;

  /// Bisect every marked element at least twice (all three edges split) and
  /// recursively refine neighbours until the result is conforming.
  Triangulation refine_nvb(const std::vector<int>& marked) const;

  /// refine_nvb with every element marked: each parent becomes 4 children.
  Triangulation uniform_refine() const;

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_elements() const { return static_cast<int>(tri_.size()); }
  int n_sides() const { return static_cast<int>(sides_.size()); }

  const Vec2& vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3>& element(int e) const { return tri_[e]; }
  const Side& side(int s) const { return sides_[s]; }
  /// side id opposite local vertex i of element e
  const std::array<int, 3>& element_sides(int e) const { return tri_sides_[e]; }
  const ElementGeometry& geometry(int e) const { return geom_[e]; }
  int generation(int e) const { return generation_[e]; }

  std::array<Vec2, 3> element_vertices(int e) const {
    return {vertices_[tri_[e][0]], vertices_[tri_[e][1]], vertices_[tri_[e][2]]};
  }

  double h_max() const;
  double min_angle() const;  ///< smallest interior angle over all elements (radians)
  int n_dirichlet_sides() const { return n_dirichlet_; }
  int n_neumann_sides() const { return n_neumann_; }

  /// elements sharing each vertex, in ascending element order
  std::vector<std::vector<int>> vertex_star() const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> tri_;
  std::vector<int> generation_;
  std::vector<Side> sides_;
  std::vector<std::array<int, 3>> tri_sides_;
  std::vector<ElementGeometry> geom_;
  int n_dirichlet_ = 0;
  int n_neumann_ = 0;
};

}  // namespace hho

#endif
