#include "hho/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hho {

namespace {

std::pair<int, int> sorted_pair(int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

double cross2(const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); }

// Rotate triangle indices so that local vertex 0 is opposite the longest edge;
// ties resolved by the lexicographically smallest edge vertex pair.
std::array<int, 3> rotate_to_longest_edge(const std::array<int, 3>& t, const std::vector<Vec2>& verts) {
  double best_len = -1.0;
  int best = 0;
  for (int i = 0; i < 3; i++) {
    int a = t[(i + 1) % 3], b = t[(i + 2) % 3];
    double len = (verts[a] - verts[b]).norm();
    if (len > best_len * (1.0 + 1e-12)) {
      best_len = len;
      best = i;
    } else if (len > best_len * (1.0 - 1e-12)) {
      int ca = t[(best + 1) % 3], cb = t[(best + 2) % 3];
      if (sorted_pair(a, b) < sorted_pair(ca, cb)) best = i;
    }
  }
  return {t[best], t[(best + 1) % 3], t[(best + 2) % 3]};
}

}  // namespace

Triangulation::Triangulation(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
                             const BoundaryLabels& boundary, std::vector<int> generation)
    : vertices_(std::move(vertices)), tri_(std::move(triangles)), generation_(std::move(generation)) {
  const int nv = n_vertices();
  const int nt = n_elements();
  if (nt == 0) throw std::invalid_argument("mesh: empty triangulation");
  if (generation_.empty()) generation_.assign(nt, 0);
  if (static_cast<int>(generation_.size()) != nt) throw std::invalid_argument("mesh: generation size mismatch");

  geom_.resize(nt);
  for (int e = 0; e < nt; e++) {
    for (int i = 0; i < 3; i++)
      if (tri_[e][i] < 0 || tri_[e][i] >= nv) throw std::invalid_argument("mesh: vertex index out of range");
    const Vec2 p0 = vertices_[tri_[e][0]], p1 = vertices_[tri_[e][1]], p2 = vertices_[tri_[e][2]];
    double area2 = cross2(p1 - p0, p2 - p0);
    if (!(area2 > 0.0)) throw std::invalid_argument("mesh: degenerate or clockwise triangle");
    ElementGeometry& g = geom_[e];
    g.area = 0.5 * area2;
    g.centroid = (p0 + p1 + p2) / 3.0;
    const std::array<Vec2, 3> p = {p0, p1, p2};
    g.diameter = 0.0;
    for (int i = 0; i < 3; i++) {
      Vec2 ta = p[(i + 1) % 3], tb = p[(i + 2) % 3];
      Vec2 d = tb - ta;
      g.edge_length[i] = d.norm();
      g.diameter = std::max(g.diameter, g.edge_length[i]);
      // outward normal of the edge opposite vertex i
      Vec2 n(d.y(), -d.x());
      n /= g.edge_length[i];
      if (n.dot(ta - p[i]) < 0.0) n = -n;
      g.normal[i] = n;
    }
  }

  // side topology: first-seen order over (element, local edge)
  std::map<std::pair<int, int>, int> edge_to_side;
  tri_sides_.assign(nt, {-1, -1, -1});
  for (int e = 0; e < nt; e++) {
    for (int i = 0; i < 3; i++) {
      int a = tri_[e][(i + 1) % 3], b = tri_[e][(i + 2) % 3];
      auto key = sorted_pair(a, b);
      auto it = edge_to_side.find(key);
      if (it == edge_to_side.end()) {
        Side s;
        s.a = key.first;
        s.b = key.second;
        s.length = (vertices_[a] - vertices_[b]).norm();
        s.t_plus = e;
        s.normal = geom_[e].normal[i];
        edge_to_side.emplace(key, n_sides());
        tri_sides_[e][i] = n_sides();
        sides_.push_back(s);
      } else {
        Side& s = sides_[it->second];
        if (s.t_minus >= 0) throw std::invalid_argument("mesh: non-conforming input (edge shared by >2 triangles)");
        s.t_minus = e;
        tri_sides_[e][i] = it->second;
      }
    }
  }

  // boundary labels
  std::size_t used = 0;
  for (auto& s : sides_) {
    if (s.is_boundary()) {
      auto it = boundary.find(sorted_pair(s.a, s.b));
      if (it == boundary.end()) throw std::invalid_argument("mesh: unlabeled boundary side");
      if (it->second == SideLabel::Interior) throw std::invalid_argument("mesh: interior label on boundary side");
      s.label = it->second;
      used++;
      if (s.label == SideLabel::Dirichlet)
        n_dirichlet_++;
      else
        n_neumann_++;
    }
  }
  if (used != boundary.size()) throw std::invalid_argument("mesh: label on non-boundary side");
  if (n_dirichlet_ == 0) throw std::invalid_argument("mesh: Dirichlet boundary must have positive measure");
}

double Triangulation::h_max() const {
  double h = 0.0;
  for (const auto& g : geom_) h = std::max(h, g.diameter);
  return h;
}

double Triangulation::min_angle() const {
  double amin = M_PI;
  for (int e = 0; e < n_elements(); e++) {
    auto p = element_vertices(e);
    for (int i = 0; i < 3; i++) {
      Vec2 u = p[(i + 1) % 3] - p[i], v = p[(i + 2) % 3] - p[i];
      double ang = std::atan2(std::abs(cross2(u, v)), u.dot(v));
      amin = std::min(amin, ang);
    }
  }
  return amin;
}

std::vector<std::vector<int>> Triangulation::vertex_star() const {
  std::vector<std::vector<int>> star(n_vertices());
  for (int e = 0; e < n_elements(); e++)
    for (int i = 0; i < 3; i++) star[tri_[e][i]].push_back(e);
  return star;
}

Triangulation Triangulation::refine_nvb(const std::vector<int>& marked) const {
  const int nt = n_elements();
  for (int e : marked)
    if (e < 0 || e >= nt) throw std::invalid_argument("refine_nvb: marked id out of range");
  if (marked.empty()) return *this;

  // Edge marking: all three edges of each marked element.
  std::set<std::pair<int, int>> marked_edges;
  for (int e : marked)
    for (int i = 0; i < 3; i++) marked_edges.insert(sorted_pair(tri_[e][(i + 1) % 3], tri_[e][(i + 2) % 3]));

  // Closure: an element with any marked edge must have its refinement edge marked.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e = 0; e < nt; e++) {
      auto ref_edge = sorted_pair(tri_[e][1], tri_[e][2]);
      if (marked_edges.count(ref_edge)) continue;
      bool any = marked_edges.count(sorted_pair(tri_[e][2], tri_[e][0])) ||
                 marked_edges.count(sorted_pair(tri_[e][0], tri_[e][1]));
      if (any) {
        marked_edges.insert(ref_edge);
        changed = true;
      }
    }
  }

  std::vector<Vec2> verts = vertices_;
  std::map<std::pair<int, int>, int> midpoint;
  for (const auto& edge : marked_edges) {
    midpoint[edge] = static_cast<int>(verts.size());
    verts.push_back(0.5 * (vertices_[edge.first] + vertices_[edge.second]));
  }

  std::vector<std::array<int, 3>> new_tri;
  std::vector<int> new_gen;
  auto emit = [&](const std::array<int, 3>& t, int gen) {
    new_tri.push_back(t);
    new_gen.push_back(gen);
  };
  // One bisection: children (m,t0,t1) and (m,t2,t0) inherit the parent edges
  // (t0,t1) and (t2,t0) as refinement edges.
  auto bisect_child = [&](const std::array<int, 3>& t, int gen) {
    auto it = midpoint.find(sorted_pair(t[1], t[2]));
    if (it == midpoint.end()) {
      emit(t, gen);
      return;
    }
    int m = it->second;
    emit({m, t[0], t[1]}, gen + 1);
    emit({m, t[2], t[0]}, gen + 1);
  };
  for (int e = 0; e < nt; e++) {
    const auto& t = tri_[e];
    auto it = midpoint.find(sorted_pair(t[1], t[2]));
    if (it == midpoint.end()) {
      emit(t, generation_[e]);
      continue;
    }
    int m = it->second;
    bisect_child({m, t[0], t[1]}, generation_[e] + 1);
    bisect_child({m, t[2], t[0]}, generation_[e] + 1);
  }

  // Boundary labels: split edges inherit the parent label.
  BoundaryLabels labels;
  for (const auto& s : sides_) {
    if (!s.is_boundary()) continue;
    auto key = sorted_pair(s.a, s.b);
    auto it = midpoint.find(key);
    if (it == midpoint.end()) {
      labels[key] = s.label;
    } else {
      labels[sorted_pair(s.a, it->second)] = s.label;
      labels[sorted_pair(it->second, s.b)] = s.label;
    }
  }
  return Triangulation(std::move(verts), std::move(new_tri), labels, std::move(new_gen));
}

Triangulation Triangulation::uniform_refine() const {
  std::vector<int> all(n_elements());
  for (int e = 0; e < n_elements(); e++) all[e] = e;
  return refine_nvb(all);
}

Triangulation Triangulation::unit_square() {
  std::vector<Vec2> v = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  std::vector<std::array<int, 3>> t = {{0, 1, 2}, {0, 2, 3}};
  for (auto& tr : t) tr = rotate_to_longest_edge(tr, v);
  BoundaryLabels labels;
  labels[{0, 1}] = SideLabel::Dirichlet;
  labels[{1, 2}] = SideLabel::Dirichlet;
  labels[{2, 3}] = SideLabel::Dirichlet;
  labels[{0, 3}] = SideLabel::Dirichlet;
  return Triangulation(std::move(v), std::move(t), labels);
}

Triangulation Triangulation::cooks_membrane() {
  std::vector<Vec2> v = {{0, 0}, {48, 44}, {48, 60}, {0, 44}};
  // split along the line y = 44
  std::vector<std::array<int, 3>> t = {{0, 1, 3}, {1, 2, 3}};
  for (auto& tr : t) tr = rotate_to_longest_edge(tr, v);
  BoundaryLabels labels;
  labels[{0, 3}] = SideLabel::Dirichlet;  // clamped left side
  labels[{0, 1}] = SideLabel::Neumann;
  labels[{1, 2}] = SideLabel::Neumann;  // sheared right side
  labels[{2, 3}] = SideLabel::Neumann;
  return Triangulation(std::move(v), std::move(t), labels);
}

Triangulation Triangulation::lshape_rotated() {
  // Rotated L-shape with the reentrant corner at the origin; the long edge
  // from (2,0) to (0,2) carries the extra point (1,1) so that a fan of six
  // triangles from the corner triangulates the domain.
  std::vector<Vec2> v = {{0, 0}, {-1, -1}, {0, -2}, {1, -1}, {2, 0}, {1, 1}, {0, 2}, {-1, 1}};
  std::vector<std::array<int, 3>> t = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 6}, {0, 6, 7}};
  for (auto& tr : t) tr = rotate_to_longest_edge(tr, v);
  BoundaryLabels labels;
  labels[{0, 1}] = SideLabel::Neumann;  // the two edges at the reentrant corner
  labels[{0, 7}] = SideLabel::Neumann;
  labels[{1, 2}] = SideLabel::Dirichlet;
  labels[{2, 3}] = SideLabel::Dirichlet;
  labels[{3, 4}] = SideLabel::Dirichlet;
  labels[{4, 5}] = SideLabel::Dirichlet;
  labels[{5, 6}] = SideLabel::Dirichlet;
  labels[{6, 7}] = SideLabel::Dirichlet;
  return Triangulation(std::move(v), std::move(t), labels);
}

Triangulation Triangulation::named(const std::string& id) {
  if (id == "square" || id == "unit_square") return unit_square();
  if (id == "cooks" || id == "cook") return cooks_membrane();
  if (id == "lshape") return lshape_rotated();
  return read_file(id);
}

Triangulation Triangulation::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("mesh: cannot open '" + path + "'");
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (!in || magic != "hho-mesh" || version != 1) throw std::runtime_error("mesh: bad header in '" + path + "'");
  int nv = 0, nt = 0, nb = 0;
  in >> nv >> nt >> nb;
  if (!in || nv < 3 || nt < 1 || nb < 3) throw std::runtime_error("mesh: bad counts in '" + path + "'");
  std::vector<Vec2> verts(nv);
  for (auto& p : verts) in >> p.x() >> p.y();
  std::vector<std::array<int, 3>> tris(nt);
  for (auto& t : tris) in >> t[0] >> t[1] >> t[2];
  BoundaryLabels labels;
  for (int i = 0; i < nb; i++) {
    int a, b;
    std::string lab;
    in >> a >> b >> lab;
    if (!in) throw std::runtime_error("mesh: truncated file '" + path + "'");
    if (lab == "D")
      labels[sorted_pair(a, b)] = SideLabel::Dirichlet;
    else if (lab == "N")
      labels[sorted_pair(a, b)] = SideLabel::Neumann;
    else
      throw std::runtime_error("mesh: unknown label '" + lab + "'");
  }
  if (!in) throw std::runtime_error("mesh: truncated file '" + path + "'");
  return Triangulation(std::move(verts), std::move(tris), labels);
}

void Triangulation::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("mesh: cannot write '" + path + "'");
  int nb = n_dirichlet_ + n_neumann_;
  out << "hho-mesh 1\n" << n_vertices() << ' ' << n_elements() << ' ' << nb << '\n';
  char buf[80];
  for (const auto& p : vertices_) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", p.x(), p.y());
    out << buf;
  }
  for (const auto& t : tri_) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& s : sides_) {
    if (!s.is_boundary()) continue;
    out << s.a << ' ' << s.b << ' ' << (s.label == SideLabel::Dirichlet ? 'D' : 'N') << '\n';
  }
}

}  // namespace hho
