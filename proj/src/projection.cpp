#include "hho/projection.hpp"

namespace hho {

MeshBases MeshBases::build(const Triangulation& mesh, int cell_degree, int face_degree) {
  MeshBases bases;
  bases.cell_degree = cell_degree;
  bases.face_degree = face_degree;
  bases.cell.reserve(mesh.n_elements());
  bases.face.reserve(mesh.n_sides());
  for (int e = 0; e < mesh.n_elements(); e++) bases.cell.emplace_back(mesh, e, cell_degree);
  for (int s = 0; s < mesh.n_sides(); s++) bases.face.emplace_back(mesh, s, face_degree);
  return bases;
}

double PiecewisePolyField::value_scalar(int e, const CellBasis& basis, const Vec2& x) const {
  const int n = block_size();
  return basis.values(x).head(n) * coeff[e].head(n);
}

Vec2 PiecewisePolyField::value_vector(int e, const CellBasis& basis, const Vec2& x) const {
  const int n = block_size();
  Eigen::RowVectorXd phi = basis.values(x).head(n);
  return Vec2(phi * coeff[e].segment(0, n), phi * coeff[e].segment(n, n));
}

Mat2 PiecewisePolyField::value_matrix(int e, const CellBasis& basis, const Vec2& x) const {
  const int n = block_size();
  Eigen::RowVectorXd phi = basis.values(x).head(n);
  Mat2 m;
  m(0, 0) = phi * coeff[e].segment(0, n);
  m(0, 1) = phi * coeff[e].segment(n, n);
  m(1, 0) = phi * coeff[e].segment(2 * n, n);
  m(1, 1) = phi * coeff[e].segment(3 * n, n);
  return m;
}

Mat2 PiecewisePolyField::gradient_vector(int e, const CellBasis& basis, const Vec2& x) const {
  const int n = block_size();
  Eigen::MatrixXd grad = basis.gradients(x).topRows(n);
  Mat2 g;
  g(0, 0) = coeff[e].segment(0, n).dot(grad.col(0));
  g(0, 1) = coeff[e].segment(0, n).dot(grad.col(1));
  g(1, 0) = coeff[e].segment(n, n).dot(grad.col(0));
  g(1, 1) = coeff[e].segment(n, n).dot(grad.col(1));
  return g;
}

Vec2 PiecewisePolyField::divergence_matrix(int e, const CellBasis& basis, const Vec2& x) const {
  const int n = block_size();
  Eigen::MatrixXd grad = basis.gradients(x).topRows(n);
  return Vec2(coeff[e].segment(0, n).dot(grad.col(0)) + coeff[e].segment(n, n).dot(grad.col(1)),
              coeff[e].segment(2 * n, n).dot(grad.col(0)) + coeff[e].segment(3 * n, n).dot(grad.col(1)));
}

double PiecewisePolyField::l2_norm(const Triangulation& mesh) const {
  double s = 0.0;
  for (int e = 0; e < static_cast<int>(coeff.size()); e++) s += mesh.geometry(e).area * coeff[e].squaredNorm();
  return std::sqrt(s);
}

Eigen::VectorXd project_cell_scalar(const Triangulation& mesh, int element, const CellBasis& basis,
                                    const ScalarFn& f, int degree, int quad_degree) {
  const int n = dim_pk_2d(degree);
  auto p = mesh.element_vertices(element);
  QuadRule rule = triangle_rule(p[0], p[1], p[2], quad_degree);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  const double inv_measure = 1.0 / basis.measure();
  for (std::size_t q = 0; q < rule.size(); q++) {
    Eigen::RowVectorXd phi = basis.values(rule.points[q]).head(n);
    c += (rule.weights[q] * inv_measure * f(rule.points[q])) * phi.transpose();
  }
  return c;
}

Eigen::VectorXd project_cell_vector(const Triangulation& mesh, int element, const CellBasis& basis,
                                    const VectorFn& f, int degree, int quad_degree) {
  const int n = dim_pk_2d(degree);
  auto p = mesh.element_vertices(element);
  QuadRule rule = triangle_rule(p[0], p[1], p[2], quad_degree);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * n);
  const double inv_measure = 1.0 / basis.measure();
  for (std::size_t q = 0; q < rule.size(); q++) {
    Eigen::RowVectorXd phi = basis.values(rule.points[q]).head(n);
    Vec2 val = f(rule.points[q]);
    c.segment(0, n) += (rule.weights[q] * inv_measure * val.x()) * phi.transpose();
    c.segment(n, n) += (rule.weights[q] * inv_measure * val.y()) * phi.transpose();
  }
  return c;
}

Eigen::VectorXd project_cell_matrix(const Triangulation& mesh, int element, const CellBasis& basis,
                                    const MatrixFn& f, int degree, int quad_degree) {
  const int n = dim_pk_2d(degree);
  auto p = mesh.element_vertices(element);
  QuadRule rule = triangle_rule(p[0], p[1], p[2], quad_degree);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(4 * n);
  const double inv_measure = 1.0 / basis.measure();
  for (std::size_t q = 0; q < rule.size(); q++) {
    Eigen::RowVectorXd phi = basis.values(rule.points[q]).head(n);
    Mat2 val = f(rule.points[q]);
    for (int r = 0; r < 2; r++)
      for (int col = 0; col < 2; col++)
        c.segment((2 * r + col) * n, n) += (rule.weights[q] * inv_measure * val(r, col)) * phi.transpose();
  }
  return c;
}

Eigen::VectorXd project_face_scalar(const Triangulation& mesh, int side, const FaceBasis& basis, const ScalarFn& g,
                                    int degree, int quad_degree) {
  const int n = dim_pk_1d(degree);
  const Side& s = mesh.side(side);
  QuadRule rule = segment_rule(mesh.vertex(s.a), mesh.vertex(s.b), quad_degree);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  const double inv_measure = 1.0 / basis.measure();
  for (std::size_t q = 0; q < rule.size(); q++) {
    Eigen::RowVectorXd chi = basis.values(rule.points[q]).head(n);
    c += (rule.weights[q] * inv_measure * g(rule.points[q])) * chi.transpose();
  }
  return c;
}

Eigen::VectorXd project_face_vector(const Triangulation& mesh, int side, const FaceBasis& basis, const VectorFn& g,
                                    int degree, int quad_degree) {
  const int n = dim_pk_1d(degree);
  const Side& s = mesh.side(side);
  QuadRule rule = segment_rule(mesh.vertex(s.a), mesh.vertex(s.b), quad_degree);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * n);
  const double inv_measure = 1.0 / basis.measure();
  for (std::size_t q = 0; q < rule.size(); q++) {
    Eigen::RowVectorXd chi = basis.values(rule.points[q]).head(n);
    Vec2 val = g(rule.points[q]);
    c.segment(0, n) += (rule.weights[q] * inv_measure * val.x()) * chi.transpose();
    c.segment(n, n) += (rule.weights[q] * inv_measure * val.y()) * chi.transpose();
  }
  return c;
}

double oscillation_cell_sq(const Triangulation& mesh, int element, const VectorFn& f, int k, int quad_degree) {
  CellBasis basis(mesh, element, k);
  auto p = mesh.element_vertices(element);
  QuadRule rule = triangle_rule(p[0], p[1], p[2], quad_degree);
  const int n = basis.size();
  Eigen::VectorXd cx = Eigen::VectorXd::Zero(n), cy = Eigen::VectorXd::Zero(n);
  const double inv_measure = 1.0 / basis.measure();
  std::vector<Vec2> vals(rule.size());
  for (std::size_t q = 0; q < rule.size(); q++) {
    vals[q] = f(rule.points[q]);
    Eigen::RowVectorXd phi = basis.values(rule.points[q]);
    cx += (rule.weights[q] * inv_measure * vals[q].x()) * phi.transpose();
    cy += (rule.weights[q] * inv_measure * vals[q].y()) * phi.transpose();
  }
  double err = 0.0;
  for (std::size_t q = 0; q < rule.size(); q++) {
    Eigen::RowVectorXd phi = basis.values(rule.points[q]);
    double rx = vals[q].x() - phi * cx;
    double ry = vals[q].y() - phi * cy;
    err += rule.weights[q] * (rx * rx + ry * ry);
  }
  double h = mesh.geometry(element).diameter;
  return h * h * std::max(err, 0.0);
}

double oscillation_volume(const Triangulation& mesh, const VectorFn& f, int k, int quad_degree) {
  double sq = 0.0;
  for (int e = 0; e < mesh.n_elements(); e++) sq += oscillation_cell_sq(mesh, e, f, k, quad_degree);
  return std::sqrt(sq);
}

double oscillation_face_sq(const Triangulation& mesh, int side, const VectorFn& g, int k, int quad_degree) {
  const Side& s = mesh.side(side);
  FaceBasis basis(mesh, side, k);
  QuadRule rule = segment_rule(mesh.vertex(s.a), mesh.vertex(s.b), quad_degree);
  const int n = basis.size();
  Eigen::VectorXd cx = Eigen::VectorXd::Zero(n), cy = Eigen::VectorXd::Zero(n);
  const double inv_measure = 1.0 / basis.measure();
  std::vector<Vec2> vals(rule.size());
  for (std::size_t q = 0; q < rule.size(); q++) {
    vals[q] = g(rule.points[q]);
    Eigen::RowVectorXd chi = basis.values(rule.points[q]);
    cx += (rule.weights[q] * inv_measure * vals[q].x()) * chi.transpose();
    cy += (rule.weights[q] * inv_measure * vals[q].y()) * chi.transpose();
  }
  double err = 0.0;
  for (std::size_t q = 0; q < rule.size(); q++) {
    Eigen::RowVectorXd chi = basis.values(rule.points[q]);
    double rx = vals[q].x() - chi * cx;
    double ry = vals[q].y() - chi * cy;
    err += rule.weights[q] * (rx * rx + ry * ry);
  }
  return s.length * std::max(err, 0.0);
}

double oscillation_neumann(const Triangulation& mesh, const VectorFn& g, int k, int quad_degree) {
  double sq = 0.0;
  for (int s = 0; s < mesh.n_sides(); s++)
    if (mesh.side(s).label == SideLabel::Neumann) sq += oscillation_face_sq(mesh, s, g, k, quad_degree);
  return std::sqrt(sq);
}

}  // namespace hho
