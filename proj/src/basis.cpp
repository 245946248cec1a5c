#include "hho/basis.hpp"

#include <stdexcept>

namespace hho {

CellBasis::CellBasis(const Vec2& v0, const Vec2& v1, const Vec2& v2, int degree) : degree_(degree) {
  build(v0, v1, v2);
}

CellBasis::CellBasis(const Triangulation& mesh, int element, int degree) : degree_(degree) {
  auto p = mesh.element_vertices(element);
  build(p[0], p[1], p[2]);
}

void CellBasis::build(const Vec2& v0, const Vec2& v1, const Vec2& v2) {
  if (degree_ < 0) throw std::invalid_argument("CellBasis: negative degree");
  center_ = (v0 + v1 + v2) / 3.0;
  scale_ = std::max({(v1 - v0).norm(), (v2 - v1).norm(), (v0 - v2).norm()});
  powers_.clear();
  for (int d = 0; d <= degree_; d++)
    for (int a = d; a >= 0; a--) powers_.push_back({a, d - a});

  QuadRule rule = triangle_rule(v0, v1, v2, 2 * degree_);
  measure_ = 0.0;
  for (double w : rule.weights) measure_ += w;

  const int n = size();
  // two orthonormalization passes keep the Gram defect at machine precision
  // also for high degrees on distorted elements
  transform_ = Eigen::MatrixXd::Identity(n, n);
  for (int pass = 0; pass < 2; pass++) {
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t q = 0; q < rule.size(); q++) {
      Eigen::RowVectorXd phi = monomials(rule.points[q]) * transform_;
      gram.noalias() += (rule.weights[q] / measure_) * (phi.transpose() * phi);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) throw std::runtime_error("CellBasis: singular Gram matrix");
    // phi_new = L^{-1} phi  =>  row transform multiplies by L^{-T} on the right
    Eigen::MatrixXd inv_u = Eigen::MatrixXd::Identity(n, n);
    llt.matrixU().solveInPlace(inv_u);
    transform_ = transform_ * inv_u;
  }
}

Eigen::RowVectorXd CellBasis::monomials(const Vec2& x) const {
  const int n = size();
  double px = (x.x() - center_.x()) / scale_;
  double py = (x.y() - center_.y()) / scale_;
  // powers by running product over the degree-lexicographic order
  Eigen::RowVectorXd m(n);
  std::vector<double> xp(degree_ + 1), yp(degree_ + 1);
  xp[0] = yp[0] = 1.0;
  for (int d = 1; d <= degree_; d++) {
    xp[d] = xp[d - 1] * px;
    yp[d] = yp[d - 1] * py;
  }
  for (int i = 0; i < n; i++) m(i) = xp[powers_[i][0]] * yp[powers_[i][1]];
  return m;
}

Eigen::RowVectorXd CellBasis::values(const Vec2& x) const { return monomials(x) * transform_; }

Eigen::MatrixXd CellBasis::gradients(const Vec2& x) const {
  const int n = size();
  double px = (x.x() - center_.x()) / scale_;
  double py = (x.y() - center_.y()) / scale_;
  std::vector<double> xp(degree_ + 1), yp(degree_ + 1);
  xp[0] = yp[0] = 1.0;
  for (int d = 1; d <= degree_; d++) {
    xp[d] = xp[d - 1] * px;
    yp[d] = yp[d - 1] * py;
  }
  Eigen::MatrixXd dm(n, 2);
  for (int i = 0; i < n; i++) {
    int a = powers_[i][0], b = powers_[i][1];
    dm(i, 0) = a > 0 ? a * xp[a - 1] * yp[b] / scale_ : 0.0;
    dm(i, 1) = b > 0 ? b * xp[a] * yp[b - 1] / scale_ : 0.0;
  }
  return transform_.transpose() * dm;
}

Eigen::MatrixXd CellBasis::second_derivatives(const Vec2& x) const {
  const int n = size();
  double px = (x.x() - center_.x()) / scale_;
  double py = (x.y() - center_.y()) / scale_;
  std::vector<double> xp(degree_ + 1), yp(degree_ + 1);
  xp[0] = yp[0] = 1.0;
  for (int d = 1; d <= degree_; d++) {
    xp[d] = xp[d - 1] * px;
    yp[d] = yp[d - 1] * py;
  }
  double s2 = scale_ * scale_;
  Eigen::MatrixXd d2(n, 3);
  for (int i = 0; i < n; i++) {
    int a = powers_[i][0], b = powers_[i][1];
    d2(i, 0) = a > 1 ? a * (a - 1) * xp[a - 2] * yp[b] / s2 : 0.0;
    d2(i, 1) = (a > 0 && b > 0) ? a * b * xp[a - 1] * yp[b - 1] / s2 : 0.0;
    d2(i, 2) = b > 1 ? b * (b - 1) * xp[a] * yp[b - 2] / s2 : 0.0;
  }
  return transform_.transpose() * d2;
}

FaceBasis::FaceBasis(const Vec2& a, const Vec2& b, int degree) : degree_(degree) {
  if (degree_ < 0) throw std::invalid_argument("FaceBasis: negative degree");
  mid_ = 0.5 * (a + b);
  Vec2 d = b - a;
  double len = d.norm();
  scale_ = len;
  tangent_ = d / len;

  QuadRule rule = segment_rule(a, b, 2 * degree_);
  measure_ = 0.0;
  for (double w : rule.weights) measure_ += w;

  const int n = size();
  transform_ = Eigen::MatrixXd::Identity(n, n);
  for (int pass = 0; pass < 2; pass++) {
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t q = 0; q < rule.size(); q++) {
      double t = (rule.points[q] - mid_).dot(tangent_) / scale_;
      Eigen::RowVectorXd m(n);
      double p = 1.0;
      for (int i = 0; i < n; i++) {
        m(i) = p;
        p *= t;
      }
      gram.noalias() += (rule.weights[q] / measure_) * ((m * transform_).transpose() * (m * transform_));
    }
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) throw std::runtime_error("FaceBasis: singular Gram matrix");
    Eigen::MatrixXd inv_u = Eigen::MatrixXd::Identity(n, n);
    llt.matrixU().solveInPlace(inv_u);
    transform_ = transform_ * inv_u;
  }
}

FaceBasis::FaceBasis(const Triangulation& mesh, int side, int degree)
    : FaceBasis(mesh.vertex(mesh.side(side).a), mesh.vertex(mesh.side(side).b), degree) {}

Eigen::RowVectorXd FaceBasis::values(const Vec2& x) const {
  const int n = size();
  double t = (x - mid_).dot(tangent_) / scale_;
  Eigen::RowVectorXd m(n);
  double p = 1.0;
  for (int i = 0; i < n; i++) {
    m(i) = p;
    p *= t;
  }
  return m * transform_;
}

}  // namespace hho
