// Dense bivariate polynomials with exact arithmetic on the coefficients;
// used to manufacture problem data and as a differentiation oracle in tests.

#ifndef HHO_POLY2_HPP
#define HHO_POLY2_HPP

#include <Eigen/Dense>
#include <array>

namespace hho {

/// Polynomial sum c(a,b) x^a y^b with a + b <= degree.
class Poly2 {
 public:
  Poly2() : c_(Eigen::MatrixXd::Zero(1, 1)) {}
  explicit Poly2(double constant) : c_(Eigen::MatrixXd::Constant(1, 1, constant)) {}

  static Poly2 monomial(int a, int b, double coeff = 1.0) {
    Poly2 p;
    p.c_ = Eigen::MatrixXd::Zero(a + 1, b + 1);
    p.c_(a, b) = coeff;
    return p;
  }
  static Poly2 x() { return monomial(1, 0); }
  static Poly2 y() { return monomial(0, 1); }

  int degree() const { return static_cast<int>(c_.rows() + c_.cols()) - 2; }

  double operator()(double x, double y) const {
    double vx = 1.0, sum = 0.0;
    for (int a = 0; a < c_.rows(); a++) {
      double vy = 1.0;
      for (int b = 0; b < c_.cols(); b++) {
        sum += c_(a, b) * vx * vy;
        vy *= y;
      }
      vx *= x;
    }
    return sum;
  }
  double operator()(const Eigen::Vector2d& p) const { return (*this)(p.x(), p.y()); }

  Poly2 dx() const {
    Poly2 r;
    if (c_.rows() <= 1) return r;
    r.c_ = Eigen::MatrixXd::Zero(c_.rows() - 1, c_.cols());
    for (int a = 1; a < c_.rows(); a++)
      for (int b = 0; b < c_.cols(); b++) r.c_(a - 1, b) = a * c_(a, b);
    return r;
  }
  Poly2 dy() const {
    Poly2 r;
    if (c_.cols() <= 1) return r;
    r.c_ = Eigen::MatrixXd::Zero(c_.rows(), c_.cols() - 1);
    for (int a = 0; a < c_.rows(); a++)
      for (int b = 1; b < c_.cols(); b++) r.c_(a, b - 1) = b * c_(a, b);
    return r;
  }

  Poly2 operator+(const Poly2& o) const {
    Poly2 r;
    r.c_ = Eigen::MatrixXd::Zero(std::max(c_.rows(), o.c_.rows()), std::max(c_.cols(), o.c_.cols()));
    r.c_.topLeftCorner(c_.rows(), c_.cols()) += c_;
    r.c_.topLeftCorner(o.c_.rows(), o.c_.cols()) += o.c_;
    return r;
  }
  Poly2 operator-(const Poly2& o) const { return *this + o * (-1.0); }
  Poly2 operator*(double s) const {
    Poly2 r = *this;
    r.c_ *= s;
    return r;
  }
  Poly2 operator*(const Poly2& o) const {
    Poly2 r;
    r.c_ = Eigen::MatrixXd::Zero(c_.rows() + o.c_.rows() - 1, c_.cols() + o.c_.cols() - 1);
    for (int a = 0; a < c_.rows(); a++)
      for (int b = 0; b < c_.cols(); b++) {
        if (c_(a, b) == 0.0) continue;
        r.c_.block(a, b, o.c_.rows(), o.c_.cols()) += c_(a, b) * o.c_;
      }
    return r;
  }
  Poly2 pow(int n) const {
    Poly2 r(1.0);
    for (int i = 0; i < n; i++) r = r * (*this);
    return r;
  }

 private:
  Eigen::MatrixXd c_;  // c_(a,b) multiplies x^a y^b
};

/// Vector-valued polynomial (two components).
struct VecPoly2 {
  Poly2 x, y;

  Eigen::Vector2d operator()(const Eigen::Vector2d& p) const { return {x(p), y(p)}; }
  /// gradient as 2x2 matrix of polynomials, row i = grad of component i
  std::array<std::array<Poly2, 2>, 2> grad() const { return {{{x.dx(), x.dy()}, {y.dx(), y.dy()}}}; }
};

}  // namespace hho

#endif
