#include "hho/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace hho {

namespace {

constexpr double kOmega = 3.0 * M_PI / 4.0;

struct LshapeCoeffs {
  double alpha, c1, c2;
};

LshapeCoeffs lshape_coeffs(double lambda, double mu) {
  const double a = kLshapeAlpha;
  return {a, -std::cos((a + 1.0) * kOmega) / std::cos((a - 1.0) * kOmega),
          2.0 * (lambda + 2.0 * mu) / (lambda + mu)};
}

}  // namespace

double lshape_alpha_residual(double alpha) { return alpha * std::sin(2.0 * kOmega) + std::sin(2.0 * kOmega * alpha); }

Vec2 lshape_displacement(const Vec2& x, double lambda, double mu) {
  const auto [a, c1, c2] = lshape_coeffs(lambda, mu);
  double r = x.norm();
  if (r == 0.0) return Vec2::Zero();  // u ~ r^alpha extends continuously
  double p = std::atan2(x.y(), x.x());
  double A = -(a + 1.0) * std::cos((a + 1.0) * p) + (c2 - a - 1.0) * c1 * std::cos((a - 1.0) * p);
  double B = (a + 1.0) * std::sin((a + 1.0) * p) + (c2 + a - 1.0) * c1 * std::sin((a - 1.0) * p);
  double ur = std::pow(r, a) / (2.0 * mu) * A;
  double up = std::pow(r, a) / (2.0 * mu) * B;
  double c = std::cos(p), s = std::sin(p);
  return Vec2(ur * c - up * s, ur * s + up * c);
}

Mat2 lshape_displacement_gradient(const Vec2& x, double lambda, double mu) {
  const auto [a, c1, c2] = lshape_coeffs(lambda, mu);
  double r = x.norm();
  if (r == 0.0) throw std::domain_error("lshape gradient is singular at the origin");
  double p = std::atan2(x.y(), x.x());
  double A = -(a + 1.0) * std::cos((a + 1.0) * p) + (c2 - a - 1.0) * c1 * std::cos((a - 1.0) * p);
  double B = (a + 1.0) * std::sin((a + 1.0) * p) + (c2 + a - 1.0) * c1 * std::sin((a - 1.0) * p);
  double dA = (a + 1.0) * (a + 1.0) * std::sin((a + 1.0) * p) - (a - 1.0) * (c2 - a - 1.0) * c1 * std::sin((a - 1.0) * p);
  double dB = (a + 1.0) * (a + 1.0) * std::cos((a + 1.0) * p) + (a - 1.0) * (c2 + a - 1.0) * c1 * std::cos((a - 1.0) * p);
  double c = std::cos(p), s = std::sin(p);
  double U = A * c - B * s, V = A * s + B * c;
  double dU = dA * c - A * s - dB * s - B * c;
  double dV = dA * s + A * c + dB * c - B * s;
  double w = std::pow(r, a - 1.0) / (2.0 * mu);
  Mat2 g;
  g(0, 0) = w * (a * U * c - dU * s);
  g(0, 1) = w * (a * U * s + dU * c);
  g(1, 0) = w * (a * V * c - dV * s);
  g(1, 1) = w * (a * V * s + dV * c);
  return g;
}

Mat2 lshape_stress(const Vec2& x, double lambda, double mu) {
  Mat2 g = lshape_displacement_gradient(x, lambda, mu);
  Mat2 eps = 0.5 * (g + g.transpose());
  return apply_elasticity_tensor(eps, lambda, mu);
}

ProblemData cooks_problem(const Material& material) {
  ProblemData pd{material,
                 [](const Vec2&) { return Vec2::Zero(); },
                 [](const Vec2& x, const Vec2&) {
                   return x.x() > 48.0 - 1e-9 ? Vec2(0.0, 1.0) : Vec2::Zero();
                 },
                 [](const Vec2&) { return Vec2::Zero(); },
                 [](const Vec2&) { return Mat2::Zero(); },
                 std::nullopt,
                 false};
  return pd;
}

ProblemData lshape_problem(const Material& material) {
  if (!material.is_constant()) throw std::invalid_argument("lshape_problem: constant material required");
  const double lambda = material.lambda_const();
  const double mu = material.mu_const();
  ExactSolution exact{
      [lambda, mu](const Vec2& x) { return lshape_displacement(x, lambda, mu); },
      [lambda, mu](const Vec2& x) { return lshape_displacement_gradient(x, lambda, mu); },
      [lambda, mu](const Vec2& x) { return lshape_stress(x, lambda, mu); }};
  ProblemData pd{material,
                 [](const Vec2&) { return Vec2::Zero(); },
                 [](const Vec2&, const Vec2&) { return Vec2::Zero(); },
                 exact.u,
                 exact.grad_u,
                 exact,
                 true};
  return pd;
}

ProblemData zero_problem(const Material& material) {
  ProblemData pd{material,
                 [](const Vec2&) { return Vec2::Zero(); },
                 [](const Vec2&, const Vec2&) { return Vec2::Zero(); },
                 [](const Vec2&) { return Vec2::Zero(); },
                 [](const Vec2&) { return Mat2::Zero(); },
                 std::nullopt,
                 false};
  return pd;
}

ProblemData manufactured_from_poly(const VecPoly2& u, const Material& material) {
  if (!material.is_constant()) throw std::invalid_argument("manufactured_from_poly: constant material required");
  const double lambda = material.lambda_const();
  const double mu = material.mu_const();
  auto grad = u.grad();
  // sigma = 2 mu eps(u) + lambda div(u) I, entrywise polynomials
  Poly2 div_u = grad[0][0] + grad[1][1];
  std::array<std::array<Poly2, 2>, 2> sig;
  sig[0][0] = grad[0][0] * (2.0 * mu) + div_u * lambda;
  sig[1][1] = grad[1][1] * (2.0 * mu) + div_u * lambda;
  sig[0][1] = (grad[0][1] + grad[1][0]) * mu;
  sig[1][0] = sig[0][1];
  VecPoly2 minus_div_sigma{(sig[0][0].dx() + sig[0][1].dy()) * (-1.0), (sig[1][0].dx() + sig[1][1].dy()) * (-1.0)};

  ExactSolution exact{
      [u](const Vec2& x) { return u(x); },
      [grad](const Vec2& x) {
        Mat2 g;
        g << grad[0][0](x), grad[0][1](x), grad[1][0](x), grad[1][1](x);
        return g;
      },
      [sig](const Vec2& x) {
        Mat2 s;
        s << sig[0][0](x), sig[0][1](x), sig[1][0](x), sig[1][1](x);
        return s;
      }};
  ProblemData pd{material,
                 [minus_div_sigma](const Vec2& x) { return minus_div_sigma(x); },
                 [sig](const Vec2& x, const Vec2& nu) {
                   Mat2 s;
                   s << sig[0][0](x), sig[0][1](x), sig[1][0](x), sig[1][1](x);
                   return Vec2(s * nu);
                 },
                 exact.u,
                 exact.grad_u,
                 exact,
                 false};
  return pd;
}

VecPoly2 manufactured_displacement(int d) {
  if (d < 1) throw std::invalid_argument("manufactured_displacement: degree must be >= 1");
  if (d == 1) return {Poly2::x(), Poly2::y() * (-1.0)};
  if (d == 2) return {Poly2::x() * Poly2::x(), Poly2::x() * Poly2::y()};
  return {Poly2::monomial(d, 0) + Poly2::monomial(0, d), Poly2::monomial(1, d - 1) - Poly2::monomial(d, 0)};
}

ProblemData manufactured_polynomial(int d, const Material& material) {
  return manufactured_from_poly(manufactured_displacement(d), material);
}

ProblemData benchmark_problem(const std::string& id, const Material& material, int k) {
  if (id == "cooks" || id == "cook") return cooks_problem(material);
  if (id == "lshape") return lshape_problem(material);
  if (id == "square" || id == "unit_square") return manufactured_polynomial(k + 1, material);
  throw std::invalid_argument("benchmark_problem: unknown benchmark '" + id + "'");
}

}  // namespace hho
