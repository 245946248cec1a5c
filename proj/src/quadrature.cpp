#include "hho/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace hho {

namespace {

// Legendre polynomial P_n and its derivative at x (on [-1,1]).
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int j = 2; j <= n; j++) {
    double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_01: need n >= 1");
  nodes.resize(n);
  weights.resize(n);
  // Newton iteration from Chebyshev initial guesses; nodes on [-1,1] then mapped.
  for (int i = 0; i < (n + 1) / 2; i++) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; it++) {
      auto [p, dp] = legendre(n, x);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    auto [p, dp] = legendre(n, x);
    (void)p;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = 0.5 * (1.0 - x);  // descending x -> ascending node
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    weights[i] = 0.5 * w;
    weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) {
    nodes[n / 2] = 0.5;
    auto [p, dp] = legendre(n, 0.0);
    (void)p;
    weights[n / 2] = 1.0 / (dp * dp);
  }
}

std::vector<double> gauss_lobatto_01(int n) {
  if (n < 2) throw std::invalid_argument("gauss_lobatto_01: need n >= 2");
  std::vector<double> x(n);
  x[0] = -1.0;
  x[n - 1] = 1.0;
  // Interior nodes are the roots of P'_{n-1}; Newton on dp with d2p from the
  // Legendre ODE (1-x^2) p'' = 2 x p' - n(n+1) p.
  int m = n - 1;
  for (int i = 1; i < n - 1; i++) {
    double xi = std::cos(M_PI * i / m);
    for (int it = 0; it < 100; it++) {
      auto [p, dp] = legendre(m, xi);
      double d2p = (2.0 * xi * dp - m * (m + 1.0) * p) / (1.0 - xi * xi);
      double dx = dp / d2p;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    x[n - 1 - i] = xi;
  }
  for (auto& v : x) v = 0.5 * (1.0 + v);
  return x;
}

QuadRule triangle_rule(const Vec2& v0, const Vec2& v1, const Vec2& v2, int degree) {
  if (degree < 0 || degree > 60) throw std::invalid_argument("triangle_rule: unsupported degree");
  double area2 = (v1.x() - v0.x()) * (v2.y() - v0.y()) - (v2.x() - v0.x()) * (v1.y() - v0.y());
  QuadRule rule;
  if (degree <= 1) {
    rule.points.push_back((v0 + v1 + v2) / 3.0);
    rule.weights.push_back(0.5 * area2);
    return rule;
  }
  // Collapsed product rule: x = u, y = v (1-u) on the reference triangle; the
  // Jacobian raises the u-degree by one, hence n = ceil((degree+2)/2) points.
  int n = (degree + 3) / 2;
  std::vector<double> gx, gw;
  gauss_legendre_01(n, gx, gw);
  rule.points.reserve(n * n);
  rule.weights.reserve(n * n);
  for (int i = 0; i < n; i++) {
    for (int j = 0; j < n; j++) {
      double u = gx[i], v = gx[j] * (1.0 - gx[i]);
      rule.points.push_back(v0 + u * (v1 - v0) + v * (v2 - v0));
      rule.weights.push_back(gw[i] * gw[j] * (1.0 - gx[i]) * area2);
    }
  }
  return rule;
}

QuadRule segment_rule(const Vec2& a, const Vec2& b, int degree) {
  if (degree < 0 || degree > 120) throw std::invalid_argument("segment_rule: unsupported degree");
  int n = degree / 2 + 1;
  std::vector<double> gx, gw;
  gauss_legendre_01(n, gx, gw);
  double len = (b - a).norm();
  QuadRule rule;
  rule.points.reserve(n);
  rule.weights.reserve(n);
  for (int i = 0; i < n; i++) {
    rule.points.push_back(a + gx[i] * (b - a));
    rule.weights.push_back(gw[i] * len);
  }
  return rule;
}

}  // namespace hho
