#include <doctest.h>

#include <random>

#include "hho/problem.hpp"

using namespace hho;

TEST_CASE("Lame parameters from Young's modulus and Poisson ratio") {
  {
    auto [lambda, mu] = lame_from_young_poisson(1e5, 0.4999);
    CHECK(lambda == doctest::Approx(1e5 * 0.4999 / (1.4999 * 0.0002)).epsilon(1e-12));
    CHECK(mu == doctest::Approx(1e5 / 2.9998).epsilon(1e-14));
  }
  {
    auto [lambda, mu] = lame_from_young_poisson(1.0, 0.0);
    CHECK(lambda == 0.0);
    CHECK(mu == doctest::Approx(0.5));
  }
  {
    auto [lambda, mu] = lame_from_young_poisson(1e5, 0.3);
    CHECK(mu == doctest::Approx(1e5 / 2.6).epsilon(1e-14));
    CHECK(lambda == doctest::Approx(1e5 * 0.3 / (1.3 * 0.4)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(lame_from_young_poisson(1e5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(lame_from_young_poisson(-1.0, 0.3), std::invalid_argument);
}

TEST_CASE("elasticity tensor and its inverse") {
  CHECK(apply_elasticity_tensor(Mat2::Identity(), 1.0, 1.0).isApprox(4.0 * Mat2::Identity()));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 50; trial++) {
    Mat2 tau;
    double a = dist(rng), b = dist(rng), c = dist(rng);
    tau << a, b, b, c;
    double lambda = 10.0 * std::abs(dist(rng)), mu = 0.5 + std::abs(dist(rng));
    Mat2 back = apply_compliance_tensor(apply_elasticity_tensor(tau, lambda, mu), lambda, mu);
    CHECK((back - tau).norm() < 1e-14 * tau.norm());
    // positive definiteness: tau : C tau >= 2 mu |tau|^2
    double energy = (apply_elasticity_tensor(tau, lambda, mu).array() * tau.array()).sum();
    CHECK(energy >= 2.0 * mu * tau.squaredNorm() * (1.0 - 1e-14));
  }

  // deviatoric part is insensitive to lambda
  Mat2 dev;
  dev << 0.7, 0.2, 0.2, -0.7;
  CHECK(apply_elasticity_tensor(dev, 123.0, 1.5).isApprox(2.0 * 1.5 * dev));
}

TEST_CASE("corner exponent is a root of the transcendental equation") {
  CHECK(std::abs(lshape_alpha_residual(kLshapeAlpha)) < 1e-11);
  // re-verify by bisection
  double lo = 0.5, hi = 0.6;
  REQUIRE(lshape_alpha_residual(lo) * lshape_alpha_residual(hi) < 0.0);
  for (int it = 0; it < 60; it++) {
    double mid = 0.5 * (lo + hi);
    if (lshape_alpha_residual(lo) * lshape_alpha_residual(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  CHECK(0.5 * (lo + hi) == doctest::Approx(kLshapeAlpha).epsilon(1e-11));
}

TEST_CASE("singular solution: gradient matches finite differences") {
  auto [lambda, mu] = lame_from_young_poisson(1e5, 0.4999);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rad(0.1, 1.0), ang(-0.74 * M_PI, 0.74 * M_PI);
  const double step = 1e-4;
  for (int trial = 0; trial < 50; trial++) {
    double r = rad(rng), phi = ang(rng);
    Vec2 x(r * std::cos(phi), r * std::sin(phi));
    Mat2 g = lshape_displacement_gradient(x, lambda, mu);
    Mat2 fd;
    fd.col(0) = (lshape_displacement(x + Vec2(step, 0), lambda, mu) -
                 lshape_displacement(x - Vec2(step, 0), lambda, mu)) /
                (2 * step);
    fd.col(1) = (lshape_displacement(x + Vec2(0, step), lambda, mu) -
                 lshape_displacement(x - Vec2(0, step), lambda, mu)) /
                (2 * step);
    CHECK((g - fd).norm() < 1e-6 * std::max(1.0, g.norm()));
  }
}

TEST_CASE("singular solution: traction-free on the reentrant edges") {
  auto [lambda, mu] = lame_from_young_poisson(1e5, 0.4999);
  for (double sgn : {1.0, -1.0}) {
    const double edge_angle = sgn * 3.0 * M_PI / 4.0;
    const Vec2 nu = sgn * Vec2(-std::sin(edge_angle), std::cos(edge_angle));
    for (double r : {0.05, 0.3, 0.8, 1.3}) {
      Vec2 x(r * std::cos(edge_angle), r * std::sin(edge_angle));
      Mat2 sigma = lshape_stress(x, lambda, mu);
      CHECK((sigma * nu).norm() < 1e-8 * sigma.norm());
    }
  }
}

TEST_CASE("singular solution: equilibrium away from the corner") {
  auto [lambda, mu] = lame_from_young_poisson(1e5, 0.3);
  const double step = 1e-4;
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> rad(0.3, 1.0), ang(-0.7 * M_PI, 0.7 * M_PI);
  for (int trial = 0; trial < 30; trial++) {
    double r = rad(rng), phi = ang(rng);
    Vec2 x(r * std::cos(phi), r * std::sin(phi));
    auto sig = [&](const Vec2& y) { return lshape_stress(y, lambda, mu); };
    Vec2 div;
    div(0) = (sig(x + Vec2(step, 0))(0, 0) - sig(x - Vec2(step, 0))(0, 0)) / (2 * step) +
             (sig(x + Vec2(0, step))(0, 1) - sig(x - Vec2(0, step))(0, 1)) / (2 * step);
    div(1) = (sig(x + Vec2(step, 0))(1, 0) - sig(x - Vec2(step, 0))(1, 0)) / (2 * step) +
             (sig(x + Vec2(0, step))(1, 1) - sig(x - Vec2(0, step))(1, 1)) / (2 * step);
    CHECK(div.norm() / sig(x).norm() < 1e-5);
  }
}

TEST_CASE("singular solution: continuity across the positive x-axis and at the corner") {
  auto [lambda, mu] = lame_from_young_poisson(1e5, 0.4999);
  for (int i = 1; i <= 20; i++) {
    double x = 0.05 * i;
    Vec2 above = lshape_displacement(Vec2(x, 1e-13), lambda, mu);
    Vec2 below = lshape_displacement(Vec2(x, -1e-13), lambda, mu);
    // the probes are 2e-13 apart; continuity up to that physical separation
    CHECK((above - below).norm() < 1e-9 * above.norm());
  }
  CHECK(lshape_displacement(Vec2(0, 0), lambda, mu).norm() == 0.0);
  CHECK_THROWS_AS(lshape_stress(Vec2(0, 0), lambda, mu), std::domain_error);
}

TEST_CASE("manufactured data is consistent with the weak form") {
  const Material material = Material::from_young_poisson(1e5, 0.3);
  Triangulation mesh = Triangulation::unit_square().uniform_refine();

  // d = 1: eps = diag(1,-1), divergence-free, f = 0
  {
    ProblemData pd = manufactured_polynomial(1, material);
    CHECK(pd.f(Vec2(0.3, 0.7)).norm() == 0.0);
    Mat2 eps = 0.5 * (pd.exact->grad_u(Vec2(0.2, 0.4)) + pd.exact->grad_u(Vec2(0.2, 0.4)).transpose());
    CHECK(eps(0, 0) == doctest::Approx(1.0));
    CHECK(eps(1, 1) == doctest::Approx(-1.0));
    CHECK(eps(0, 1) == doctest::Approx(0.0));
  }

  // d = 2: f is a constant vector, computed once by hand from u = (x^2, xy):
  // sigma = 2 mu eps + lambda (3x) I with eps = [[2x, y/2], [y/2, x]], so
  // f = -(div sigma) = -(4 mu + 3 lambda + mu, 0)
  {
    ProblemData pd = manufactured_polynomial(2, material);
    const double lambda = material.lambda_const(), mu = material.mu_const();
    Vec2 f0 = pd.f(Vec2(0.1, 0.9)), f1 = pd.f(Vec2(0.8, 0.2));
    CHECK((f0 - f1).norm() < 1e-12 * f0.norm());
    CHECK(f0.x() == doctest::Approx(-(5.0 * mu + 3.0 * lambda)));
    CHECK(f0.y() == doctest::Approx(0.0));
  }

  // weak residual against random conforming quadratic test fields
  for (int d : {2, 3}) {
    ProblemData pd = manufactured_polynomial(d, material);
    std::mt19937_64 rng(100 + d);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 20; trial++) {
      // polynomial test field vanishing on the Dirichlet boundary (whole square)
      Poly2 bubble = Poly2::x() * (Poly2(1.0) - Poly2::x()) * Poly2::y() * (Poly2(1.0) - Poly2::y());
      VecPoly2 phi{bubble * dist(rng), bubble * dist(rng)};
      auto gphi = phi.grad();
      double lhs = 0.0, rhs = 0.0, scale = 0.0;
      for (int e = 0; e < mesh.n_elements(); e++) {
        auto p = mesh.element_vertices(e);
        QuadRule rule = triangle_rule(p[0], p[1], p[2], 2 * (d + 4));
        for (std::size_t q = 0; q < rule.size(); q++) {
          const Vec2& x = rule.points[q];
          Mat2 g;
          g << gphi[0][0](x), gphi[0][1](x), gphi[1][0](x), gphi[1][1](x);
          Mat2 eps_phi = 0.5 * (g + g.transpose());
          lhs += rule.weights[q] * (pd.exact->sigma(x).array() * eps_phi.array()).sum();
          rhs += rule.weights[q] * pd.f(x).dot(phi(x));
          scale += rule.weights[q] * pd.exact->sigma(x).squaredNorm();
        }
      }
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(std::sqrt(scale), 1.0));
    }
  }
}

TEST_CASE("material bounds and spatially varying parameters") {
  Triangulation mesh = Triangulation::unit_square().uniform_refine();
  Material varying([](const Vec2& x) {
    return x.x() < 0.5 ? std::make_pair(1.0, 2.0) : std::make_pair(3.0, 5.0);
  });
  auto [lo, hi] = varying.mu_bounds(mesh);
  CHECK(lo == 2.0);
  CHECK(hi == 5.0);
  CHECK_THROWS(Material(1.0, 0.0));
  CHECK_THROWS(Material(-0.1, 1.0));
}
