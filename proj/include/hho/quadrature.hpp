// Quadrature rules on triangles and segments with arbitrary polynomial exactness.

#ifndef HHO_QUADRATURE_HPP
#define HHO_QUADRATURE_HPP

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace hho {

using Vec2 = Eigen::Vector2d;

/// Nodes and weights of a quadrature rule in physical coordinates.
/// Weights carry the measure of the domain (they sum to the area/length).
struct QuadRule {
  std::vector<Vec2> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

/// Gauss-Legendre nodes/weights on [0,1], exact for polynomials of degree 2n-1.
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Gauss-Lobatto nodes on [0,1] (n >= 2 points, endpoints included).
std::vector<double> gauss_lobatto_01(int n);

/// Rule on the triangle (v0,v1,v2), exact for total degree <= degree.
/// All weights are positive. Throws std::invalid_argument for degree < 0 or > 60.
QuadRule triangle_rule(const Vec2& v0, const Vec2& v1, const Vec2& v2, int degree);

/// Rule on the segment [a,b], exact for degree <= degree along the segment.
QuadRule segment_rule(const Vec2& a, const Vec2& b, int degree);

}  // namespace hho

#endif
