#pragma once

#include <Eigen/Dense>

#include <vector>

namespace overdet {

using Point2 = Eigen::Vector2d;

/// Star-shaped planar domain r < rho(theta) with
///   rho(theta) = a0 + sum_k a_k cos(k theta) + b_k sin(k theta).
///
/// The origin is strictly interior; construction throws InvalidDomain if
/// min rho < 1e-6 * a0 on a 4096-point grid. Immutable after construction.
class StarDomain2D {
 public:
  static constexpr int kDefaultQuadPoints = 1024;
  static constexpr int kValidityGrid = 4096;

  StarDomain2D(double a0, Eigen::VectorXd cos_coeffs, Eigen::VectorXd sin_coeffs,
               int quad_points = kDefaultQuadPoints);

  static StarDomain2D circle(double radius, int quad_points = kDefaultQuadPoints);

  double a0() const { return a0_; }
  const Eigen::VectorXd& cos_coeffs() const { return cos_; }
  const Eigen::VectorXd& sin_coeffs() const { return sin_; }
  /// Number of Fourier modes K_geom.
  int modes() const { return static_cast<int>(cos_.size()); }
  int quad_points() const { return quad_points_; }

  double rho(double theta) const;
  double drho(double theta) const;

  /// Same shape, different boundary quadrature density.
  StarDomain2D with_quad_points(int m) const;
  StarDomain2D scaled(double s) const;

  /// Sum over k >= 1 of a_k^2 + b_k^2.
  double fourier_energy() const;

 private:
  double a0_;
  Eigen::VectorXd cos_;
  Eigen::VectorXd sin_;
  int quad_points_;
};

/// Centered N-ball, used for exact radial work.
struct BallDomain {
  int dim;
  double radius;

  BallDomain(int dim, double radius);
};

struct BoundaryNode {
  double theta;
  Point2 position;
  Point2 normal;  // unit, outward
  double weight;  // trapezoid weight for d(sigma)
  double r;
};

/// m equally spaced nodes in theta carrying periodic trapezoid weights.
std::vector<BoundaryNode> boundary_nodes(const StarDomain2D& domain, int m);
inline std::vector<BoundaryNode> boundary_nodes(const StarDomain2D& domain) {
  return boundary_nodes(domain, domain.quad_points());
}

double perimeter(const StarDomain2D& domain);
double area(const StarDomain2D& domain);
/// Integral of r^2 over the domain.
double moment_r2(const StarDomain2D& domain);
/// Integral of r^alpha over the domain, alpha >= 0.
double interior_moment(const StarDomain2D& domain, double alpha);
/// Integral of r^alpha over the boundary, alpha >= 0.
double boundary_moment(const StarDomain2D& domain, double alpha);
/// Integral of x . nu over the boundary (equals 2 * area).
double boundary_flux_of_position(const StarDomain2D& domain);

/// Largest pairwise distance over a grid of `grid` boundary points. This is a
/// lower bound on the true diameter that converges as the grid is refined.
double diameter(const StarDomain2D& domain, int grid = 1024);

/// Smallest boundary radius on the validity grid, i.e. dist(0, boundary).
double min_radius(const StarDomain2D& domain);
double max_radius(const StarDomain2D& domain);

/// Tensor-product interior rule on (t, theta) -> t rho(theta) (cos, sin):
/// Gauss-Legendre in t, trapezoid in theta, Jacobian t rho^2 folded in.
struct InteriorNode {
  Point2 position;
  double weight;
  double r;
};

std::vector<InteriorNode> interior_nodes(const StarDomain2D& domain, int n_radial = 256,
                                         int n_angular = 256);

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
GaussRule gauss_legendre_unit(int n);

}  // namespace overdet
