#include "overdet/geometry.hpp"

#include "overdet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace overdet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Periodic trapezoid of f(theta) over [0, 2 pi) with m nodes.
template <class F>
double trapezoid(F&& f, int m) {
  double sum = 0.0;
  for (int i = 0; i < m; ++i) sum += f(kTwoPi * i / m);
  return sum * kTwoPi / m;
}

}  // namespace

StarDomain2D::StarDomain2D(double a0, Eigen::VectorXd cos_coeffs, Eigen::VectorXd sin_coeffs,
                           int quad_points)
    : a0_(a0), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)), quad_points_(quad_points) {
  if (cos_.size() != sin_.size())
    throw InvalidDomain("cos and sin coefficient lists differ in length");
  if (!std::isfinite(a0_) || !cos_.allFinite() || !sin_.allFinite())
    throw InvalidDomain("non-finite radius coefficient");
  if (!(a0_ > 0.0)) throw InvalidDomain("a0 must be positive");
  if (quad_points_ < 8) throw InvalidDomain("at least 8 boundary quadrature points required");
  const double floor = 1e-6 * a0_;
  for (int i = 0; i < kValidityGrid; ++i) {
    const double theta = kTwoPi * i / kValidityGrid;
    if (rho(theta) < floor)
      throw InvalidDomain("radius function not positive near theta = " + std::to_string(theta));
  }
}

StarDomain2D StarDomain2D::circle(double radius, int quad_points) {
  return StarDomain2D(radius, Eigen::VectorXd(), Eigen::VectorXd(), quad_points);
}

double StarDomain2D::rho(double theta) const {
  double value = a0_;
  for (Eigen::Index k = 0; k < cos_.size(); ++k) {
    const double kt = static_cast<double>(k + 1) * theta;
    value += cos_[k] * std::cos(kt) + sin_[k] * std::sin(kt);
  }
  return value;
}

double StarDomain2D::drho(double theta) const {
  double value = 0.0;
  for (Eigen::Index k = 0; k < cos_.size(); ++k) {
    const double kk = static_cast<double>(k + 1);
    value += kk * (-cos_[k] * std::sin(kk * theta) + sin_[k] * std::cos(kk * theta));
  }
  return value;
}

StarDomain2D StarDomain2D::with_quad_points(int m) const {
  return StarDomain2D(a0_, cos_, sin_, m);
}

StarDomain2D StarDomain2D::scaled(double s) const {
  return StarDomain2D(s * a0_, s * cos_, s * sin_, quad_points_);
}

double StarDomain2D::fourier_energy() const {
  return cos_.squaredNorm() + sin_.squaredNorm();
}

BallDomain::BallDomain(int dim_, double radius_) : dim(dim_), radius(radius_) {
  if (dim < 2) throw InvalidDomain("ball dimension must be at least 2");
  if (!(radius > 0.0)) throw InvalidDomain("ball radius must be positive");
}

std::vector<BoundaryNode> boundary_nodes(const StarDomain2D& domain, int m) {
  if (m < 8) throw InvalidDomain("at least 8 boundary nodes required");
  std::vector<BoundaryNode> nodes;
  nodes.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double theta = kTwoPi * i / m;
    const double rho = domain.rho(theta);
    const double drho = domain.drho(theta);
    if (!(rho > 0.0)) throw InvalidDomain("non-positive radius at boundary node");
    const double c = std::cos(theta), s = std::sin(theta);
    const double speed = std::hypot(rho, drho);
    // Tangent (drho c - rho s, drho s + rho c) rotated by -90 degrees.
    const Point2 normal(drho * s + rho * c, -drho * c + rho * s);
    nodes.push_back({theta, Point2(rho * c, rho * s), normal / speed, speed * kTwoPi / m, rho});
  }
  return nodes;
}

double perimeter(const StarDomain2D& domain) { return boundary_moment(domain, 0.0); }

double area(const StarDomain2D& domain) { return interior_moment(domain, 0.0); }

double moment_r2(const StarDomain2D& domain) { return interior_moment(domain, 2.0); }

double interior_moment(const StarDomain2D& domain, double alpha) {
  if (alpha < 0.0) throw OutOfRange("interior moment exponent must be non-negative");
  // int_0^rho r^alpha r dr = rho^(alpha+2) / (alpha+2)
  return trapezoid([&](double t) { return std::pow(domain.rho(t), alpha + 2.0); },
                   domain.quad_points()) /
         (alpha + 2.0);
}

double boundary_moment(const StarDomain2D& domain, double alpha) {
  if (alpha < 0.0) throw OutOfRange("boundary moment exponent must be non-negative");
  return trapezoid(
      [&](double t) {
        const double rho = domain.rho(t);
        return std::pow(rho, alpha) * std::hypot(rho, domain.drho(t));
      },
      domain.quad_points());
}

double boundary_flux_of_position(const StarDomain2D& domain) {
  double sum = 0.0;
  for (const auto& node : boundary_nodes(domain)) sum += node.position.dot(node.normal) * node.weight;
  return sum;
}

double diameter(const StarDomain2D& domain, int grid) {
  Eigen::Matrix2Xd pts(2, grid);
  for (int i = 0; i < grid; ++i) {
    const double theta = kTwoPi * i / grid;
    pts.col(i) = domain.rho(theta) * Point2(std::cos(theta), std::sin(theta));
  }
  double best = 0.0;
  for (int i = 0; i < grid; ++i)
    for (int j = i + 1; j < grid; ++j) best = std::max(best, (pts.col(i) - pts.col(j)).squaredNorm());
  return std::sqrt(best);
}

double min_radius(const StarDomain2D& domain) {
  double best = domain.rho(0.0);
  for (int i = 1; i < StarDomain2D::kValidityGrid; ++i)
    best = std::min(best, domain.rho(kTwoPi * i / StarDomain2D::kValidityGrid));
  return best;
}

double max_radius(const StarDomain2D& domain) {
  double best = domain.rho(0.0);
  for (int i = 1; i < StarDomain2D::kValidityGrid; ++i)
    best = std::max(best, domain.rho(kTwoPi * i / StarDomain2D::kValidityGrid));
  return best;
}

GaussRule gauss_legendre_unit(int n) {
  if (n < 1) throw OutOfRange("Gauss rule needs at least one node");
  // Legendre P_n and its derivative by the three-term recurrence.
  const auto legendre = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  GaussRule rule{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 1.0 / ((1.0 - x * x) * dp * dp);  // half of the [-1, 1] weight
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  return rule;
}

std::vector<InteriorNode> interior_nodes(const StarDomain2D& domain, int n_radial, int n_angular) {
  const GaussRule gl = gauss_legendre_unit(n_radial);
  std::vector<InteriorNode> nodes;
  nodes.reserve(static_cast<std::size_t>(n_radial) * static_cast<std::size_t>(n_angular));
  for (int j = 0; j < n_angular; ++j) {
    const double theta = kTwoPi * j / n_angular;
    const double rho = domain.rho(theta);
    const Point2 dir(std::cos(theta), std::sin(theta));
    const double w_theta = kTwoPi / n_angular;
    for (int i = 0; i < n_radial; ++i) {
      const double t = gl.nodes[i];
      nodes.push_back({t * rho * dir, gl.weights[i] * w_theta * t * rho * rho, t * rho});
    }
  }
  return nodes;
}

}  // namespace overdet
