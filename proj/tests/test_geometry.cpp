#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "overdet/errors.hpp"
#include "overdet/geometry.hpp"

#include <cmath>
#include <numbers>

using namespace overdet;
using std::numbers::pi;

namespace {

StarDomain2D cos_domain(int k, double eps, int quad = StarDomain2D::kDefaultQuadPoints) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(k), b = Eigen::VectorXd::Zero(k);
  a[k - 1] = eps;
  return StarDomain2D(1.0, a, b, quad);
}

// Independent dense polar-grid integral of r^p over the domain: 4096-point
// trapezoid in theta, 16-point Gauss in s on [0, 1] with r = rho s^2, which
// keeps the integrand smooth at the origin for fractional p.
double polar_oracle(const StarDomain2D& d, double p) {
  const GaussRule g = gauss_legendre_unit(16);
  constexpr int kTheta = 4096;
  double sum = 0.0;
  for (int j = 0; j < kTheta; ++j) {
    const double rho = d.rho(2.0 * pi * j / kTheta);
    for (int i = 0; i < 16; ++i) {
      const double s = g.nodes[i];
      const double r = rho * s * s;
      sum += g.weights[i] * std::pow(r, p) * r * 2.0 * rho * s;
    }
  }
  return sum * 2.0 * pi / kTheta;
}

}  // namespace

TEST_CASE("unit circle boundary nodes") {
  const auto nodes = boundary_nodes(StarDomain2D::circle(1.0), 16);
  REQUIRE(nodes.size() == 16);
  for (const auto& n : nodes) {
    CHECK(n.r == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(n.weight == doctest::Approx(2.0 * pi / 16).epsilon(1e-15));
    CHECK((n.normal - n.position).norm() < 1e-15);
    CHECK(n.normal.dot(n.position) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("boundary node invariants on a perturbed domain") {
  const auto d = cos_domain(3, 0.1);
  double total = 0.0;
  for (const auto& n : boundary_nodes(d, 256)) {
    CHECK(std::abs(n.normal.norm() - 1.0) < 1e-12);
    CHECK(n.r == doctest::Approx(n.position.norm()).epsilon(1e-15));
    // outward: the normal points away from the origin on a star domain
    CHECK(n.normal.dot(n.position) > 0.0);
    total += n.weight;
  }
  const double reference = perimeter(d.with_quad_points(8192));
  CHECK(std::abs(total - reference) < 1e-10);
}

TEST_CASE("area") {
  CHECK(area(StarDomain2D::circle(1.0)) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(area(StarDomain2D::circle(2.0)) == doctest::Approx(4.0 * pi).epsilon(1e-14));
  // (1/2) int (1 + 0.1 cos 3t)^2 = pi (1 + 0.01/2)
  CHECK(std::abs(area(cos_domain(3, 0.1)) - 1.005 * pi) < 1e-13);
  CHECK(std::abs(1.005 * pi - 3.157301) < 1e-6);
}

TEST_CASE("moment_r2") {
  CHECK(moment_r2(StarDomain2D::circle(1.0)) == doctest::Approx(pi / 2).epsilon(1e-14));
  for (double R : {0.5, 2.0, 3.0})
    CHECK(moment_r2(StarDomain2D::circle(R)) == doctest::Approx(pi * std::pow(R, 4) / 2).epsilon(1e-14));
  const auto d = cos_domain(3, 0.1);
  CHECK(std::abs(moment_r2(d) - polar_oracle(d, 2.0)) < 1e-10);
  // (1/4) int (1 + e cos)^4 = (pi/2)(1 + 3 e^2 + 3 e^4 / 8)
  CHECK(std::abs(moment_r2(d) - pi / 2 * (1.0 + 0.03 + 3e-4 / 8)) < 1e-13);
}

TEST_CASE("boundary_moment") {
  CHECK(boundary_moment(StarDomain2D::circle(1.0), 1.0) == doctest::Approx(2 * pi).epsilon(1e-14));
  for (double R : {0.5, 2.0})
    CHECK(boundary_moment(StarDomain2D::circle(R), 0.0) == doctest::Approx(2 * pi * R).epsilon(1e-14));
  const auto d = cos_domain(3, 0.1);
  CHECK(std::abs(boundary_moment(d, 1.0) - boundary_moment(d.with_quad_points(8192), 1.0)) < 1e-10);
  CHECK_THROWS_AS(boundary_moment(d, -1.0), OutOfRange);
}

TEST_CASE("interior moment matches polar oracle for fractional exponents") {
  const auto d = cos_domain(2, 0.15);
  for (double p : {0.0, 0.5, 1.0, 2.5})
    CHECK(std::abs(interior_moment(d, p) - polar_oracle(d, p)) < 1e-10);
}

TEST_CASE("diameter") {
  CHECK(diameter(StarDomain2D::circle(1.0)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(diameter(StarDomain2D::circle(3.5)) == doctest::Approx(7.0).epsilon(1e-12));

  // rho = 1 + 0.2 cos 2t reaches 1.2 at the antipodal angles 0 and pi.
  const auto d = cos_domain(2, 0.2);
  const double diam = diameter(d);
  CHECK(diam >= 2.4 - 1e-12);
  // Dense-grid brute force on a 4x finer, independent grid.
  double best = 0.0;
  constexpr int kGrid = 4096;
  for (int i = 0; i < kGrid; ++i)
    for (int j = i + 1; j < kGrid; ++j) {
      const double ti = 2 * pi * i / kGrid, tj = 2 * pi * j / kGrid;
      const Point2 p = d.rho(ti) * Point2(std::cos(ti), std::sin(ti));
      const Point2 q = d.rho(tj) * Point2(std::cos(tj), std::sin(tj));
      best = std::max(best, (p - q).norm());
    }
  CHECK(diam <= best + 1e-12);
  CHECK(best - diam < 1e-5);
}

TEST_CASE("geometric identities") {
  const StarDomain2D domains[] = {StarDomain2D::circle(1.0, 1024), cos_domain(2, 0.1, 1024),
                                  cos_domain(3, 0.1, 1024), cos_domain(5, 0.08, 1024),
                                  StarDomain2D(1.3, Eigen::Vector2d(0.05, 0.1),
                                               Eigen::Vector2d(-0.07, 0.02), 1024)};
  for (const auto& d : domains) {
    CHECK(area(d) > 0.0);
    CHECK(moment_r2(d) > 0.0);
    CHECK(boundary_moment(d, 1.5) > 0.0);
    // int x.nu = N |Omega|
    CHECK(std::abs(boundary_flux_of_position(d) - 2.0 * area(d)) <= 1e-9 * area(d));
    // int r d(sigma) >= N |Omega|, strict off the centered circle
    const double gap = boundary_moment(d, 1.0) - 2.0 * area(d);
    CHECK(gap >= -1e-9);
    if (d.modes() == 0)
      CHECK(std::abs(gap) < 1e-9);
    else
      CHECK(gap > 1e-9);
  }
}

TEST_CASE("quadratures self-converge") {
  const StarDomain2D d(1.0, Eigen::Vector3d(0.05, 0.03, -0.02), Eigen::Vector3d(0.01, 0.04, 0.0),
                       512);
  const auto fine = d.with_quad_points(1024);
  CHECK(std::abs(area(d) - area(fine)) < 1e-10);
  CHECK(std::abs(moment_r2(d) - moment_r2(fine)) < 1e-10);
  CHECK(std::abs(boundary_moment(d, 1.0) - boundary_moment(fine, 1.0)) < 1e-10);
  CHECK(std::abs(perimeter(d) - perimeter(fine)) < 1e-10);
}

TEST_CASE("invalid domains") {
  CHECK_THROWS_AS(StarDomain2D(1.0, Eigen::VectorXd::Constant(1, 1.5), Eigen::VectorXd::Zero(1)),
                  InvalidDomain);
  CHECK_THROWS_AS(StarDomain2D::circle(0.0), InvalidDomain);
  CHECK_THROWS_AS(StarDomain2D::circle(-1.0), InvalidDomain);
  CHECK_THROWS_AS(StarDomain2D(1.0, Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(1)),
                  InvalidDomain);
  CHECK_THROWS_AS(boundary_nodes(StarDomain2D::circle(1.0), 4), InvalidDomain);
  CHECK_THROWS_AS(BallDomain(1, 1.0), InvalidDomain);
  CHECK_THROWS_AS(BallDomain(3, 0.0), InvalidDomain);
  CHECK_NOTHROW(BallDomain(3, 2.0));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  for (int n : {1, 2, 5, 16, 256}) {
    const auto rule = gauss_legendre_unit(n);
    CHECK(rule.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
    const int degree = 2 * n - 1;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], degree);
    CHECK(s == doctest::Approx(1.0 / (degree + 1)).epsilon(1e-13));
  }
}

TEST_CASE("interior nodes integrate the area") {
  const auto d = cos_domain(3, 0.1);
  double s = 0.0;
  for (const auto& n : interior_nodes(d, 32, 256)) s += n.weight;
  CHECK(std::abs(s - area(d)) < 1e-13);
}
