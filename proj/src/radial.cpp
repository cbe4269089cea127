#include "overdet/radial.hpp"

#include "overdet/geometry.hpp"

#include <numbers>

namespace overdet {

double unit_sphere_area(int dim) {
  if (dim < 1) throw OutOfRange("dimension must be positive");
  const double half = 0.5 * dim;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

namespace {

// Composite 4-point Gauss-Legendre on [0, R] with 512 panels (2048 points).
template <class F>
double radial_integral(F&& f, double radius) {
  static const GaussRule rule = gauss_legendre_unit(4);
  constexpr int kPanels = 512;
  const double h = radius / kPanels;
  double sum = 0.0;
  for (int p = 0; p < kPanels; ++p)
    for (int q = 0; q < 4; ++q) sum += rule.weights[q] * f((p + rule.nodes[q]) * h);
  return sum * h;
}

}  // namespace

Lemma1Values lemma1_exact(int dim, double radius) {
  const auto sol = radial_p1(dim, radius);
  const double sphere = unit_sphere_area(dim);
  const auto shell = [dim](double r) { return std::pow(r, dim - 1); };
  const double lhs = sphere * radial_integral([&](double r) { return sol.u(r) * shell(r); }, radius);
  const double rhs =
      sol.c * sol.c * sphere * radial_integral([&](double r) { return r * r * shell(r); }, radius);
  return {lhs, rhs};
}

double remark3_bound(double alpha, int dim, double diameter) {
  if (alpha < 1.0) throw OutOfRange("bound is derived for alpha >= 1");
  if (dim < 2) throw OutOfRange("dimension must be at least 2");
  if (!(diameter > 0.0)) throw OutOfRange("diameter must be positive");
  return std::pow(2.0, alpha - 1.0) /
         (std::pow(diameter, alpha - 1.0) * std::sqrt(alpha * dim * (dim + 2.0 * alpha - 2.0)));
}

}  // namespace overdet
