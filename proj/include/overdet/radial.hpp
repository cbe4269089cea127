#pragma once

// Closed-form radial solutions on centered N-balls.
//
// Both solution types are templated on the scalar so that the same algebra
// runs in double precision and in exact rational arithmetic
// (boost::rational<std::int64_t>). The rational path requires an integer
// exponent alpha.

#include "overdet/errors.hpp"

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace overdet {

using Rational = boost::rational<std::int64_t>;

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double pow(double base, double exponent) { return std::pow(base, exponent); }
  static bool is_negative_integer(double x) {
    return x < 0.0 && std::abs(x - std::round(x)) <= 1e-9;
  }
  static double to_double(double x) { return x; }
};

template <>
struct ScalarTraits<Rational> {
  static Rational pow(Rational base, Rational exponent) {
    if (exponent.denominator() != 1)
      throw OutOfRange("rational path needs an integer exponent");
    std::int64_t n = exponent.numerator();
    if (n < 0) {
      base = Rational(1) / base;
      n = -n;
    }
    Rational out(1);
    for (std::int64_t i = 0; i < n; ++i) out *= base;
    return out;
  }
  static bool is_negative_integer(const Rational& x) { return x < 0 && x.denominator() == 1; }
  static double to_double(const Rational& x) { return boost::rational_cast<double>(x); }
};

/// Torsion function of the N-ball:  u(r) = u0 - r^2/(2N),  u0 = R^2/(2N),
/// with du/dnu = -c R and c = 1/N.
template <class Scalar>
struct RadialSolutionP1 {
  int dim;
  Scalar radius;
  Scalar u0;
  Scalar c;

  Scalar u(const Scalar& r) const { return u0 - r * r / Scalar(2 * dim); }
  Scalar du(const Scalar& r) const { return -r / Scalar(dim); }
};

/// Radial solution of  Lap u = -r^alpha  with  x.grad u + c0 r^(alpha+2) + c1 = 0
/// on r = R:
///   u(r) = u0 - c0 r^(alpha+2) / (beta + alpha + 2),
///   beta = (alpha+2)(c0 (alpha+N) - 1).
template <class Scalar>
struct RadialSolutionP2 {
  int dim;
  Scalar radius;
  Scalar alpha;
  Scalar c0;
  Scalar beta;
  Scalar c1;
  Scalar u0;

  Scalar denominator() const { return beta + alpha + Scalar(2); }
  Scalar u(const Scalar& r) const {
    return u0 - c0 * ScalarTraits<Scalar>::pow(r, alpha + Scalar(2)) / denominator();
  }
  /// r du/dr, i.e. x . grad u.
  Scalar r_du(const Scalar& r) const {
    return -c0 * (alpha + Scalar(2)) * ScalarTraits<Scalar>::pow(r, alpha + Scalar(2)) /
           denominator();
  }
  /// x . grad u + c0 r^(alpha+2) + c1, zero on the sphere r = R.
  Scalar boundary_residual(const Scalar& r) const {
    return r_du(r) + c0 * ScalarTraits<Scalar>::pow(r, alpha + Scalar(2)) + c1;
  }
};

template <class Scalar = double>
RadialSolutionP1<Scalar> radial_p1(int dim, const Scalar& radius) {
  if (dim < 2) throw OutOfRange("dimension must be at least 2");
  if (!(radius > Scalar(0))) throw OutOfRange("radius must be positive");
  return {dim, radius, radius * radius / Scalar(2 * dim), Scalar(1) / Scalar(dim)};
}

template <class Scalar = double>
RadialSolutionP2<Scalar> radial_p2(int dim, const Scalar& radius, const Scalar& alpha,
                                   const Scalar& c0) {
  using T = ScalarTraits<Scalar>;
  if (dim < 2) throw OutOfRange("dimension must be at least 2");
  if (!(radius > Scalar(0))) throw OutOfRange("radius must be positive");
  if (alpha < Scalar(0)) throw OutOfRange("alpha must be non-negative");
  if (c0 == Scalar(0)) throw DegenerateParameter("c0 = 0 makes beta + alpha + 2 vanish");

  const Scalar two(2);
  const Scalar beta = (alpha + two) * (c0 * (alpha + Scalar(dim)) - Scalar(1));
  if (T::is_negative_integer(beta))
    throw InadmissibleBeta("beta = " + std::to_string(T::to_double(beta)) +
                           " is a negative integer");
  const Scalar denom = beta + alpha + two;
  const Scalar r_pow = T::pow(radius, alpha + two);
  return {dim, radius, alpha, c0, beta, -c0 * beta * r_pow / denom, c0 * r_pow / denom};
}

/// Surface measure of the unit sphere S^(N-1).
double unit_sphere_area(int dim);

struct Lemma1Values {
  double lhs;  // integral of u over the ball
  double rhs;  // c^2 times integral of r^2 over the ball
};

/// Both sides of  int u = c^2 int r^2  for the N-ball torsion function,
/// each by a 2048-point composite Gauss rule in r.
Lemma1Values lemma1_exact(int dim, double radius);

/// Admissible-c bound for the law du/dnu = -c r^alpha (alpha >= 1):
///   2^(alpha-1) / (d^(alpha-1) sqrt(alpha N (N + 2 alpha - 2))).
double remark3_bound(double alpha, int dim, double diameter);

}  // namespace overdet
