#pragma once

#include "overdet/geometry.hpp"
#include "overdet/poisson2d.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace overdet {

/// Spatial dimension of every solve in this module.
inline constexpr int kPlaneDim = 2;

/// Every tolerance used by the identity checks, in one place.
struct Tolerances {
  double eq4_rel = 1e-8;           // |int h - (2+N) int u| / |int h|
  double eq9_rel = 1e-8;           // Phi decomposition
  double lemma1_rel = 1e-8;        // int u vs c^2 int r^2
  double eq3_rel = 1e-8;           // int h vs c int r h
  double eq5_rel = 1e-8;           // c int r h vs c^2 (N+2) int r^2
  double phi_boundary = 1e-9;      // max |Phi| on the boundary
  double hessian = 1e-10;          // u_ij u_ij >= (Lap u)^2 / N - tol
  double harmonicity = 1e-6;       // finite-difference Laplacians
  double cn_excess = 1e-9;         // c* N <= 1 + tol
  double deficit = 1e-9;           // boundary-law misfit
  double remark4 = 1e-10;
  double fd_step = 1e-4;
  int fd_samples = 50;
  int hessian_samples = 100;
  int interior_radial = 256;
  int interior_angular = 256;
};

/// Neumann data of the form  du/dnu = -c p(r).
struct BoundaryLaw {
  enum class Kind { Constant, Linear, Power, General };

  Kind kind = Kind::Linear;
  double alpha = 1.0;                  // Power only
  std::function<double(double)> f;     // General only: f(r) > 0
  std::optional<double> c;             // fixed c; otherwise the compatible c*

  static BoundaryLaw constant() { return {Kind::Constant, 0.0, {}, {}}; }
  static BoundaryLaw linear() { return {Kind::Linear, 1.0, {}, {}}; }
  static BoundaryLaw power(double alpha);
  static BoundaryLaw general(std::function<double(double)> f);

  /// p(r); the law reads du/dnu = -c p(r).
  double profile(double r) const;
  std::string name() const;
};

BoundaryLaw::Kind parse_law_kind(const std::string& name);

double aux_h(const PoissonSolution2D& sol, const Point2& x);
double phi(const PoissonSolution2D& sol, const Point2& x, double c);

/// x.grad u + c0 r^(alpha+2) + c1 + beta u with beta = (alpha+2)(c0(alpha+N)-1).
/// `alpha` must equal the solution's source exponent.
double v_functional(const PoissonSolution2D& sol, const Point2& x, double alpha, double c0,
                    double c1, int dim = kPlaneDim);

struct InteriorIntegrals {
  double int_u;
  double int_h;
};
InteriorIntegrals interior_integrals(const PoissonSolution2D& sol, int n_radial = 256,
                                     int n_angular = 256);

/// c times the boundary integral of r h.
double boundary_integral_rh(const PoissonSolution2D& sol, double c);

/// c* = (integral of r^source_alpha over the domain) / (boundary integral of p(r)).
double compatibility_c(const StarDomain2D& domain, double source_alpha, const BoundaryLaw& law);
/// Same exponent on both sides.
double compatibility_c(const StarDomain2D& domain, double alpha);

/// sqrt( boundary integral of (du/dnu + c p(r))^2 / perimeter ), c = law.c or c*.
double serrin_deficit(const PoissonSolution2D& sol, const BoundaryLaw& law);

struct Remark4Result {
  double cond1;
  double cond2_max;
  bool pass;
  /// g constant on the grid yet cond1 < 0: condition 1 rejects the constant
  /// law even though balls satisfy it.
  bool constant_law_conflict;
};

using RadialFn = std::function<double(double)>;
Remark4Result remark4_check(const RadialFn& g, const RadialFn& dg, const RadialFn& d2g,
                            const StarDomain2D& domain, int dim = kPlaneDim,
                            double tol = 1e-10);

/// Five-point Laplacian with step h.
double fd_laplacian(const std::function<double(const Point2&)>& f, const Point2& x, double h);

/// Deterministic interior samples at t <= t_max along rays; `seed` picks them.
std::vector<Point2> sample_interior(const StarDomain2D& domain, int count, std::uint64_t seed,
                                    double t_max = 0.9);

struct Prop2Params {
  double c0;
  double c1;
};

struct ReportOptions {
  BoundaryLaw law = BoundaryLaw::linear();
  Tolerances tol;
  std::uint64_t seed = 42;
  std::optional<Prop2Params> prop2;
};

struct Check {
  std::string name;
  double value;
  double limit;
  bool pass;
};

struct IdentityReport {
  double alpha;
  std::string law;
  double c_star;
  double cN;
  double lemma1_lhs;
  double lemma1_rhs;
  double lemma1_residual;
  double eq3_lhs;
  double eq3_rhs;
  double eq3_residual;
  double eq4_check;
  double eq5_closed_form;
  double eq5_check;
  double phi_integral;
  double eq9_rhs;
  double eq9_residual;
  double phi_boundary_max;
  double phi_interior_max;
  double hessian_margin;
  double deficit;
  double h_harmonicity;
  std::optional<double> v_harmonicity;
  std::optional<double> v_boundary_max;
  double fit_residual;
  double dirichlet_residual;
  double remark3_dist_check;  // c* N dist(0, boundary)^(alpha-1), power laws only
  std::uint64_t seed;
  Tolerances tol;
  std::vector<Check> checks;

  bool all_pass() const;
};

IdentityReport build_report(const PoissonSolution2D& sol, const ReportOptions& options = {});

}  // namespace overdet
