#include "overdet/identities.hpp"

#include "overdet/errors.hpp"
#include "overdet/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace overdet {

BoundaryLaw BoundaryLaw::power(double alpha) {
  if (alpha < 0.0) throw OutOfRange("power law exponent must be non-negative");
  return {Kind::Power, alpha, {}, {}};
}

BoundaryLaw BoundaryLaw::general(std::function<double(double)> f) {
  if (!f) throw OutOfRange("general law needs f");
  return {Kind::General, 0.0, std::move(f), {}};
}

double BoundaryLaw::profile(double r) const {
  switch (kind) {
    case Kind::Constant:
      return 1.0;
    case Kind::Linear:
      return r;
    case Kind::Power:
      return std::pow(r, alpha);
    case Kind::General: {
      const double value = f(r);
      if (!std::isfinite(value)) throw EvaluationError("law f(r) is not finite");
      return value;
    }
  }
  return 0.0;
}

std::string BoundaryLaw::name() const {
  switch (kind) {
    case Kind::Constant:
      return "constant-c";
    case Kind::Linear:
      return "linear-cr";
    case Kind::Power:
      return "power-cr^alpha";
    case Kind::General:
      return "general-f";
  }
  return "";
}

BoundaryLaw::Kind parse_law_kind(const std::string& name) {
  if (name == "constant-c" || name == "constant") return BoundaryLaw::Kind::Constant;
  if (name == "linear-cr" || name == "linear") return BoundaryLaw::Kind::Linear;
  if (name == "power-cr^alpha" || name == "power") return BoundaryLaw::Kind::Power;
  if (name == "general-f" || name == "general") return BoundaryLaw::Kind::General;
  throw OutOfRange("unknown boundary law '" + name + "'");
}

double aux_h(const PoissonSolution2D& sol, const Point2& x) {
  return 2.0 * sol.u(x) - x.dot(sol.grad(x));
}

double phi(const PoissonSolution2D& sol, const Point2& x, double c) {
  return sol.grad(x).squaredNorm() - c * c * x.squaredNorm();
}

double v_functional(const PoissonSolution2D& sol, const Point2& x, double alpha, double c0,
                    double c1, int dim) {
  if (alpha != sol.alpha())
    throw OutOfRange("V needs the same exponent as the solved source term");
  const double beta = (alpha + 2.0) * (c0 * (alpha + dim) - 1.0);
  return x.dot(sol.grad(x)) + c0 * std::pow(x.norm(), alpha + 2.0) + c1 + beta * sol.u(x);
}

InteriorIntegrals interior_integrals(const PoissonSolution2D& sol, int n_radial, int n_angular) {
  InteriorIntegrals out{0.0, 0.0};
  for (const auto& node : interior_nodes(sol.domain(), n_radial, n_angular)) {
    out.int_u += node.weight * sol.u(node.position);
    out.int_h += node.weight * aux_h(sol, node.position);
  }
  return out;
}

double boundary_integral_rh(const PoissonSolution2D& sol, double c) {
  double sum = 0.0;
  for (const auto& node : boundary_nodes(sol.domain()))
    sum += node.weight * node.r * aux_h(sol, node.position);
  return c * sum;
}

double compatibility_c(const StarDomain2D& domain, double source_alpha, const BoundaryLaw& law) {
  // -int Lap u = int r^alpha dx must balance -int du/dnu = c int p(r) d(sigma).
  const double source = interior_moment(domain, source_alpha);
  double flux = 0.0;
  switch (law.kind) {
    case BoundaryLaw::Kind::Constant:
      flux = boundary_moment(domain, 0.0);
      break;
    case BoundaryLaw::Kind::Linear:
      flux = boundary_moment(domain, 1.0);
      break;
    case BoundaryLaw::Kind::Power:
      flux = boundary_moment(domain, law.alpha);
      break;
    case BoundaryLaw::Kind::General:
      for (const auto& node : boundary_nodes(domain)) flux += node.weight * law.profile(node.r);
      break;
  }
  return source / flux;
}

double compatibility_c(const StarDomain2D& domain, double alpha) {
  return compatibility_c(domain, alpha, BoundaryLaw::power(alpha));
}

double serrin_deficit(const PoissonSolution2D& sol, const BoundaryLaw& law) {
  const double c = law.c.value_or(compatibility_c(sol.domain(), sol.alpha(), law));
  double sum = 0.0, length = 0.0;
  for (const auto& node : boundary_nodes(sol.domain())) {
    const double misfit = sol.grad(node.position).dot(node.normal) + c * law.profile(node.r);
    sum += node.weight * misfit * misfit;
    length += node.weight;
  }
  return std::sqrt(sum / length);
}

Remark4Result remark4_check(const RadialFn& g, const RadialFn& dg, const RadialFn& d2g,
                            const StarDomain2D& domain, int dim, double tol) {
  const auto eval = [](const RadialFn& fn, double r, const char* what) {
    const double v = fn(r);
    if (!std::isfinite(v))
      throw EvaluationError(std::string(what) + " not finite at r = " + std::to_string(r));
    return v;
  };

  Remark4Result out{0.0, -std::numeric_limits<double>::infinity(), false, false};
  for (const auto& node : interior_nodes(domain, 256, 256))
    out.cond1 += node.weight * (node.r * eval(dg, node.r, "g'") - 2.0 * eval(g, node.r, "g"));

  constexpr int kGrid = 1024;
  const double d = diameter(domain);
  bool constant = true;
  for (int i = 1; i <= kGrid; ++i) {
    const double r = d * i / kGrid;
    const double g1 = eval(dg, r, "g'");
    const double g2 = eval(d2g, r, "g''");
    out.cond2_max = std::max(out.cond2_max, g2 + (dim - 1.0) / r * g1 - 2.0 / dim);
    constant = constant && std::abs(g1) <= tol && std::abs(g2) <= tol;
  }
  out.pass = out.cond1 >= -tol && out.cond2_max <= tol;
  out.constant_law_conflict = constant && out.cond1 < -tol;
  return out;
}

double fd_laplacian(const std::function<double(const Point2&)>& f, const Point2& x, double h) {
  const Point2 ex(h, 0.0), ey(0.0, h);
  return (f(x + ex) + f(x - ex) + f(x + ey) + f(x - ey) - 4.0 * f(x)) / (h * h);
}

std::vector<Point2> sample_interior(const StarDomain2D& domain, int count, std::uint64_t seed,
                                    double t_max) {
  std::mt19937_64 rng(seed);
  // Bit-exact mapping to [0, 1), unlike uniform_real_distribution.
  const auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double theta = 2.0 * std::numbers::pi * unit();
    const double t = t_max * unit();
    pts.push_back(t * domain.rho(theta) * Point2(std::cos(theta), std::sin(theta)));
  }
  return pts;
}

namespace {

double relative(double a, double b, double scale) {
  return std::abs(a - b) / std::max(std::abs(scale), std::numeric_limits<double>::min());
}

}  // namespace

bool IdentityReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

IdentityReport build_report(const PoissonSolution2D& sol, const ReportOptions& options) {
  const auto& dom = sol.domain();
  const auto& tol = options.tol;
  const double N = kPlaneDim;
  const double alpha = sol.alpha();

  IdentityReport rep{};
  rep.alpha = alpha;
  rep.law = options.law.name();
  rep.seed = options.seed;
  rep.tol = tol;
  rep.c_star = options.law.c.value_or(compatibility_c(dom, alpha, options.law));
  rep.cN = rep.c_star * N;
  const double c = rep.c_star;

  // Interior integrals on one polar grid.
  double int_u = 0.0, int_h = 0.0, int_ru = 0.0, int_grad2 = 0.0;
  for (const auto& node : interior_nodes(dom, tol.interior_radial, tol.interior_angular)) {
    const double u = sol.u(node.position);
    const Eigen::Vector2d g = sol.grad(node.position);
    int_u += node.weight * u;
    int_h += node.weight * (2.0 * u - node.position.dot(g));
    int_ru += node.weight * u * (alpha == 0.0 ? 1.0 : std::pow(node.r, alpha));
    int_grad2 += node.weight * g.squaredNorm();
  }
  const double int_r2 = moment_r2(dom);

  rep.lemma1_lhs = int_u;
  rep.lemma1_rhs = c * c * int_r2;
  rep.lemma1_residual = relative(rep.lemma1_lhs, rep.lemma1_rhs, rep.lemma1_lhs);

  rep.eq3_lhs = int_h;
  rep.eq3_rhs = boundary_integral_rh(sol, c);
  rep.eq3_residual = relative(rep.eq3_lhs, rep.eq3_rhs, rep.eq3_lhs);
  rep.eq4_check = relative(int_h, (2.0 + N) * int_u, int_h);
  rep.eq5_closed_form = c * c * (N + 2.0) * int_r2;
  rep.eq5_check = relative(rep.eq3_rhs, rep.eq5_closed_form, rep.eq5_closed_form);

  // int Phi = int |grad u|^2 - c^2 int r^2, and int |grad u|^2 = -int u Lap u.
  rep.phi_integral = int_grad2 - c * c * int_r2;
  rep.eq9_rhs = int_ru - c * c * int_r2;
  rep.eq9_residual = relative(rep.phi_integral, rep.eq9_rhs, int_ru);

  const auto nodes = boundary_nodes(dom);
  rep.phi_boundary_max = 0.0;
  for (const auto& node : nodes)
    rep.phi_boundary_max = std::max(rep.phi_boundary_max, std::abs(phi(sol, node.position, c)));

  rep.hessian_margin = std::numeric_limits<double>::infinity();
  rep.phi_interior_max = 0.0;
  for (const auto& x : sample_interior(dom, tol.hessian_samples, options.seed)) {
    const double lap = sol.source(x);
    rep.hessian_margin =
        std::min(rep.hessian_margin, sol.hessian(x).squaredNorm() - lap * lap / N);
    rep.phi_interior_max = std::max(rep.phi_interior_max, std::abs(phi(sol, x, c)));
  }

  rep.deficit = serrin_deficit(sol, options.law);

  // Stencils stay 10 steps away from the origin, where r^alpha may be non-smooth.
  auto fd_samples = sample_interior(dom, tol.fd_samples, options.seed + 1);
  std::erase_if(fd_samples, [&](const Point2& x) { return x.norm() < 10.0 * tol.fd_step; });
  rep.h_harmonicity = 0.0;
  for (const auto& x : fd_samples)
    rep.h_harmonicity = std::max(
        rep.h_harmonicity,
        std::abs(fd_laplacian([&](const Point2& p) { return aux_h(sol, p); }, x, tol.fd_step)));

  if (options.prop2) {
    const auto [c0, c1] = *options.prop2;
    const auto V = [&](const Point2& p) { return v_functional(sol, p, alpha, c0, c1); };
    double harm = 0.0, bmax = 0.0;
    for (const auto& x : fd_samples) harm = std::max(harm, std::abs(fd_laplacian(V, x, tol.fd_step)));
    for (const auto& node : nodes) bmax = std::max(bmax, std::abs(V(node.position)));
    rep.v_harmonicity = harm;
    rep.v_boundary_max = bmax;
  }

  rep.fit_residual = sol.fit_residual();
  rep.dirichlet_residual = dirichlet_residual(sol, 4 * 8 * sol.k_basis());
  rep.remark3_dist_check = 0.0;
  if (options.law.kind == BoundaryLaw::Kind::Power)
    rep.remark3_dist_check = rep.cN * std::pow(min_radius(dom), options.law.alpha - 1.0);

  auto& checks = rep.checks;
  const auto upper = [&checks](std::string name, double value, double limit) {
    checks.push_back({std::move(name), value, limit, value <= limit});
  };
  upper("eq4_rel", rep.eq4_check, tol.eq4_rel);
  upper("eq9_rel", rep.eq9_residual, tol.eq9_rel);
  checks.push_back({"hessian_margin", rep.hessian_margin, -tol.hessian,
                    rep.hessian_margin >= -tol.hessian});
  upper("deficit", rep.deficit, tol.deficit);
  const bool prop1 = alpha == 0.0 && options.law.kind == BoundaryLaw::Kind::Linear;
  if (alpha == 0.0) upper("h_harmonicity", rep.h_harmonicity, tol.harmonicity);
  if (prop1) {
    upper("cN", rep.cN, 1.0 + tol.cn_excess);
    upper("lemma1_rel", rep.lemma1_residual, tol.lemma1_rel);
    upper("eq3_rel", rep.eq3_residual, tol.eq3_rel);
    upper("eq5_rel", rep.eq5_check, tol.eq5_rel);
    upper("phi_boundary_max", rep.phi_boundary_max, tol.phi_boundary);
  }
  if (rep.v_harmonicity) upper("v_harmonicity", *rep.v_harmonicity, tol.harmonicity);
  return rep;
}

}  // namespace overdet
