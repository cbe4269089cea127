#include "overdet/shape.hpp"

#include "overdet/errors.hpp"
#include "overdet/poisson2d.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace overdet {

void RecoveryConfig::validate() const {
  if (law != BoundaryLaw::Kind::Linear && law != BoundaryLaw::Kind::Constant)
    throw OutOfRange("shape recovery supports the constant-c and linear-cr laws");
  if (!(relaxation > 0.0 && relaxation <= 1.0)) throw OutOfRange("relaxation must be in (0, 1]");
  if (!(deficit_tol > 0.0)) throw OutOfRange("deficit_tol must be positive");
  if (max_iters < 0) throw OutOfRange("max_iters must be non-negative");
  if (k_geom < 1) throw OutOfRange("k_geom must be positive");
  if (projection_points < 4 * k_geom + 4) throw OutOfRange("too few projection points");
}

StarDomain2D perturb_cos(const StarDomain2D& base, int k, double eps) {
  if (k < 1) throw OutOfRange("perturbation mode must be positive");
  const int K = std::max(base.modes(), k);
  Eigen::VectorXd a = Eigen::VectorXd::Zero(K), b = Eigen::VectorXd::Zero(K);
  a.head(base.modes()) = base.cos_coeffs();
  b.head(base.modes()) = base.sin_coeffs();
  a[k - 1] += eps;
  return StarDomain2D(base.a0(), a, b, base.quad_points());
}

namespace {

struct Evaluation {
  PoissonSolution2D sol;
  double deficit;
  double c_star;
};

Evaluation evaluate(const StarDomain2D& domain, const RecoveryConfig& cfg, std::size_t index) {
  try {
    auto sol = solve(domain, 0.0, cfg.k_basis);
    BoundaryLaw law{cfg.law, 1.0, {}, {}};
    const double c = compatibility_c(domain, 0.0, law);
    law.c = c;
    const double deficit = serrin_deficit(sol, law);
    return {std::move(sol), deficit, c};
  } catch (const Error& e) {
    throw RecoveryFailure(index, e.what());
  }
}

// Truncate to k_geom modes and zero-pad shorter coefficient lists.
void resize_modes(Eigen::VectorXd& v, int k) {
  const Eigen::Index old = v.size();
  v.conservativeResize(k);
  if (old < k) v.tail(k - old).setZero();
}

// Fourier projection of the correction rho_hat - rho, preconditioned mode-wise.
struct Correction {
  double d0;
  Eigen::VectorXd dc;
  Eigen::VectorXd ds;
};

std::optional<Correction> correction(const Evaluation& ev, const RecoveryConfig& cfg) {
  const int M = cfg.projection_points;
  const auto nodes = boundary_nodes(ev.sol.domain(), M);
  const auto dudn = normal_derivative(ev.sol, nodes);
  Eigen::VectorXd delta(M);
  for (int i = 0; i < M; ++i) {
    const double rho = nodes[i].r;
    const double target = cfg.law == BoundaryLaw::Kind::Linear ? -dudn[i] / ev.c_star
                                                                : rho * (-dudn[i]) / ev.c_star;
    if (!(target > 0.0)) return std::nullopt;
    delta[i] = target - rho;
  }
  Correction out{delta.mean(), Eigen::VectorXd::Zero(cfg.k_geom), Eigen::VectorXd::Zero(cfg.k_geom)};
  for (int k = 1; k <= cfg.k_geom; ++k) {
    double sc = 0.0, ss = 0.0;
    for (int i = 0; i < M; ++i) {
      sc += delta[i] * std::cos(k * nodes[i].theta);
      ss += delta[i] * std::sin(k * nodes[i].theta);
    }
    double gain = cfg.law == BoundaryLaw::Kind::Linear ? k : k - 1.0;
    if (gain < 1.0) gain = 1.0;
    out.dc[k - 1] = 2.0 * sc / M / gain;
    out.ds[k - 1] = 2.0 * ss / M / gain;
  }
  return out;
}

}  // namespace

StarDomain2D translated(const StarDomain2D& domain, const Point2& shift, int k_geom,
                        int samples) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  // Boundary point of the shifted curve seen from the origin at angle phi:
  // Newton on the polar angle of X(theta) - shift.
  Eigen::VectorXd radius(samples);
  for (int i = 0; i < samples; ++i) {
    const double phi = kTwoPi * i / samples;
    double theta = phi;
    Point2 y;
    for (int iter = 0; iter < 50; ++iter) {
      const double rho = domain.rho(theta), drho = domain.drho(theta);
      const Point2 dir(std::cos(theta), std::sin(theta)), perp(-dir.y(), dir.x());
      y = rho * dir - shift;
      const Point2 dy = drho * dir + rho * perp;
      const double dangle = (y.x() * dy.y() - y.y() * dy.x()) / y.squaredNorm();
      const double err = std::remainder(std::atan2(y.y(), y.x()) - phi, kTwoPi);
      theta -= err / dangle;
      if (std::abs(err) < 1e-15) break;
    }
    y = domain.rho(theta) * Point2(std::cos(theta), std::sin(theta)) - shift;
    radius[i] = y.norm();
  }
  Eigen::VectorXd a(k_geom), b(k_geom);
  for (int k = 1; k <= k_geom; ++k) {
    double sc = 0.0, ss = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double phi = kTwoPi * i / samples;
      sc += radius[i] * std::cos(k * phi);
      ss += radius[i] * std::sin(k * phi);
    }
    a[k - 1] = 2.0 * sc / samples;
    b[k - 1] = 2.0 * ss / samples;
  }
  return StarDomain2D(radius.mean(), a, b, domain.quad_points());
}

RecoveryTrace recover(const StarDomain2D& initial, const RecoveryConfig& cfg) {
  cfg.validate();
  RecoveryTrace trace;
  const double target_area = area(initial);

  StarDomain2D current = initial;
  Evaluation ev = evaluate(current, cfg, 0);
  trace.iterates.push_back({current, ev.deficit, ev.c_star, ev.c_star * kPlaneDim, 0.0});
  double lambda = cfg.relaxation;

  while (ev.deficit >= cfg.deficit_tol &&
         trace.iterates.size() <= static_cast<std::size_t>(cfg.max_iters)) {
    const std::size_t index = trace.iterates.size();
    const auto corr = correction(ev, cfg);

    std::optional<StarDomain2D> accepted;
    std::optional<Evaluation> accepted_ev;
    for (int attempt = 0; attempt <= cfg.max_halvings; ++attempt) {
      if (attempt > 0) {
        lambda *= 0.5;
        ++trace.rejected_steps;
      }
      if (!corr) continue;
      Eigen::VectorXd a = current.cos_coeffs(), b = current.sin_coeffs();
      resize_modes(a, cfg.k_geom);
      resize_modes(b, cfg.k_geom);
      double a0 = current.a0() + lambda * corr->d0;
      a += lambda * corr->dc;
      b += lambda * corr->ds;

      std::optional<StarDomain2D> candidate;
      try {
        candidate.emplace(a0, a, b, current.quad_points());
        // Recentre: shifting by (1 - damping) times the mode-1 vector scales
        // that mode by `mode1_damping` to first order and keeps disks disks.
        const Point2 shift = (1.0 - cfg.mode1_damping) * Point2(a[0], b[0]);
        if (shift.norm() > 0.0)
          candidate = translated(*candidate, shift, cfg.k_geom, cfg.projection_points);
        if (cfg.renormalize_area) candidate = candidate->scaled(std::sqrt(target_area / area(*candidate)));
      } catch (const InvalidDomain&) {
        continue;
      }
      auto cand_ev = evaluate(*candidate, cfg, index);
      if (cand_ev.deficit > ev.deficit + cfg.increase_tol) continue;
      accepted = std::move(candidate);
      accepted_ev.emplace(std::move(cand_ev));
      break;
    }
    if (!accepted) break;

    current = std::move(*accepted);
    ev = std::move(*accepted_ev);
    trace.iterates.push_back({current, ev.deficit, ev.c_star, ev.c_star * kPlaneDim, lambda});
  }

  trace.converged = ev.deficit < cfg.deficit_tol;
  trace.final_fourier_energy = current.fourier_energy();
  return trace;
}

std::vector<LandscapePoint> deficit_landscape(const StarDomain2D& base, int mode_k,
                                              const std::vector<double>& amplitudes,
                                              const BoundaryLaw& law, int k_basis) {
  if (mode_k < 2) throw OutOfRange("mode_k must be at least 2 (mode 1 is a translation)");
  std::vector<LandscapePoint> out;
  out.reserve(amplitudes.size());
  for (const double eps : amplitudes) {
    try {
      const auto domain = perturb_cos(base, mode_k, eps);
      out.push_back({eps, serrin_deficit(solve(domain, 0.0, k_basis), law), true});
    } catch (const InvalidDomain&) {
      out.push_back({eps, std::numeric_limits<double>::quiet_NaN(), false});
    }
  }
  return out;
}

}  // namespace overdet
