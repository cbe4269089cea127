#pragma once

#include "overdet/geometry.hpp"
#include "overdet/identities.hpp"

#include <vector>

namespace overdet {

struct RecoveryConfig {
  BoundaryLaw::Kind law = BoundaryLaw::Kind::Linear;  // Linear or Constant
  double relaxation = 0.5;
  int max_iters = 200;
  double deficit_tol = 1e-8;
  int k_basis = 32;
  bool renormalize_area = true;
  int k_geom = 12;
  double mode1_damping = 0.5;
  /// Allowed deficit increase before a step is rejected.
  double increase_tol = 1e-12;
  int max_halvings = 5;
  /// Boundary samples used to project the target radius onto Fourier modes.
  int projection_points = 256;

  void validate() const;
};

struct RecoveryIterate {
  StarDomain2D domain;
  double deficit;
  double c_star;
  double cN;
  double relaxation;  // step size that produced this iterate (0 for the initial one)
};

struct RecoveryTrace {
  std::vector<RecoveryIterate> iterates;
  bool converged = false;
  int rejected_steps = 0;
  double final_fourier_energy = 0.0;
};

/// Fixed-point shape iteration driving the boundary law toward exactness.
///
/// Each step solves Lap u = -1 on the current domain and forms the target
/// radius rho_hat from the Neumann data:
///   linear-cr:   rho_hat = -du/dnu / c*            (fixed point: -du/dnu = c* r)
///   constant-c:  rho_hat = rho (-du/dnu) / c*      (fixed point: -du/dnu = c*)
/// The correction rho_hat - rho is projected onto k_geom Fourier modes and
/// each mode is divided by its linearized gain around a disk (k for the
/// linear law, k-1 for the constant law), then applied with step
/// `relaxation`. The result is translated so that its mode-1 content shrinks
/// by `mode1_damping` per step; the area is optionally restored to the
/// initial one. A step whose deficit increases,
/// or whose domain is invalid, is retried with half the step (up to
/// max_halvings times, then the iteration stops unconverged); halved steps
/// stay halved.
RecoveryTrace recover(const StarDomain2D& initial, const RecoveryConfig& cfg = {});

struct LandscapePoint {
  double amplitude;
  double deficit;  // NaN when the perturbed domain is invalid
  bool valid;
};

/// Deficit on base + eps cos(mode_k theta) for each eps.
std::vector<LandscapePoint> deficit_landscape(const StarDomain2D& base, int mode_k,
                                              const std::vector<double>& amplitudes,
                                              const BoundaryLaw& law, int k_basis = 32);

/// The domain moved by -shift, re-expressed as a radius function about the
/// origin and projected onto k_geom modes from `samples` boundary points.
StarDomain2D translated(const StarDomain2D& domain, const Point2& shift, int k_geom,
                        int samples = 256);

/// Domain with the extra term eps cos(k theta) (coefficient arrays extended as needed).
StarDomain2D perturb_cos(const StarDomain2D& base, int k, double eps);

}  // namespace overdet
