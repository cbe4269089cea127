#pragma once

#include "overdet/geometry.hpp"

#include <Eigen/Dense>

#include <vector>

namespace overdet {

/// Solution of  Lap u = -r^alpha  in the domain,  u = 0  on its boundary, as
///
///   u = p * r^(alpha+2) + h0 + sum_k (hc_k r^k cos k theta + hs_k r^k sin k theta)
///
/// with p = -1/(alpha+2)^2. Every term but the first is harmonic, so the PDE
/// holds exactly at every interior point; only the Dirichlet condition is
/// approximate (to fit_residual at the collocation nodes).
class PoissonSolution2D {
 public:
  PoissonSolution2D(StarDomain2D domain, double alpha, Eigen::VectorXd harmonic_coeffs,
                    double fit_residual);

  const StarDomain2D& domain() const { return domain_; }
  double alpha() const { return alpha_; }
  double particular_coeff() const { return particular_; }
  /// Layout [h0, hc_1, hs_1, hc_2, hs_2, ...].
  const Eigen::VectorXd& harmonic_coeffs() const { return coeffs_; }
  int k_basis() const { return static_cast<int>((coeffs_.size() - 1) / 2); }
  double fit_residual() const { return fit_residual_; }

  double u(const Point2& x) const;
  Eigen::Vector2d grad(const Point2& x) const;
  Eigen::Matrix2d hessian(const Point2& x) const;

  /// -r^alpha, the prescribed Laplacian.
  double source(const Point2& x) const;

 private:
  StarDomain2D domain_;
  double alpha_;
  double particular_;
  Eigen::VectorXd coeffs_;
  double fit_residual_;
};

/// Least-squares boundary collocation with m = collocation nodes (default
/// 8 * k_basis). Columns are normalized by their max modulus before a
/// column-pivoted QR; a rank-deficient system throws IllConditionedBasis.
PoissonSolution2D solve(const StarDomain2D& domain, double alpha, int k_basis,
                        int collocation = 0);

inline double eval_u(const PoissonSolution2D& sol, const Point2& x) { return sol.u(x); }
inline Eigen::Vector2d eval_grad(const PoissonSolution2D& sol, const Point2& x) {
  return sol.grad(x);
}
inline Eigen::Matrix2d eval_hessian(const PoissonSolution2D& sol, const Point2& x) {
  return sol.hessian(x);
}

/// grad u . nu at each node.
std::vector<double> normal_derivative(const PoissonSolution2D& sol,
                                      const std::vector<BoundaryNode>& nodes);

/// max |u| over `m` equispaced boundary points offset by half a step from
/// the collocation grid.
double dirichlet_residual(const PoissonSolution2D& sol, int m);

}  // namespace overdet
