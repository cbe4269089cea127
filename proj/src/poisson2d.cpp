#include "overdet/poisson2d.hpp"

#include "overdet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace overdet {

namespace {

using Complex = std::complex<double>;

// z^k for k = 0..kmax.
std::vector<Complex> powers(const Point2& x, int kmax) {
  std::vector<Complex> zk(static_cast<std::size_t>(kmax) + 1);
  const Complex z(x.x(), x.y());
  zk[0] = 1.0;
  for (int k = 1; k <= kmax; ++k) zk[k] = zk[k - 1] * z;
  return zk;
}

}  // namespace

PoissonSolution2D::PoissonSolution2D(StarDomain2D domain, double alpha,
                                     Eigen::VectorXd harmonic_coeffs, double fit_residual)
    : domain_(std::move(domain)),
      alpha_(alpha),
      particular_(-1.0 / ((alpha + 2.0) * (alpha + 2.0))),
      coeffs_(std::move(harmonic_coeffs)),
      fit_residual_(fit_residual) {
  if (alpha < 0.0) throw OutOfRange("source exponent must be non-negative");
  if (coeffs_.size() < 1 || coeffs_.size() % 2 == 0)
    throw InvalidDomain("harmonic coefficient vector must have odd length 2K+1");
}

double PoissonSolution2D::source(const Point2& x) const {
  return alpha_ == 0.0 ? -1.0 : -std::pow(x.norm(), alpha_);
}

double PoissonSolution2D::u(const Point2& x) const {
  const int K = k_basis();
  const auto zk = powers(x, K);
  double value = particular_ * std::pow(x.squaredNorm(), 0.5 * alpha_ + 1.0) + coeffs_[0];
  for (int k = 1; k <= K; ++k)
    value += coeffs_[2 * k - 1] * zk[k].real() + coeffs_[2 * k] * zk[k].imag();
  return value;
}

Eigen::Vector2d PoissonSolution2D::grad(const Point2& x) const {
  const int K = k_basis();
  const auto zk = powers(x, K);
  // grad of -r^(alpha+2)/(alpha+2)^2 is -r^alpha x/(alpha+2)
  const double ra = alpha_ == 0.0 ? 1.0 : std::pow(x.norm(), alpha_);
  Eigen::Vector2d g = -ra / (alpha_ + 2.0) * x;
  for (int k = 1; k <= K; ++k) {
    // d/dz z^k = k z^(k-1): grad Re = (Re, -Im), grad Im = (Im, Re) of k z^(k-1).
    const Complex d = static_cast<double>(k) * zk[k - 1];
    g += coeffs_[2 * k - 1] * Eigen::Vector2d(d.real(), -d.imag()) +
         coeffs_[2 * k] * Eigen::Vector2d(d.imag(), d.real());
  }
  return g;
}

Eigen::Matrix2d PoissonSolution2D::hessian(const Point2& x) const {
  const int K = k_basis();
  const auto zk = powers(x, K);
  const double r = x.norm();
  const double ra = alpha_ == 0.0 ? 1.0 : std::pow(r, alpha_);
  // -(r^alpha I + alpha r^(alpha-2) x x^T)/(alpha+2); the second term vanishes at r = 0.
  Eigen::Matrix2d H = -ra / (alpha_ + 2.0) * Eigen::Matrix2d::Identity();
  if (alpha_ != 0.0 && r > 0.0) H -= alpha_ * ra / (r * r * (alpha_ + 2.0)) * (x * x.transpose());
  for (int k = 2; k <= K; ++k) {
    const Complex d2 = static_cast<double>(k) * (k - 1.0) * zk[k - 2];
    const double a = coeffs_[2 * k - 1], b = coeffs_[2 * k];
    // Re z^k: [[Re, -Im], [-Im, -Re]]; Im z^k: [[Im, Re], [Re, -Im]] (times d2).
    const double xx = a * d2.real() + b * d2.imag();
    const double xy = -a * d2.imag() + b * d2.real();
    H(0, 0) += xx;
    H(1, 1) -= xx;
    H(0, 1) += xy;
  }
  H(1, 0) = H(0, 1);
  return H;
}

PoissonSolution2D solve(const StarDomain2D& domain, double alpha, int k_basis, int collocation) {
  if (alpha < 0.0) throw OutOfRange("source exponent must be non-negative");
  if (k_basis < 4) throw OutOfRange("k_basis must be at least 4");
  const int m = collocation > 0 ? collocation : 8 * k_basis;
  if (m < 4 * k_basis) throw OutOfRange("need at least 4 * k_basis collocation nodes");

  const auto nodes = boundary_nodes(domain, m);
  const int cols = 2 * k_basis + 1;
  Eigen::MatrixXd A(m, cols);
  Eigen::VectorXd rhs(m);
  const double particular = -1.0 / ((alpha + 2.0) * (alpha + 2.0));
  for (int i = 0; i < m; ++i) {
    const auto zk = powers(nodes[i].position, k_basis);
    A(i, 0) = 1.0;
    for (int k = 1; k <= k_basis; ++k) {
      A(i, 2 * k - 1) = zk[k].real();
      A(i, 2 * k) = zk[k].imag();
    }
    rhs[i] = -particular * std::pow(nodes[i].r, alpha + 2.0);
  }

  const Eigen::VectorXd scale = A.cwiseAbs().colwise().maxCoeff().transpose();
  if ((scale.array() <= 0.0).any()) throw IllConditionedBasis("basis column vanishes on the boundary");
  const Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(As);
  qr.setThreshold(1e-13);
  if (qr.rank() < cols)
    throw IllConditionedBasis("harmonic basis is rank deficient on this boundary (rank " +
                              std::to_string(qr.rank()) + " of " + std::to_string(cols) +
                              "); lower k_basis");
  const Eigen::VectorXd coeffs = qr.solve(rhs).cwiseQuotient(scale);
  if (!coeffs.allFinite()) throw IllConditionedBasis("non-finite least-squares solution");

  const double misfit = (A * coeffs - rhs).cwiseAbs().maxCoeff();
  return PoissonSolution2D(domain, alpha, coeffs, misfit);
}

std::vector<double> normal_derivative(const PoissonSolution2D& sol,
                                      const std::vector<BoundaryNode>& nodes) {
  std::vector<double> out;
  out.reserve(nodes.size());
  for (const auto& node : nodes) out.push_back(sol.grad(node.position).dot(node.normal));
  return out;
}

double dirichlet_residual(const PoissonSolution2D& sol, int m) {
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    const double theta = 2.0 * std::numbers::pi * (i + 0.5) / m;
    const double rho = sol.domain().rho(theta);
    worst = std::max(worst, std::abs(sol.u(rho * Point2(std::cos(theta), std::sin(theta)))));
  }
  return worst;
}

}  // namespace overdet
