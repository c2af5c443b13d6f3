#include "gateforge/gate_families.hpp"

#include <cmath>
#include <string>

namespace gateforge {

namespace {

void check_finite_angle(double x, const char* name) {
  if (!std::isfinite(x))
    throw std::invalid_argument(std::string("angle ") + name + " must be finite");
}

cplx phase(double angle) { return std::exp(cplx(0.0, angle)); }

// Moduli below this are treated as exactly vanishing when extracting phases.
constexpr double kDegenerate = 1e-12;

}  // namespace

double canonical_angle(double x) {
  double y = std::fmod(x + kPi, 2.0 * kPi);
  if (y <= 0.0) y += 2.0 * kPi;
  return y - kPi;
}

SimpleNotParams::SimpleNotParams(double alpha_, double beta_) {
  check_finite_angle(alpha_, "alpha");
  check_finite_angle(beta_, "beta");
  alpha = canonical_angle(alpha_);
  beta = canonical_angle(beta_);
}

ExtendedGeneralParams::ExtendedGeneralParams(double chi_, double beta_, double alpha_,
                                             double rho_, double eta_, double delta_,
                                             double Omega_, double Upsilon_) {
  check_finite_angle(chi_, "chi");
  check_finite_angle(beta_, "beta");
  check_finite_angle(alpha_, "alpha");
  check_finite_angle(rho_, "rho");
  check_finite_angle(eta_, "eta");
  check_finite_angle(delta_, "delta");
  if (!std::isfinite(Omega_) || Omega_ < 0.0 || Omega_ > kPi / 2.0)
    throw std::invalid_argument("Omega must lie in [0, pi/2]");
  if (!std::isfinite(Upsilon_) || Upsilon_ < 0.0 || Upsilon_ > kPi / 2.0)
    throw std::invalid_argument("Upsilon must lie in [0, pi/2]");
  chi = canonical_angle(chi_);
  beta = canonical_angle(beta_);
  alpha = canonical_angle(alpha_);
  rho = canonical_angle(rho_);
  eta = canonical_angle(eta_);
  delta = canonical_angle(delta_);
  Omega = Omega_;
  Upsilon = Upsilon_;
}

ExtendedRestrictedParams::ExtendedRestrictedParams(double alpha_, double beta_,
                                                   double rho_, double delta_) {
  check_finite_angle(alpha_, "alpha");
  check_finite_angle(beta_, "beta");
  check_finite_angle(rho_, "rho");
  check_finite_angle(delta_, "delta");
  alpha = canonical_angle(alpha_);
  beta = canonical_angle(beta_);
  rho = canonical_angle(rho_);
  delta = canonical_angle(delta_);
}

QMatrix build_simple_not(const SimpleNotParams& p) {
  return QMatrix(2, {0.0, phase(p.beta), phase(p.alpha), 0.0});
}

QMatrix build_extended_general(const ExtendedGeneralParams& p) {
  const double so = std::sin(p.Omega), co = std::cos(p.Omega);
  const double su = std::sin(p.Upsilon), cu = std::cos(p.Upsilon);
  QMatrix u = QMatrix::zero(4);
  u(0, 2) = phase(p.chi) * so;
  u(0, 3) = phase(p.beta) * co;
  u(1, 0) = -phase(p.alpha + p.rho - p.eta) * su;
  u(1, 1) = phase(p.rho) * cu;
  u(2, 2) = phase(p.delta) * co;
  u(2, 3) = -phase(p.beta + p.delta - p.chi) * so;
  u(3, 0) = phase(p.alpha) * cu;
  u(3, 1) = phase(p.eta) * su;
  return u;
}

QMatrix build_extended_restricted(const ExtendedRestrictedParams& p) {
  QMatrix u = QMatrix::zero(4);
  u(0, 3) = phase(p.beta);
  u(1, 1) = phase(p.rho);
  u(2, 2) = phase(p.delta);
  u(3, 0) = phase(p.alpha);
  return u;
}

bool is_not_shape(const QMatrix& u, double tol) {
  if (u.dim() != 4) throw DimensionError("is_not_shape: dimension must be 4");
  static const int zeros[8][2] = {{0, 0}, {0, 1}, {1, 2}, {1, 3},
                                  {2, 0}, {2, 1}, {3, 2}, {3, 3}};
  for (const auto& z : zeros)
    if (std::abs(u(z[0], z[1])) > tol) return false;
  return true;
}

ExtendedGeneralParams fit_extended_general(const QMatrix& u) {
  if (u.dim() != 4) throw ShapeError("fit_extended_general: dimension must be 4");
  if (!is_unitary(u, 1e-10))
    throw ShapeError("fit_extended_general: matrix is not unitary");
  if (!is_not_shape(u, 1e-10))
    throw ShapeError("fit_extended_general: matrix does not have the NOT block shape");

  // upper block, rows {1,3} x columns {3,4} (1-based)
  const double so = std::abs(u(0, 2)), co = std::abs(u(0, 3));
  const double Omega = std::atan2(so, co);
  const double chi = so > kDegenerate ? std::arg(u(0, 2)) : 0.0;
  double beta, delta;
  if (co > kDegenerate) {
    beta = std::arg(u(0, 3));
    delta = std::arg(u(2, 2));
  } else {
    // cos(Omega) vanishes: beta is unconstrained, the combination
    // beta + delta - chi survives in entry (3,4)
    beta = 0.0;
    delta = canonical_angle(std::arg(-u(2, 3)) + chi - beta);
  }

  // lower block, rows {2,4} x columns {1,2}
  const double su = std::abs(u(3, 1)), cu = std::abs(u(3, 0));
  const double Upsilon = std::atan2(su, cu);
  const double eta = su > kDegenerate ? std::arg(u(3, 1)) : 0.0;
  double alpha, rho;
  if (cu > kDegenerate) {
    alpha = std::arg(u(3, 0));
    rho = std::arg(u(1, 1));
  } else {
    alpha = 0.0;
    rho = canonical_angle(std::arg(-u(1, 0)) + eta - alpha);
  }

  const ExtendedGeneralParams fitted(chi, beta, alpha, rho, eta, delta, Omega, Upsilon);
  const double residual = max_abs_diff(build_extended_general(fitted), u);
  if (residual > 1e-9)
    throw FitError("fit_extended_general: residual " + std::to_string(residual) +
                   " exceeds 1e-9");
  return fitted;
}

}  // namespace gateforge
