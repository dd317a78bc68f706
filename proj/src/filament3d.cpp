#include "leapfrog/filament3d.hpp"

#include <cmath>
#include <numbers>

namespace leapfrog {

namespace {

void check_filament(const DiscreteFilament& f) {
  auto n = f.points.cols();
  if (n < 16 || n % 2 != 0)
    throw Error(Errc::ValidationFailure, "filament needs N >= 16 samples, N even");
}

// Periodic 4th-order central differences for first and second derivatives on
// the uniform grid xi_k = 2*pi*k/N.
void fd4_derivatives(const Eigen::Matrix3Xd& p, Eigen::Matrix3Xd& d1, Eigen::Matrix3Xd& d2) {
  const auto n = p.cols();
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  d1.resize(3, n);
  d2.resize(3, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto wrap = [n](Eigen::Index j) { return (j % n + n) % n; };
    auto pm2 = p.col(wrap(i - 2)), pm1 = p.col(wrap(i - 1)), p0 = p.col(i),
         pp1 = p.col(wrap(i + 1)), pp2 = p.col(wrap(i + 2));
    d1.col(i) = (-pp2 + 8.0 * pp1 - 8.0 * pm1 + pm2) / (12.0 * h);
    d2.col(i) = (-pp2 + 16.0 * pp1 - 30.0 * p0 + 16.0 * pm1 - pm2) / (12.0 * h * h);
  }
}

// Exact differentiation of the trigonometric interpolant (naive O(N^2) DFT).
void spectral_derivatives(const Eigen::Matrix3Xd& p, Eigen::Matrix3Xd& d1,
                          Eigen::Matrix3Xd& d2) {
  const auto n = p.cols();
  const double tau = 2.0 * std::numbers::pi / static_cast<double>(n);
  d1 = Eigen::Matrix3Xd::Zero(3, n);
  d2 = Eigen::Matrix3Xd::Zero(3, n);
  // real trigonometric coefficients a_k, b_k for k = 1 .. n/2
  for (Eigen::Index k = 1; k <= n / 2; ++k) {
    Eigen::Vector3d ak = Eigen::Vector3d::Zero(), bk = Eigen::Vector3d::Zero();
    for (Eigen::Index j = 0; j < n; ++j) {
      double ang = tau * static_cast<double>((k * j) % n);
      ak += p.col(j) * std::cos(ang);
      bk += p.col(j) * std::sin(ang);
    }
    double norm = (k == n / 2) ? 1.0 / n : 2.0 / n;
    ak *= norm;
    bk *= norm;
    double kk = static_cast<double>(k);
    if (k == n / 2) bk.setZero();  // Nyquist mode: cosine only
    for (Eigen::Index j = 0; j < n; ++j) {
      double ang = tau * static_cast<double>((k * j) % n);
      double c = std::cos(ang), s = std::sin(ang);
      d1.col(j) += kk * (-ak * s + bk * c);
      d2.col(j) += -kk * kk * (ak * c + bk * s);
    }
  }
}

}  // namespace

DiscreteFilament sample_circle(double radius, double z, double strength, int n) {
  if (!(radius > 0.0)) throw Error(Errc::ValidationFailure, "radius must be positive");
  DiscreteFilament f;
  f.strength = strength;
  f.points.resize(3, n);
  for (int k = 0; k < n; ++k) {
    double xi = 2.0 * std::numbers::pi * k / n;
    f.points.col(k) = Eigen::Vector3d(radius * std::cos(xi), radius * std::sin(xi), z);
  }
  check_filament(f);
  return f;
}

std::pair<DiscreteFilament, DiscreteFilament> sample_circular_pair(const PhysicalState& phys,
                                                                   int n, double gamma1,
                                                                   double gamma2) {
  return {sample_circle(phys.r1, phys.z1, gamma1, n),
          sample_circle(phys.r2, phys.z2, gamma2, n)};
}

Eigen::Matrix3Xd pde_rhs(const DiscreteFilament& fx, const DiscreteFilament& fy, double alpha,
                         DerivativeScheme scheme) {
  check_filament(fx);
  check_filament(fy);
  if (fx.points.cols() != fy.points.cols())
    throw Error(Errc::ValidationFailure, "filaments must have matching sample counts");
  if (!(alpha > 0.0)) throw Error(Errc::ValidationFailure, "alpha must be positive");

  const auto n = fx.points.cols();
  Eigen::Matrix3Xd x1, x2, y1, y2;
  if (scheme == DerivativeScheme::FiniteDifference4) {
    fd4_derivatives(fx.points, x1, x2);
    fd4_derivatives(fy.points, y1, y2);
  } else {
    spectral_derivatives(fx.points, x1, x2);
    spectral_derivatives(fy.points, y1, y2);
  }

  Eigen::Matrix3Xd v(3, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Vector3d xp = x1.col(i);
    Eigen::Vector3d self = xp.cross(Eigen::Vector3d(x2.col(i)));
    double xpn = xp.norm();
    Eigen::Vector3d sep = fx.points.col(i) - fy.points.col(i);
    double dist = sep.norm();
    if (dist <= 1e-12)
      throw Error(Errc::FilamentContact, "paired samples closer than 1e-12");
    Eigen::Vector3d inter = Eigen::Vector3d(y1.col(i)).cross(sep);
    v.col(i) = fx.strength * self / (xpn * xpn * xpn) -
               alpha * fy.strength * inter / (dist * dist * dist);
  }
  return v;
}

}  // namespace leapfrog
