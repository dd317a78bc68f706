#pragma once

#include <Eigen/Dense>
#include <utility>

#include "leapfrog/types.hpp"

namespace leapfrog {

/// Closed curve sampled at N uniform parameter values xi_k = 2*pi*k/N,
/// N >= 16 and even.  Columns of `points` are the sample positions.
struct DiscreteFilament {
  Eigen::Matrix3Xd points;
  double strength = 1.0;
};

enum class DerivativeScheme { FiniteDifference4, Spectral };

/// Uniformly sampled circle of given radius at height z.
DiscreteFilament sample_circle(double radius, double z, double strength, int n);

/// The two coaxial circles of a physical configuration, sampled at matched
/// parameter (point k of one circle pairs with point k of the other).
std::pair<DiscreteFilament, DiscreteFilament> sample_circular_pair(const PhysicalState& phys,
                                                                   int n, double gamma1 = 1.0,
                                                                   double gamma2 = 1.0);

/// Velocity samples for filament fx under the two-filament model:
///   v = Gamma1 * (X_xi x X_xixi)/|X_xi|^3 - alpha*Gamma2 * (Y_xi x (X-Y))/|X-Y|^3
/// with xi-derivatives by 4th-order central differences (default) or exact
/// trigonometric (spectral) differentiation.  Points are paired at equal
/// parameter.  Throws FilamentContact if any |X_k - Y_k| <= 1e-12.
Eigen::Matrix3Xd pde_rhs(const DiscreteFilament& fx, const DiscreteFilament& fy, double alpha,
                         DerivativeScheme scheme = DerivativeScheme::FiniteDifference4);

}  // namespace leapfrog
