#pragma once

#include "leapfrog/types.hpp"

namespace leapfrog {

/// Right-hand side of a reduced planar system.
struct Deriv2 {
  double dtheta = 0.0;
  double dw = 0.0;
};

/// Equilibrium structure of the same-sign reduced system for fixed
/// (alpha, beta, d).  Both equilibria are saddles of the Hamiltonian with
/// 0 < theta_star < theta_beta < theta_star2 < pi/2.
struct EquilibriumReportSame {
  double theta_beta = 0.0;   ///< singular angle arctan(1/sqrt(beta))
  double theta_star = 0.0;   ///< equilibrium left of theta_beta
  double theta_star2 = 0.0;  ///< equilibrium right of theta_beta
  double h_star = 0.0;       ///< min{H(theta_star,0), H(theta_star2,0)}
};

/// Vector field (F1, F2) of the same-sign reduced system.
/// Throws SingularPoint within 1e-12 of (theta_beta, 0) and DomainViolation
/// outside 0 < theta < pi/2.
Deriv2 field_same(const ReducedState& state, const ModelParams& params);

/// Hamiltonian H(theta, W); F1 = dH/dW, F2 = -dH/dtheta.
/// Diverges to -inf at theta -> 0, pi/2 and at the singular point.
double hamiltonian_same(const ReducedState& state, const ModelParams& params);

/// Locates both equilibria: theta_star via the cubic
///   h_a(y) = beta*y^3 - (2*beta+1)*y^2 + (beta+2)*y - 1 + alpha*(y^2 + beta*y)
/// on (0,1) with theta_star = arctan(y*/sqrt(beta)), and theta_star2 by
/// bracketed root-finding of f(theta) = F2(theta, 0) on (theta_beta, pi/2).
/// Requires 0 < alpha < 1/3 (AlphaOutOfRange otherwise).
EquilibriumReportSame equilibria_same(const ModelParams& params);

/// Necessary-and-sufficient leapfrogging test: Leapfrog iff
/// theta0 in (theta_star, theta_star2) and H(theta0, W0) < h_star, both
/// strict.  Equalities within 1e-12 classify NonLeapfrog (those orbits
/// converge to an equilibrium).  alpha >= 1/3 yields OutOfTheoremScope.
Verdict classify_same(const ReducedState& state0, const ModelParams& params);

/// classify_same against a precomputed equilibrium report (grid evaluation).
Verdict classify_same_with(const EquilibriumReportSame& eq, const ReducedState& state0,
                           const ModelParams& params);

}  // namespace leapfrog
