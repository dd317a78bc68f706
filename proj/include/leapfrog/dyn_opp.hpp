#pragma once

#include <optional>

#include "leapfrog/dyn_same.hpp"
#include "leapfrog/types.hpp"

namespace leapfrog {

/// Equilibrium structure of the opposite-sign reduced system.
/// For gamma <= gamma_star the system has no equilibrium and the leapfrogging
/// threshold is pi*gamma^(3/2)/(2*sqrt(d)); for gamma > gamma_star there is a
/// single equilibrium (theta_star, 0) past theta_gamma, the threshold is
/// G(theta_star, 0), and theta_bar in (0, theta_gamma) is the matching level
/// crossing G(theta_bar, 0) = G(theta_star, 0).
struct EquilibriumReportOpp {
  double theta_gamma = 0.0;  ///< singular angle artanh(1/sqrt(gamma))
  double gamma_star = 0.0;   ///< critical ratio for this alpha
  std::optional<double> theta_star;
  std::optional<double> theta_bar;
  double g_threshold = 0.0;
};

/// Vector field (G1, G2) of the opposite-sign reduced system.
/// Requires gamma > 1; throws SingularPoint within 1e-12 of (theta_gamma, 0)
/// and DomainViolation for theta <= 0.
Deriv2 field_opp(const ReducedState& state, const ModelParams& params);

/// Hamiltonian G(theta, W); G1 = dG/dW, G2 = -dG/dtheta.  Strictly decreasing
/// in |W| for fixed theta; diverges to +inf at the singular point and to -inf
/// as theta -> 0.
double hamiltonian_opp(const ReducedState& state, const ModelParams& params);

/// Critical ratio gamma_star = eta*^2 where eta* is the unique root in (1, 4)
/// of phi(eta) = eta^4 - eta^3 - alpha*eta^2 + eta - 1.  An equilibrium of the
/// reduced system exists iff gamma > gamma_star.  Requires 0 < alpha < 1/3.
double gamma_star(double alpha);

/// Equilibrium report for fixed (alpha, gamma, d); theta_star is recovered
/// from the cubic
///   h_a(y) = gamma*y^3 + (1-2*gamma)*y^2 + (gamma-2)*y + 1 + alpha*y*(y-gamma)
/// on (1, sqrt(gamma)) via theta_star = artanh(y*/sqrt(gamma)).
/// Requires 0 < alpha < 1/3 and gamma > 1 (GammaOutOfRange otherwise).
EquilibriumReportOpp equilibria_opp(const ModelParams& params);

/// Necessary-and-sufficient leapfrogging test.  gamma <= gamma_star:
/// Leapfrog iff G(theta0,W0) > pi*gamma^(3/2)/(2*sqrt(d)).  gamma > gamma_star:
/// Leapfrog iff theta0 in (theta_bar, theta_star) and G(theta0,W0) >
/// G(theta_star,0).  gamma = 1 yields LeapfrogImpossible (the filaments
/// collide instead); so does a non-positive invariant d.
Verdict classify_opp(const ReducedState& state0, const ModelParams& params);

/// classify_opp against a precomputed equilibrium report (grid evaluation).
Verdict classify_opp_with(const EquilibriumReportOpp& eq, const ReducedState& state0,
                          const ModelParams& params);

}  // namespace leapfrog
