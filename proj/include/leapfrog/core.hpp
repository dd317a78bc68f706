#pragma once

#include "leapfrog/types.hpp"

namespace leapfrog {

/// Throws ValidationFailure unless alpha > 0, ratio >= 1 and d > 0.
void check_params(const ModelParams& params);

/// Singular angle of the reduced phase space: theta_beta = arctan(1/sqrt(beta))
/// or theta_gamma = artanh(1/sqrt(gamma)).  The point (singular_angle(p), 0)
/// is the image of the two filaments overlapping.
double singular_angle(const ModelParams& params);

/// True iff (theta, w) lies in the open phase space of the regime
/// (interior theta, not the singular point).
bool in_phase_space(const ReducedState& state, const ModelParams& params);

struct RadiiW {
  double r1 = 0.0;
  double r2 = 0.0;
  double w = 0.0;
};

/// Inverse coordinate map.  SameSign: r1 = d/sqrt(beta)*cos(theta),
/// r2 = d*sin(theta).  OppositeSign: r1 = sqrt(d/gamma)*cosh(theta),
/// r2 = sqrt(d)*sinh(theta).  w passes through; recovering z1, z2
/// individually requires integration (see fullode).
RadiiW reduced_to_physical(const ReducedState& red, const ModelParams& params);

/// Forward coordinate map.  theta is recovered with atan2 (SameSign) or the
/// logarithmic inverse of sinh (OppositeSign); w = z1 - z2.  Throws
/// InvariantMismatch if the conserved-quantity relation between the radii and
/// params.d fails beyond 1e-10 relative.
ReducedState physical_to_reduced(const PhysicalState& phys, const ModelParams& params);

/// Like physical_to_reduced but skips the invariant consistency check.
/// Intended for monitoring quantities along numerically drifting trajectories.
ReducedState physical_to_reduced_unchecked(const PhysicalState& phys, const ModelParams& params);

/// Canonicalizes raw strengths (gamma1, gamma2) and a physical configuration:
/// detects the regime (SameSign iff gamma1*gamma2 > 0), renames the filaments
/// if needed so that ratio >= 1, flips the time direction if the rescaling
/// strength is negative, computes d from the configuration and maps to
/// reduced coordinates.
///
/// Throws OverlappingFilaments if (r1-r2)^2 + (z1-z2)^2 = 0, and
/// InfeasibleInvariant if the OppositeSign invariant gamma*R1^2 - R2^2 <= 0
/// (leapfrogging is impossible in that case).
CanonicalSetup canonicalize(double gamma1, double gamma2, const PhysicalState& phys0,
                            double alpha);

}  // namespace leapfrog
