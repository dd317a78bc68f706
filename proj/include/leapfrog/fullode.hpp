#pragma once

#include <Eigen/Dense>

#include "leapfrog/types.hpp"

namespace leapfrog {

/// Right-hand side of the 4D coaxial-circle system in canonical time
/// (d/dtau of R1, z1, R2, z2).  Covers both regimes: the OppositeSign system
/// is the SameSign one with beta replaced by -gamma.
/// Throws SingularPoint when (R1-R2)^2 + (z1-z2)^2 < 1e-24.
PhysicalState field_physical(const PhysicalState& state, const ModelParams& params);

/// Reduced state augmented with the individual axial positions, used to
/// reconstruct z1(t), z2(t) alongside (theta, W).
struct AugmentedState {
  double theta = 0.0;
  double w = 0.0;
  double z1 = 0.0;
  double z2 = 0.0;
};

/// Derivative of the augmented state: (theta', W') from the reduced field and
/// (z1', z2') from the reconstruction integrands evaluated at the current
/// reduced state.  W' = z1' - z2' holds identically.
AugmentedState field_augmented(const AugmentedState& state, const ModelParams& params);

/// Two straight parallel filaments reduce to two point vortices in the
/// cross-sectional plane.  Derived quantities are filled in by
/// make_parallel_setup; center_c is meaningful only when gamma1+gamma2 != 0,
/// omega is the rotation rate -alpha*(gamma1+gamma2)/D^3, and w0 = p1 - p2.
struct ParallelSetup {
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double alpha = 0.1;
  Eigen::Vector2d p1 = Eigen::Vector2d::Zero();
  Eigen::Vector2d p2 = Eigen::Vector2d::Zero();
  Eigen::Vector2d center_c = Eigen::Vector2d::Zero();
  double dist_d = 0.0;
  double omega = 0.0;
  Eigen::Vector2d w0 = Eigen::Vector2d::Zero();
};

ParallelSetup make_parallel_setup(double gamma1, double gamma2, double alpha,
                                  const Eigen::Vector2d& p1, const Eigen::Vector2d& p2);

struct PairVelocity {
  Eigen::Vector2d v1;
  Eigen::Vector2d v2;
};

/// Point-vortex field at arbitrary positions, with the symmetric
/// distance-cubed denominator.  Throws CoincidentVortices below 1e-12
/// separation.
PairVelocity field_pointvortex(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                               const ParallelSetup& setup);

struct PairPosition {
  Eigen::Vector2d p1;
  Eigen::Vector2d p2;
};

/// Closed-form solution of the parallel-line dynamics: rigid rotation about
/// the center of vorticity when gamma1+gamma2 != 0, uniform translation at
/// velocity -i*alpha*gamma2*w0/D^3 when gamma1+gamma2 = 0.
PairPosition parallel_exact(double t, const ParallelSetup& setup);

}  // namespace leapfrog
