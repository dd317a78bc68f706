#pragma once

#include <stdexcept>
#include <string>

namespace leapfrog {

enum class Regime { SameSign, OppositeSign };

/// Parameters of the reduced coaxial-circle systems.
///
/// The invariant scale `d` follows two different conventions, matching how the
/// two conserved quantities are written:
///
///   SameSign:      d^2 = beta*R1^2 + R2^2   (the positive root d is stored)
///   OppositeSign:  d   = gamma*R1^2 - R2^2  (d itself; d <= 0 cannot leapfrog)
///
/// `ratio` is beta = Gamma1/Gamma2 >= 1 in the SameSign regime and
/// gamma = -Gamma1/Gamma2 >= 1 in the OppositeSign regime.
struct ModelParams {
  Regime regime = Regime::SameSign;
  double alpha = 0.1;  ///< interaction coefficient, > 0
  double ratio = 1.0;  ///< beta or gamma, >= 1
  double d = 1.0;      ///< invariant scale, see conventions above
};

/// Point of the reduced two-dimensional phase space.
/// theta is an angle in (0, pi/2) (SameSign) or a hyperbolic argument in
/// (0, inf) (OppositeSign); w is the axial separation W = z1 - z2.
struct ReducedState {
  double theta = 0.0;
  double w = 0.0;
};

/// Radii and axial positions of the two coaxial circular filaments.
struct PhysicalState {
  double r1 = 1.0;
  double z1 = 0.0;
  double r2 = 1.0;
  double z2 = 0.0;
};

/// Result of canonicalizing raw strengths and a physical configuration.
///
/// `swapped` records that the filaments were renamed (1 <-> 2) to reach
/// ratio >= 1.  `time_reversed` records a sign flip of both strengths (a time
/// reversal; by the W-parity of the reduced fields it is absorbed into
/// reduced0.w -> -reduced0.w).  `time_scale` is |Gamma2| after renaming: one
/// unit of canonical time equals 1/time_scale physical time units, running
/// backwards when time_reversed.
struct CanonicalSetup {
  ModelParams params;
  ReducedState reduced0;
  bool swapped = false;
  bool time_reversed = false;
  double time_scale = 1.0;
};

enum class Errc {
  ValidationFailure,
  DomainViolation,
  SingularPoint,
  InvariantMismatch,
  OverlappingFilaments,
  InfeasibleInvariant,
  AlphaOutOfRange,
  GammaOutOfRange,
  CoincidentVortices,
  FilamentContact,
  NotClosed,
  Inconclusive,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

enum class VerdictKind { Leapfrog, NonLeapfrog, OutOfTheoremScope, LeapfrogImpossible };

const char* verdict_kind_name(VerdictKind kind);

/// Leapfrogging decision for one initial condition.
/// Leapfrog always implies a strict Hamiltonian inequality against
/// `threshold` (H < threshold in SameSign, G > threshold in OppositeSign).
struct Verdict {
  VerdictKind kind = VerdictKind::NonLeapfrog;
  double hamiltonian = 0.0;
  double threshold = 0.0;
  std::string detail;
};

}  // namespace leapfrog
