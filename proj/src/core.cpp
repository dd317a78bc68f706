#include "leapfrog/core.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace leapfrog {

namespace {
constexpr double kInvariantRelTol = 1e-10;
constexpr double kSingularRadius = 1e-12;
}  // namespace

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::ValidationFailure: return "ValidationFailure";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::SingularPoint: return "SingularPoint";
    case Errc::InvariantMismatch: return "InvariantMismatch";
    case Errc::OverlappingFilaments: return "OverlappingFilaments";
    case Errc::InfeasibleInvariant: return "InfeasibleInvariant";
    case Errc::AlphaOutOfRange: return "AlphaOutOfRange";
    case Errc::GammaOutOfRange: return "GammaOutOfRange";
    case Errc::CoincidentVortices: return "CoincidentVortices";
    case Errc::FilamentContact: return "FilamentContact";
    case Errc::NotClosed: return "NotClosed";
    case Errc::Inconclusive: return "Inconclusive";
  }
  return "UnknownError";
}

const char* verdict_kind_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Leapfrog: return "leapfrog";
    case VerdictKind::NonLeapfrog: return "non_leapfrog";
    case VerdictKind::OutOfTheoremScope: return "out_of_theorem_scope";
    case VerdictKind::LeapfrogImpossible: return "leapfrog_impossible";
  }
  return "unknown";
}

void check_params(const ModelParams& params) {
  if (!(params.alpha > 0.0) || !std::isfinite(params.alpha))
    throw Error(Errc::ValidationFailure, "alpha must be positive and finite");
  if (!(params.ratio >= 1.0) || !std::isfinite(params.ratio))
    throw Error(Errc::ValidationFailure, "ratio (beta or gamma) must be >= 1");
  if (!(params.d > 0.0) || !std::isfinite(params.d))
    throw Error(Errc::ValidationFailure, "d must be positive and finite");
}

double singular_angle(const ModelParams& params) {
  double root = std::sqrt(params.ratio);
  if (params.regime == Regime::SameSign) return std::atan(1.0 / root);
  if (params.ratio == 1.0) return std::numeric_limits<double>::infinity();
  return std::atanh(1.0 / root);
}

bool in_phase_space(const ReducedState& state, const ModelParams& params) {
  if (!(state.theta > 0.0)) return false;
  if (params.regime == Regime::SameSign && !(state.theta < std::numbers::pi / 2)) return false;
  double sing = singular_angle(params);
  return std::hypot(state.theta - sing, state.w) > kSingularRadius;
}

RadiiW reduced_to_physical(const ReducedState& red, const ModelParams& params) {
  check_params(params);
  if (!(red.theta > 0.0) ||
      (params.regime == Regime::SameSign && !(red.theta < std::numbers::pi / 2)))
    throw Error(Errc::DomainViolation, "theta outside the phase-space interval");
  RadiiW out;
  out.w = red.w;
  if (params.regime == Regime::SameSign) {
    double rb = std::sqrt(params.ratio);
    out.r1 = params.d / rb * std::cos(red.theta);
    out.r2 = params.d * std::sin(red.theta);
  } else {
    out.r1 = std::sqrt(params.d / params.ratio) * std::cosh(red.theta);
    out.r2 = std::sqrt(params.d) * std::sinh(red.theta);
  }
  return out;
}

ReducedState physical_to_reduced_unchecked(const PhysicalState& phys, const ModelParams& params) {
  ReducedState red;
  red.w = phys.z1 - phys.z2;
  if (params.regime == Regime::SameSign) {
    // cos(theta) = sqrt(beta)*r1/d, sin(theta) = r2/d
    red.theta = std::atan2(phys.r2, std::sqrt(params.ratio) * phys.r1);
  } else {
    red.theta = std::asinh(phys.r2 / std::sqrt(params.d));
  }
  return red;
}

ReducedState physical_to_reduced(const PhysicalState& phys, const ModelParams& params) {
  check_params(params);
  if (!(phys.r1 > 0.0) || !(phys.r2 > 0.0))
    throw Error(Errc::ValidationFailure, "radii must be positive");
  double lhs, rhs;
  if (params.regime == Regime::SameSign) {
    lhs = params.ratio * phys.r1 * phys.r1 + phys.r2 * phys.r2;
    rhs = params.d * params.d;
  } else {
    lhs = params.ratio * phys.r1 * phys.r1 - phys.r2 * phys.r2;
    rhs = params.d;
  }
  if (std::abs(lhs - rhs) > kInvariantRelTol * std::abs(rhs))
    throw Error(Errc::InvariantMismatch,
                "state inconsistent with the conserved quantity defining d");
  return physical_to_reduced_unchecked(phys, params);
}

CanonicalSetup canonicalize(double gamma1, double gamma2, const PhysicalState& phys0,
                            double alpha) {
  if (gamma1 == 0.0 || gamma2 == 0.0)
    throw Error(Errc::ValidationFailure, "vorticity strengths must be nonzero");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(Errc::ValidationFailure, "alpha must be positive and finite");
  if (!(phys0.r1 > 0.0) || !(phys0.r2 > 0.0))
    throw Error(Errc::ValidationFailure, "radii must be positive");
  double sep = (phys0.r1 - phys0.r2) * (phys0.r1 - phys0.r2) +
               (phys0.z1 - phys0.z2) * (phys0.z1 - phys0.z2);
  if (!(sep > 0.0))
    throw Error(Errc::OverlappingFilaments, "the two circles overlap");

  CanonicalSetup setup;
  double g1 = gamma1, g2 = gamma2;
  PhysicalState phys = phys0;
  setup.swapped = std::abs(g1) < std::abs(g2);
  if (setup.swapped) {
    std::swap(g1, g2);
    std::swap(phys.r1, phys.r2);
    std::swap(phys.z1, phys.z2);
  }
  // Flipping the sign of both strengths is a time reversal of the model.
  setup.time_reversed = g2 < 0.0;
  if (setup.time_reversed) {
    g1 = -g1;
    g2 = -g2;
  }
  setup.time_scale = g2;

  ModelParams& p = setup.params;
  p.regime = g1 > 0.0 ? Regime::SameSign : Regime::OppositeSign;
  p.alpha = alpha;
  p.ratio = std::abs(g1) / g2;
  if (p.regime == Regime::SameSign) {
    p.d = std::sqrt(p.ratio * phys.r1 * phys.r1 + phys.r2 * phys.r2);
  } else {
    double inv = p.ratio * phys.r1 * phys.r1 - phys.r2 * phys.r2;
    if (!(inv > 0.0))
      throw Error(Errc::InfeasibleInvariant,
                  "gamma*R1^2 - R2^2 <= 0: R2 > R1 throughout the motion, "
                  "leapfrogging is impossible");
    p.d = inv;
  }
  setup.reduced0 = physical_to_reduced(phys, p);
  if (setup.time_reversed) setup.reduced0.w = -setup.reduced0.w;
  return setup;
}

}  // namespace leapfrog
