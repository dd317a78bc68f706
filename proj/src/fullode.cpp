#include "leapfrog/fullode.hpp"

#include <cmath>

#include "leapfrog/core.hpp"
#include "leapfrog/dyn_opp.hpp"
#include "leapfrog/dyn_same.hpp"

namespace leapfrog {

namespace {

constexpr double kContactFloorSq = 1e-24;

double sq(double x) { return x * x; }

// beta for SameSign, -gamma for OppositeSign.
double signed_ratio(const ModelParams& p) {
  return p.regime == Regime::SameSign ? p.ratio : -p.ratio;
}

}  // namespace

PhysicalState field_physical(const PhysicalState& state, const ModelParams& params) {
  check_params(params);
  if (!(state.r1 > 0.0) || !(state.r2 > 0.0))
    throw Error(Errc::ValidationFailure, "radii must be positive");
  double w = state.z1 - state.z2;
  double q = sq(state.r1 - state.r2) + sq(w);
  if (q < kContactFloorSq)
    throw Error(Errc::SingularPoint, "filaments within 1e-12 of overlapping");
  double q32 = q * std::sqrt(q);
  double bs = signed_ratio(params);
  double a = params.alpha;
  PhysicalState dot;
  dot.r1 = -a * state.r2 * w / q32;
  dot.z1 = bs / state.r1 + a * state.r2 * (state.r1 - state.r2) / q32;
  dot.r2 = a * bs * state.r1 * w / q32;
  dot.z2 = 1.0 / state.r2 - a * bs * state.r1 * (state.r1 - state.r2) / q32;
  return dot;
}

AugmentedState field_augmented(const AugmentedState& state, const ModelParams& params) {
  ReducedState red{state.theta, state.w};
  Deriv2 rdot = params.regime == Regime::SameSign ? field_same(red, params)
                                                  : field_opp(red, params);
  RadiiW rw = reduced_to_physical(red, params);
  double q = sq(rw.r1 - rw.r2) + sq(state.w);
  double q32 = q * std::sqrt(q);
  double bs = signed_ratio(params);
  double a = params.alpha;
  AugmentedState dot;
  dot.theta = rdot.dtheta;
  dot.w = rdot.dw;
  dot.z1 = bs / rw.r1 + a * rw.r2 * (rw.r1 - rw.r2) / q32;
  dot.z2 = 1.0 / rw.r2 - a * bs * rw.r1 * (rw.r1 - rw.r2) / q32;
  return dot;
}

ParallelSetup make_parallel_setup(double gamma1, double gamma2, double alpha,
                                  const Eigen::Vector2d& p1, const Eigen::Vector2d& p2) {
  if (gamma1 == 0.0 || gamma2 == 0.0)
    throw Error(Errc::ValidationFailure, "vorticity strengths must be nonzero");
  if (!(alpha > 0.0)) throw Error(Errc::ValidationFailure, "alpha must be positive");
  ParallelSetup s;
  s.gamma1 = gamma1;
  s.gamma2 = gamma2;
  s.alpha = alpha;
  s.p1 = p1;
  s.p2 = p2;
  s.w0 = p1 - p2;
  s.dist_d = s.w0.norm();
  if (s.dist_d < 1e-12)
    throw Error(Errc::CoincidentVortices, "the two vortices coincide");
  double gsum = gamma1 + gamma2;
  if (gsum != 0.0) {
    s.center_c = (gamma1 * p1 + gamma2 * p2) / gsum;
    s.omega = -alpha * gsum / (s.dist_d * s.dist_d * s.dist_d);
  }
  return s;
}

PairVelocity field_pointvortex(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                               const ParallelSetup& setup) {
  Eigen::Vector2d delta = p1 - p2;
  double dist = delta.norm();
  if (dist < 1e-12)
    throw Error(Errc::CoincidentVortices, "point vortices closer than 1e-12");
  double inv3 = 1.0 / (dist * dist * dist);
  // velocity of vortex j is -i * alpha * Gamma_other * (z_j - z_other) / |z1-z2|^3
  Eigen::Vector2d rot(delta.y(), -delta.x());  // -i * delta
  PairVelocity v;
  v.v1 = setup.alpha * setup.gamma2 * inv3 * rot;
  v.v2 = -setup.alpha * setup.gamma1 * inv3 * rot;
  return v;
}

PairPosition parallel_exact(double t, const ParallelSetup& setup) {
  PairPosition out;
  if (setup.gamma1 + setup.gamma2 != 0.0) {
    double c = std::cos(setup.omega * t), s = std::sin(setup.omega * t);
    Eigen::Matrix2d rot;
    rot << c, -s, s, c;
    out.p1 = setup.center_c + rot * (setup.p1 - setup.center_c);
    out.p2 = setup.center_c + rot * (setup.p2 - setup.center_c);
  } else {
    double inv3 = 1.0 / (setup.dist_d * setup.dist_d * setup.dist_d);
    Eigen::Vector2d vel =
        setup.alpha * setup.gamma2 * inv3 * Eigen::Vector2d(setup.w0.y(), -setup.w0.x());
    out.p1 = setup.p1 + t * vel;
    out.p2 = setup.p2 + t * vel;
  }
  return out;
}

}  // namespace leapfrog
