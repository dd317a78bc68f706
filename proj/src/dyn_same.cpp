#include "leapfrog/dyn_same.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "leapfrog/core.hpp"
#include "leapfrog/rootfind.hpp"

namespace leapfrog {

namespace {

constexpr double kSingularRadius = 1e-12;
constexpr double kBoundaryBand = 1e-12;
constexpr double kBracketShrink = 1e-9;

double sq(double x) { return x * x; }

void check_state_same(const ReducedState& s, const ModelParams& p) {
  check_params(p);
  if (p.regime != Regime::SameSign)
    throw Error(Errc::ValidationFailure, "SameSign operation called with OppositeSign params");
  if (!(s.theta > 0.0) || !(s.theta < std::numbers::pi / 2))
    throw Error(Errc::DomainViolation, "theta outside (0, pi/2)");
  double thb = std::atan(1.0 / std::sqrt(p.ratio));
  if (std::hypot(s.theta - thb, s.w) < kSingularRadius)
    throw Error(Errc::SingularPoint, "state within 1e-12 of the singular point (theta_beta, 0)");
}

// (d^2/beta)*(sqrt(beta)*sin - cos)^2 + W^2, the squared filament separation.
double q_same(double theta, double w, const ModelParams& p) {
  double rb = std::sqrt(p.ratio);
  return sq(p.d) / p.ratio * sq(rb * std::sin(theta) - std::cos(theta)) + w * w;
}

double f2_same(double theta, double w, const ModelParams& p) {
  double s = std::sin(theta), c = std::cos(theta);
  double rb = std::sqrt(p.ratio);
  double q = q_same(theta, w, p);
  double q32 = q * std::sqrt(q);
  return (p.ratio * rb * s - c) / (p.d * s * c) -
         p.alpha * sq(p.d) * (s + rb * c) * (rb * s - c) / (rb * q32);
}

}  // namespace

Deriv2 field_same(const ReducedState& state, const ModelParams& params) {
  check_state_same(state, params);
  double q = q_same(state.theta, state.w, params);
  double q32 = q * std::sqrt(q);
  Deriv2 out;
  out.dtheta = params.alpha * std::sqrt(params.ratio) * state.w / q32;
  out.dw = f2_same(state.theta, state.w, params);
  return out;
}

double hamiltonian_same(const ReducedState& state, const ModelParams& params) {
  check_state_same(state, params);
  // (1-sin)/(1+sin) = tan^2(pi/4 - theta/2) and (1-cos)/(1+cos) = tan^2(theta/2),
  // which stay accurate at both ends of (0, pi/2).
  double b32 = params.ratio * std::sqrt(params.ratio);
  double logpart = b32 * std::log(std::tan(std::numbers::pi / 4 - state.theta / 2)) +
                   std::log(std::tan(state.theta / 2));
  double q = q_same(state.theta, state.w, params);
  return logpart / params.d - params.alpha * std::sqrt(params.ratio) / std::sqrt(q);
}

EquilibriumReportSame equilibria_same(const ModelParams& params) {
  check_params(params);
  if (params.regime != Regime::SameSign)
    throw Error(Errc::ValidationFailure, "equilibria_same requires SameSign params");
  if (!(params.alpha > 0.0) || !(params.alpha < 1.0 / 3.0))
    throw Error(Errc::AlphaOutOfRange, "requires 0 < alpha < 1/3");

  double beta = params.ratio;
  double alpha = params.alpha;
  EquilibriumReportSame rep;
  rep.theta_beta = std::atan(1.0 / std::sqrt(beta));

  // h_a(0) = -1 < 0 and h_a(1) = alpha*(1+beta) > 0: the bracket is always valid.
  auto cubic = [&](double y) {
    return beta * y * y * y - (2 * beta + 1) * y * y + (beta + 2) * y - 1 +
           alpha * (y * y + beta * y);
  };
  double y_star = find_root(cubic, 0.0, 1.0).x;
  rep.theta_star = std::atan(y_star / std::sqrt(beta));

  // f diverges to -inf at theta_beta+ and +inf at pi/2-, so the shrunken
  // bracket always straddles the unique zero.
  auto f = [&](double theta) { return f2_same(theta, 0.0, params); };
  rep.theta_star2 =
      find_root(f, rep.theta_beta + kBracketShrink, std::numbers::pi / 2 - kBracketShrink).x;

  rep.h_star = std::min(hamiltonian_same({rep.theta_star, 0.0}, params),
                        hamiltonian_same({rep.theta_star2, 0.0}, params));

  // Sign property of f: negative on (0,th*) and (th_b,th**), positive on
  // (th*,th_b) and (th**,pi/2).  Checked at the four midpoints.
  if (!(f(0.5 * rep.theta_star) < 0.0) ||
      !(f(0.5 * (rep.theta_star + rep.theta_beta)) > 0.0) ||
      !(f(0.5 * (rep.theta_beta + rep.theta_star2)) < 0.0) ||
      !(f(0.5 * (rep.theta_star2 + std::numbers::pi / 2)) > 0.0))
    throw Error(Errc::ValidationFailure, "equilibria_same: sign property of f violated");
  return rep;
}

Verdict classify_same_with(const EquilibriumReportSame& eq, const ReducedState& state0,
                           const ModelParams& params) {
  Verdict v;
  v.threshold = eq.h_star;
  v.hamiltonian = hamiltonian_same(state0, params);
  if (std::abs(v.hamiltonian - eq.h_star) <= kBoundaryBand ||
      std::abs(state0.theta - eq.theta_star) <= kBoundaryBand ||
      std::abs(state0.theta - eq.theta_star2) <= kBoundaryBand) {
    v.kind = VerdictKind::NonLeapfrog;
    v.detail = "separatrix/equilibrium-convergent";
    return v;
  }
  bool in_window = state0.theta > eq.theta_star && state0.theta < eq.theta_star2;
  if (in_window && v.hamiltonian < eq.h_star) {
    v.kind = VerdictKind::Leapfrog;
    v.detail = "closed orbit revolving around (theta_beta, 0)";
  } else {
    v.kind = VerdictKind::NonLeapfrog;
    v.detail = in_window ? "H above threshold" : "theta0 outside (theta*, theta**)";
  }
  return v;
}

Verdict classify_same(const ReducedState& state0, const ModelParams& params) {
  check_state_same(state0, params);
  if (params.alpha >= 1.0 / 3.0) {
    Verdict v;
    v.kind = VerdictKind::OutOfTheoremScope;
    v.hamiltonian = hamiltonian_same(state0, params);
    v.threshold = std::numeric_limits<double>::quiet_NaN();
    v.detail = "alpha outside (0, 1/3): the equilibrium analysis does not apply";
    return v;
  }
  return classify_same_with(equilibria_same(params), state0, params);
}

}  // namespace leapfrog
