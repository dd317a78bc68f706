#include "leapfrog/dyn_opp.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "leapfrog/core.hpp"
#include "leapfrog/rootfind.hpp"

namespace leapfrog {

namespace {

constexpr double kSingularRadius = 1e-12;
constexpr double kBoundaryBand = 1e-12;

double sq(double x) { return x * x; }

void check_state_opp(const ReducedState& s, const ModelParams& p) {
  check_params(p);
  if (p.regime != Regime::OppositeSign)
    throw Error(Errc::ValidationFailure, "OppositeSign operation called with SameSign params");
  if (!(p.ratio > 1.0))
    throw Error(Errc::GammaOutOfRange, "reduced opposite-sign dynamics require gamma > 1");
  if (!(s.theta > 0.0)) throw Error(Errc::DomainViolation, "theta outside (0, inf)");
  double thg = std::atanh(1.0 / std::sqrt(p.ratio));
  if (std::hypot(s.theta - thg, s.w) < kSingularRadius)
    throw Error(Errc::SingularPoint, "state within 1e-12 of the singular point (theta_gamma, 0)");
}

// (d/gamma)*(cosh - sqrt(gamma)*sinh)^2 + W^2, the squared filament separation.
double q_opp(double theta, double w, const ModelParams& p) {
  double rg = std::sqrt(p.ratio);
  return p.d / p.ratio * sq(std::cosh(theta) - rg * std::sinh(theta)) + w * w;
}

double g2_opp(double theta, double w, const ModelParams& p) {
  double sh = std::sinh(theta), ch = std::cosh(theta);
  double rg = std::sqrt(p.ratio);
  double q = q_opp(theta, w, p);
  double q32 = q * std::sqrt(q);
  return -(p.ratio * rg / ch + 1.0 / sh) / std::sqrt(p.d) +
         p.alpha * p.d * (sh - rg * ch) * (ch - rg * sh) / (rg * q32);
}

double hamiltonian_opp_raw(double theta, double w, const ModelParams& p) {
  double rg = std::sqrt(p.ratio);
  double th2 = std::tanh(theta / 2);
  double psi = (2.0 * p.ratio * rg * std::atan(th2) + std::log(th2)) / std::sqrt(p.d);
  return psi + p.alpha * rg / std::sqrt(q_opp(theta, w, p));
}

}  // namespace

Deriv2 field_opp(const ReducedState& state, const ModelParams& params) {
  check_state_opp(state, params);
  double q = q_opp(state.theta, state.w, params);
  double q32 = q * std::sqrt(q);
  Deriv2 out;
  out.dtheta = -params.alpha * std::sqrt(params.ratio) * state.w / q32;
  out.dw = g2_opp(state.theta, state.w, params);
  return out;
}

double hamiltonian_opp(const ReducedState& state, const ModelParams& params) {
  check_state_opp(state, params);
  return hamiltonian_opp_raw(state.theta, state.w, params);
}

double gamma_star(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0 / 3.0))
    throw Error(Errc::AlphaOutOfRange, "requires 0 < alpha < 1/3");
  // phi(1) = -alpha < 0 and phi(4) = 195 - 16*alpha > 0 for alpha < 1/3, and
  // phi is strictly increasing on (1, inf), so the bracket always works.
  auto phi = [alpha](double eta) {
    return ((eta - 1.0) * eta * eta - alpha * eta) * eta + eta - 1.0;
  };
  double eta_star = find_root(phi, 1.0 + 1e-9, 4.0).x;
  return eta_star * eta_star;
}

EquilibriumReportOpp equilibria_opp(const ModelParams& params) {
  check_params(params);
  if (params.regime != Regime::OppositeSign)
    throw Error(Errc::ValidationFailure, "equilibria_opp requires OppositeSign params");
  if (!(params.alpha > 0.0) || !(params.alpha < 1.0 / 3.0))
    throw Error(Errc::AlphaOutOfRange, "requires 0 < alpha < 1/3");
  if (!(params.ratio > 1.0))
    throw Error(Errc::GammaOutOfRange, "requires gamma > 1");

  double gamma = params.ratio;
  double alpha = params.alpha;
  EquilibriumReportOpp rep;
  rep.theta_gamma = std::atanh(1.0 / std::sqrt(gamma));
  rep.gamma_star = gamma_star(alpha);

  if (gamma <= rep.gamma_star) {
    // No equilibrium: G(theta,0) decreases from +inf at theta_gamma+ towards
    // the limit pi*gamma^(3/2)/(2*sqrt(d)), which is the leapfrog threshold.
    rep.g_threshold = std::numbers::pi * gamma * std::sqrt(gamma) / (2.0 * std::sqrt(params.d));
    return rep;
  }

  // h_a(1) = alpha*(1-gamma) < 0 and h_a(sqrt(gamma)) > 0 for gamma > gamma_star.
  auto cubic = [&](double y) {
    return gamma * y * y * y + (1 - 2 * gamma) * y * y + (gamma - 2) * y + 1 +
           alpha * y * (y - gamma);
  };
  double y_star = find_root(cubic, 1.0, std::sqrt(gamma)).x;
  rep.theta_star = std::atanh(y_star / std::sqrt(gamma));
  rep.g_threshold = hamiltonian_opp_raw(*rep.theta_star, 0.0, params);

  // G(.,0) rises monotonically from -inf to +inf on (0, theta_gamma), so the
  // level G(theta_star,0) is crossed exactly once.
  auto level = [&](double theta) {
    return hamiltonian_opp_raw(theta, 0.0, params) - rep.g_threshold;
  };
  rep.theta_bar = find_root(level, 1e-12, rep.theta_gamma * (1.0 - 1e-12)).x;
  return rep;
}

Verdict classify_opp_with(const EquilibriumReportOpp& eq, const ReducedState& state0,
                          const ModelParams& params) {
  Verdict v;
  v.threshold = eq.g_threshold;
  v.hamiltonian = hamiltonian_opp_raw(state0.theta, state0.w, params);
  bool boundary = std::abs(v.hamiltonian - eq.g_threshold) <= kBoundaryBand;
  if (eq.theta_star) {
    boundary = boundary || std::abs(state0.theta - *eq.theta_star) <= kBoundaryBand ||
               std::abs(state0.theta - *eq.theta_bar) <= kBoundaryBand;
  }
  if (boundary) {
    v.kind = VerdictKind::NonLeapfrog;
    v.detail = "separatrix/equilibrium-convergent";
    return v;
  }
  if (!eq.theta_star) {
    v.kind = v.hamiltonian > eq.g_threshold ? VerdictKind::Leapfrog : VerdictKind::NonLeapfrog;
    v.detail = v.kind == VerdictKind::Leapfrog
                   ? "closed orbit revolving around (theta_gamma, 0)"
                   : "G below threshold";
    return v;
  }
  bool in_window = state0.theta > *eq.theta_bar && state0.theta < *eq.theta_star;
  if (in_window && v.hamiltonian > eq.g_threshold) {
    v.kind = VerdictKind::Leapfrog;
    v.detail = "closed orbit revolving around (theta_gamma, 0)";
  } else {
    v.kind = VerdictKind::NonLeapfrog;
    v.detail = in_window ? "G below threshold" : "theta0 outside (theta_bar, theta*)";
  }
  return v;
}

Verdict classify_opp(const ReducedState& state0, const ModelParams& params) {
  if (params.regime != Regime::OppositeSign)
    throw Error(Errc::ValidationFailure, "classify_opp requires OppositeSign params");
  if (!(params.alpha > 0.0) || !std::isfinite(params.alpha))
    throw Error(Errc::ValidationFailure, "alpha must be positive and finite");
  if (!(params.d > 0.0)) {
    // gamma*R1^2 - R2^2 <= 0 forces R2 >= R1 for all time.
    Verdict v;
    v.kind = VerdictKind::LeapfrogImpossible;
    v.hamiltonian = std::numeric_limits<double>::quiet_NaN();
    v.threshold = std::numeric_limits<double>::quiet_NaN();
    v.detail = "invariant d = gamma*R1^2 - R2^2 <= 0: leapfrogging is impossible";
    return v;
  }
  check_params(params);
  if (params.alpha >= 1.0 / 3.0) {
    Verdict v;
    v.kind = VerdictKind::OutOfTheoremScope;
    v.hamiltonian = params.ratio > 1.0 ? hamiltonian_opp_raw(state0.theta, state0.w, params)
                                       : std::numeric_limits<double>::quiet_NaN();
    v.threshold = std::numeric_limits<double>::quiet_NaN();
    v.detail = "alpha outside (0, 1/3): the equilibrium analysis does not apply";
    return v;
  }
  if (params.ratio == 1.0) {
    Verdict v;
    v.kind = VerdictKind::LeapfrogImpossible;
    v.hamiltonian = std::numeric_limits<double>::quiet_NaN();
    v.threshold = std::numeric_limits<double>::quiet_NaN();
    v.detail = "gamma = 1: R1 = R2 is impossible on the invariant hyperbola; "
               "approach ends in collision, not leapfrogging";
    return v;
  }
  check_state_opp(state0, params);
  return classify_opp_with(equilibria_opp(params), state0, params);
}

}  // namespace leapfrog
