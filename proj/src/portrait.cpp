#include "leapfrog/portrait.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "leapfrog/core.hpp"
#include "leapfrog/dyn_opp.hpp"
#include "leapfrog/dyn_same.hpp"
#include "leapfrog/integrate.hpp"

namespace leapfrog {

const char* cell_kind_name(CellKind kind) {
  switch (kind) {
    case CellKind::Masked: return "masked";
    case CellKind::NonLeapfrog: return "non_leapfrog";
    case CellKind::Leapfrog: return "leapfrog";
  }
  return "unknown";
}

PortraitGrid hamiltonian_grid(const ModelParams& params, double theta_min, double theta_max,
                              double w_min, double w_max, int n_theta, int n_w) {
  check_params(params);
  if (n_theta < 2 || n_w < 2)
    throw Error(Errc::ValidationFailure, "grid resolution must be >= 2 per axis");
  if (!(theta_min < theta_max) || !(w_min < w_max))
    throw Error(Errc::ValidationFailure, "empty grid range");
  const bool same = params.regime == Regime::SameSign;
  if (!(theta_min > 0.0) || (same && !(theta_max < std::numbers::pi / 2)))
    throw Error(Errc::DomainViolation, "grid range outside the phase space");

  PortraitGrid grid;
  grid.theta_axis = Eigen::VectorXd::LinSpaced(n_theta, theta_min, theta_max);
  grid.w_axis = Eigen::VectorXd::LinSpaced(n_w, w_min, w_max);
  grid.values.resize(n_w, n_theta);
  grid.verdicts.resize(n_w, n_theta);

  const double sing = singular_angle(params);

  EquilibriumReportSame eq_same;
  EquilibriumReportOpp eq_opp;
  if (same) {
    eq_same = equilibria_same(params);
    grid.threshold = eq_same.h_star;
  } else {
    eq_opp = equilibria_opp(params);
    grid.threshold = eq_opp.g_threshold;
  }

  for (int i = 0; i < n_w; ++i) {
    for (int j = 0; j < n_theta; ++j) {
      ReducedState s{grid.theta_axis[j], grid.w_axis[i]};
      if (std::hypot(s.theta - sing, s.w) <= grid.mask_radius) {
        grid.values(i, j) = std::numeric_limits<double>::quiet_NaN();
        grid.verdicts(i, j) = static_cast<std::int8_t>(CellKind::Masked);
        continue;
      }
      Verdict v = same ? classify_same_with(eq_same, s, params)
                       : classify_opp_with(eq_opp, s, params);
      grid.values(i, j) = v.hamiltonian;
      grid.verdicts(i, j) = static_cast<std::int8_t>(
          v.kind == VerdictKind::Leapfrog ? CellKind::Leapfrog : CellKind::NonLeapfrog);
    }
  }
  return grid;
}

double orbit_period(const ReducedState& state0, const ModelParams& params, double max_time) {
  Verdict v = params.regime == Regime::SameSign ? classify_same(state0, params)
                                                : classify_opp(state0, params);
  if (v.kind != VerdictKind::Leapfrog)
    throw Error(Errc::NotClosed, "orbit_period requires a Leapfrog initial condition");
  OrbitReport rep = detect_closed_orbit(state0, params, max_time);
  if (!rep.closed || !rep.period)
    throw Error(Errc::NotClosed, "closed-orbit detection failed: " + rep.detail);
  return *rep.period;
}

}  // namespace leapfrog
