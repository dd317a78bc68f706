#include "leapfrog/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "leapfrog/core.hpp"
#include "leapfrog/dyn_opp.hpp"

namespace leapfrog {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights (Hairer/Norsett/Wanner DOPRI5).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kMinStepFactor = 1e-14;

}  // namespace

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::SingularityApproach: return "singularity_approach";
    case Termination::StepSizeUnderflow: return "step_size_underflow";
  }
  return "unknown";
}

Dopri5::Dopri5(OdeField field, StateVec y0, double t0, double t_end, IntegrateOptions opts)
    : field_(std::move(field)), opts_(std::move(opts)), t_end_(t_end), t_(t0), t_prev_(t0),
      y_(std::move(y0)), y_prev_(y_), k1_(y_.size()), rcont_(y_.size(), 5) {
  if (!(opts_.rtol > 0.0) || !(opts_.atol > 0.0))
    throw Error(Errc::ValidationFailure, "rtol and atol must be positive");
  if (!(t_end_ > t0)) throw Error(Errc::ValidationFailure, "t_end must exceed t0");
  field_(t_, y_, k1_);
  // crude but robust initial step from the derivative scale
  double ynorm = y_.norm(), fnorm = k1_.norm();
  double scale = (fnorm > 1e-12) ? (0.01 * (ynorm + 1.0) / fnorm) : 1e-3;
  h_ = std::min({scale, t_end_ - t0, opts_.max_step > 0 ? opts_.max_step : scale});
  h_ = std::max(h_, 1e-12);
}

bool Dopri5::step() {
  if (finished_) return false;
  const auto n = y_.size();
  StateVec k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);

  while (true) {
    if (++steps_taken_ > opts_.max_steps)
      throw Error(Errc::Inconclusive, "integrator exceeded max_steps");
    bool last = t_ + h_ >= t_end_;
    double h = last ? t_end_ - t_ : h_;
    if (h < kMinStepFactor * std::max(1.0, std::abs(t_))) {
      if (last) {  // only the final clamp got tiny; accept as done
        t_prev_ = t_;
        y_prev_ = y_;
        t_ = t_end_;
        finished_ = true;
        return false;
      }
      finished_ = true;
      status_ = Termination::StepSizeUnderflow;
      return false;
    }

    bool stage_singular = false;
    try {
      ytmp = y_ + h * (a21 * k1_);
      field_(t_ + c2 * h, ytmp, k2);
      ytmp = y_ + h * (a31 * k1_ + a32 * k2);
      field_(t_ + c3 * h, ytmp, k3);
      ytmp = y_ + h * (a41 * k1_ + a42 * k2 + a43 * k3);
      field_(t_ + c4 * h, ytmp, k4);
      ytmp = y_ + h * (a51 * k1_ + a52 * k2 + a53 * k3 + a54 * k4);
      field_(t_ + c5 * h, ytmp, k5);
      ytmp = y_ + h * (a61 * k1_ + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      field_(t_ + h, ytmp, k6);
      ynew = y_ + h * (b1 * k1_ + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      field_(t_ + h, ynew, k7);
    } catch (const Error& e) {
      if (e.code() != Errc::SingularPoint && e.code() != Errc::DomainViolation) throw;
      stage_singular = true;
    }
    if (stage_singular) {
      // a trial stage left the domain; retry with a smaller step, give up when tiny
      h_ = 0.5 * h;
      if (h_ < kMinStepFactor * std::max(1.0, std::abs(t_))) {
        finished_ = true;
        status_ = Termination::SingularityApproach;
        return false;
      }
      continue;
    }

    // error estimate against the embedded 4th-order solution
    double err = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double ei = h * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                       e7 * k7[i]);
      double sc = opts_.atol + opts_.rtol * std::max(std::abs(y_[i]), std::abs(ynew[i]));
      err += (ei / sc) * (ei / sc);
    }
    err = std::sqrt(err / static_cast<double>(n));

    // stabilized (PI) step-size controller
    constexpr double safe = 0.9, fac_min = 0.2, fac_max = 10.0, beta = 0.04;
    constexpr double expo1 = 0.2 - beta * 0.75;
    double fac11 = std::pow(std::max(err, 1e-16), expo1);
    if (err <= 1.0) {
      // accept
      t_prev_ = t_;
      y_prev_ = y_;
      // dense-output coefficients for this step
      StateVec ydiff = ynew - y_;
      StateVec bspl = h * k1_ - ydiff;
      rcont_.col(0) = y_;
      rcont_.col(1) = ydiff;
      rcont_.col(2) = bspl;
      rcont_.col(3) = ydiff - h * k7 - bspl;
      rcont_.col(4) = h * (d1 * k1_ + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      t_ = last ? t_end_ : t_ + h;
      y_ = ynew;
      k1_ = k7;  // FSAL

      double fac = fac11 / std::pow(facold_, beta);
      fac = std::clamp(fac / safe, 1.0 / fac_max, 1.0 / fac_min);
      h_ = h / fac;
      facold_ = std::max(err, 1e-4);
      if (opts_.max_step > 0) h_ = std::min(h_, opts_.max_step);

      if (opts_.guard_distance && opts_.guard_distance(y_) < opts_.guard_threshold) {
        finished_ = true;
        status_ = Termination::SingularityApproach;
        return true;  // the step itself is valid
      }
      if (t_ >= t_end_) finished_ = true;
      return true;
    }
    h_ = h / std::min(1.0 / fac_min, fac11 / safe);
  }
}

StateVec Dopri5::dense(double t) const {
  double span = t_curr() - t_prev();
  double s = span > 0 ? (t - t_prev()) / span : 0.0;
  double s1 = 1.0 - s;
  return rcont_.col(0) +
         s * (rcont_.col(1) + s1 * (rcont_.col(2) + s * (rcont_.col(3) + s1 * rcont_.col(4))));
}

Trajectory integrate(const OdeField& field, const StateVec& y0, double t_end,
                     const IntegrateOptions& opts, const std::vector<Monitor>& monitors) {
  Trajectory traj;
  traj.monitor_drift.assign(monitors.size(), 0.0);
  std::vector<double> m0(monitors.size());
  for (size_t i = 0; i < monitors.size(); ++i) m0[i] = monitors[i](y0);

  traj.times.push_back(0.0);
  traj.states.push_back(y0);

  Dopri5 stepper(field, y0, 0.0, t_end, opts);
  while (stepper.step()) {
    traj.times.push_back(stepper.t_curr());
    traj.states.push_back(stepper.y_curr());
    for (size_t i = 0; i < monitors.size(); ++i) {
      double drift = std::abs(monitors[i](stepper.y_curr()) - m0[i]) / std::max(1.0, std::abs(m0[i]));
      traj.monitor_drift[i] = std::max(traj.monitor_drift[i], drift);
    }
  }
  traj.termination = stepper.status();
  for (double d : traj.monitor_drift)
    traj.hamiltonian_drift = std::max(traj.hamiltonian_drift, d);
  return traj;
}

namespace {

// Refines a W=0 crossing inside [ta,tb] (sign change of component 1) until
// |W| < 1e-10 at the returned time.
double refine_crossing(const Dopri5& stepper, double ta, double tb) {
  double wa = stepper.dense(ta)[1];
  for (int i = 0; i < 200; ++i) {
    double tm = 0.5 * (ta + tb);
    double wm = stepper.dense(tm)[1];
    if (std::abs(wm) < 1e-10 && tb - ta < 1e-9 * std::max(1.0, std::abs(tm))) return tm;
    if (std::signbit(wm) == std::signbit(wa)) {
      ta = tm;
      wa = wm;
    } else {
      tb = tm;
    }
  }
  return 0.5 * (ta + tb);
}

// Distance from dense(t) to a fixed point, minimized by ternary search.
std::pair<double, double> refine_return(const Dopri5& stepper, double ta, double tb,
                                        const Eigen::Vector2d& target) {
  auto dist = [&](double t) { return (stepper.dense(t) - target).norm(); };
  for (int i = 0; i < 120; ++i) {
    double m1 = ta + (tb - ta) / 3, m2 = tb - (tb - ta) / 3;
    if (dist(m1) < dist(m2)) tb = m2; else ta = m1;
  }
  double tm = 0.5 * (ta + tb);
  return {tm, dist(tm)};
}

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
  Eigen::Vector2d ab = b - a;
  double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  double s = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + s * ab)).norm();
}

}  // namespace

OrbitReport detect_closed_orbit(const ReducedField& field, const ReducedState& state0,
                                const ModelParams& params, double max_time,
                                const OrbitOptions& opts) {
  check_params(params);
  OrbitReport report;

  Deriv2 f0 = field(state0, params);
  double f0_norm = std::hypot(f0.dtheta, f0.dw);
  if (f0_norm < 1e-13 * (1.0 + std::hypot(state0.theta, state0.w))) {
    report.detail = "fixed point";
    return report;
  }

  const bool same = params.regime == Regime::SameSign;
  const double theta_lo = 0.0;
  const double theta_hi = same ? std::numbers::pi / 2 : std::numeric_limits<double>::infinity();
  const double theta_cap = same ? theta_hi : std::max(50.0, 2.0 * state0.theta);
  const double sing = singular_angle(params);
  const double w_escape = 10.0 * (std::abs(state0.w) + 1.0);

  OdeField ode = [&](double, const StateVec& y, StateVec& dydt) {
    Deriv2 d = field({y[0], y[1]}, params);
    dydt[0] = d.dtheta;
    dydt[1] = d.dw;
  };
  IntegrateOptions iopts;
  iopts.rtol = opts.rtol;
  iopts.atol = opts.atol;
  iopts.guard_distance = [&](const StateVec& y) { return std::hypot(y[0] - sing, y[1]); };

  Eigen::Vector2d y0(state0.theta, state0.w);
  Eigen::Vector2d f0v(f0.dtheta, f0.dw);
  // The chord of one accepted step can fly past state0, so the return check
  // uses the point-to-segment distance as a trigger for dense refinement.
  const double return_trigger = std::max(100.0 * opts.closure_tol, 1e-4);
  const double leave_radius = 2.0 * return_trigger;
  bool left_neighborhood = false;

  Dopri5 stepper(ode, y0, 0.0, max_time, iopts);
  while (stepper.step()) {
    const double w_prev = stepper.y_prev()[1];
    const double w_curr = stepper.y_curr()[1];

    // section W = 0, crossings refined on the dense output
    if ((w_prev < 0.0) != (w_curr < 0.0) && w_prev != 0.0) {
      double tc = refine_crossing(stepper, stepper.t_prev(), stepper.t_curr());
      StateVec yc = stepper.dense(tc);
      report.section_crossings.push_back(
          {tc, {yc[0], yc[1]}, w_curr > w_prev ? +1 : -1});
    }

    const double theta = stepper.y_curr()[0];
    const double w = stepper.y_curr()[1];
    Eigen::Vector2d curr(theta, w);
    Eigen::Vector2d prev(stepper.y_prev()[0], w_prev);

    // the return check only arms on steps that START outside the departure
    // ball, so the initial segment (which contains y0) cannot trigger it
    const bool was_left = left_neighborhood;
    if (!left_neighborhood && (curr - y0).norm() > leave_radius)
      left_neighborhood = true;

    if (was_left && point_segment_distance(y0, prev, curr) < return_trigger) {
      auto [t_ret, dist] = refine_return(stepper, stepper.t_prev(), stepper.t_curr(), y0);
      if (dist < opts.closure_tol && t_ret > 0.0) {
        StateVec yr = stepper.dense(t_ret);
        StateVec fr(2);
        ode(t_ret, yr, fr);
        if (fr.dot(f0v) > 0.0) {  // matching motion direction through state0
          report.closed = true;
          report.period = t_ret;
          report.closure_distance = dist;
          report.detail = "closed orbit";
          return report;
        }
      }
    }

    // escape tests
    if (std::abs(w) > w_escape && std::abs(w) > std::abs(w_prev)) {
      report.detail = "escape in W";
      return report;
    }
    if (theta - theta_lo < 1e-6 || (same && theta_hi - theta < 1e-6) || theta > theta_cap) {
      report.detail = "reached domain boundary";
      return report;
    }
  }
  if (stepper.status() == Termination::SingularityApproach) {
    report.detail = "singularity approach";
    return report;
  }
  if (stepper.status() == Termination::StepSizeUnderflow) {
    report.detail = "step size underflow";
    return report;
  }
  throw Error(Errc::Inconclusive,
              "max_time elapsed with neither closure nor monotone escape");
}

OrbitReport detect_closed_orbit(const ReducedState& state0, const ModelParams& params,
                                double max_time, const OrbitOptions& opts) {
  ReducedField f = params.regime == Regime::SameSign ? ReducedField(&field_same)
                                                     : ReducedField(&field_opp);
  return detect_closed_orbit(f, state0, params, max_time, opts);
}

}  // namespace leapfrog
