#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "leapfrog/dyn_same.hpp"
#include "leapfrog/types.hpp"

namespace leapfrog {

using StateVec = Eigen::VectorXd;
using OdeField = std::function<void(double t, const StateVec& y, StateVec& dydt)>;
using Monitor = std::function<double(const StateVec& y)>;

enum class Termination { Completed, SingularityApproach, StepSizeUnderflow };

const char* termination_name(Termination t);

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVec> states;
  std::vector<double> monitor_drift;  ///< per monitor: max |m(y)-m(y0)| / max(1,|m(y0)|)
  double hamiltonian_drift = 0.0;     ///< max over monitors
  Termination termination = Termination::Completed;
};

struct IntegrateOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  /// Optional distance-to-singularity function; integration terminates with
  /// SingularityApproach when it drops below guard_threshold.
  std::function<double(const StateVec&)> guard_distance;
  double guard_threshold = 1e-12;
  double max_step = 0.0;  ///< 0 = no cap
  long max_steps = 200'000'000;
};

/// Adaptive embedded Dormand-Prince 5(4) stepper with 4th-order dense output.
/// Drive with step(); dense(t) interpolates inside the last accepted step.
class Dopri5 {
 public:
  Dopri5(OdeField field, StateVec y0, double t0, double t_end, IntegrateOptions opts);

  /// Advances one accepted step (clamped at t_end).  Returns false once t_end
  /// is reached or the integration terminated early; status() tells which.
  bool step();

  double t_prev() const { return t_prev_; }
  double t_curr() const { return t_; }
  const StateVec& y_prev() const { return y_prev_; }
  const StateVec& y_curr() const { return y_; }
  bool finished() const { return finished_; }
  Termination status() const { return status_; }

  /// Dense-output interpolant, valid for t in [t_prev(), t_curr()].
  StateVec dense(double t) const;

 private:
  void compute_dense_coefficients();

  OdeField field_;
  IntegrateOptions opts_;
  double t_end_;
  double t_ = 0.0, t_prev_ = 0.0;
  StateVec y_, y_prev_;
  StateVec k1_;  // FSAL derivative at (t_, y_)
  double h_ = 0.0;
  double facold_ = 1e-4;  // PI controller memory
  bool finished_ = false;
  Termination status_ = Termination::Completed;
  Eigen::Matrix<double, Eigen::Dynamic, 5> rcont_;  // dense-output coefficients
  long steps_taken_ = 0;
};

/// Integrates from y0 to t_end, recording every accepted step and evaluating
/// the monitors there.  Fields may throw Error(SingularPoint); it is treated
/// as a SingularityApproach termination at the last accepted state.
Trajectory integrate(const OdeField& field, const StateVec& y0, double t_end,
                     const IntegrateOptions& opts = {}, const std::vector<Monitor>& monitors = {});

struct SectionCrossing {
  double time = 0.0;
  ReducedState state;
  int direction = 0;  ///< sign of dW/dt at the crossing
};

struct OrbitReport {
  bool closed = false;
  std::optional<double> period;
  std::vector<SectionCrossing> section_crossings;
  double closure_distance = std::numeric_limits<double>::infinity();
  std::string detail;
};

struct OrbitOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double closure_tol = 1e-6;
};

using ReducedField = std::function<Deriv2(const ReducedState&, const ModelParams&)>;

/// Integrates the reduced field from state0, detecting W=0 section crossings
/// (refined on the dense output to |W| < 1e-10) and declaring the orbit
/// closed when the state returns within closure_tol of state0 with matching
/// motion direction.  Non-closure is declared on escape: |W| beyond
/// 10*(|W0|+1) and growing, or theta within 1e-6 of a domain endpoint.
/// Throws Error(Inconclusive) if max_time elapses with neither.
OrbitReport detect_closed_orbit(const ReducedField& field, const ReducedState& state0,
                                const ModelParams& params, double max_time,
                                const OrbitOptions& opts = {});

/// Convenience overload using the regime's own field.
OrbitReport detect_closed_orbit(const ReducedState& state0, const ModelParams& params,
                                double max_time, const OrbitOptions& opts = {});

}  // namespace leapfrog
