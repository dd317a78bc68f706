#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "leapfrog/types.hpp"

namespace leapfrog {

/// Cell classification of a phase-portrait grid.  Masked marks cells inside
/// the singular-point guard radius whose Hamiltonian value is meaningless.
enum class CellKind : std::int8_t { Masked = -1, NonLeapfrog = 0, Leapfrog = 1 };

const char* cell_kind_name(CellKind kind);

/// Hamiltonian values and leapfrog verdicts over a rectangular window of the
/// reduced phase space.  values(i, j) and verdicts(i, j) belong to
/// (theta_axis[j], w_axis[i]); masked cells hold NaN.
struct PortraitGrid {
  Eigen::VectorXd theta_axis;
  Eigen::VectorXd w_axis;
  Eigen::MatrixXd values;
  Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic> verdicts;
  double threshold = 0.0;     ///< regime leapfrog threshold (H* or G-threshold)
  double mask_radius = 1e-3;  ///< phase-space distance of the singular mask
};

/// Evaluates the regime Hamiltonian and classifier on a uniform grid.
/// Ranges must lie inside the phase space; resolution >= 2 per axis.
/// Cells within 1e-3 of the singular point are masked, not errored.
PortraitGrid hamiltonian_grid(const ModelParams& params, double theta_min, double theta_max,
                              double w_min, double w_max, int n_theta, int n_w);

/// Period of the closed orbit through state0, in canonical time units.
/// Requires a Leapfrog verdict; throws NotClosed when detection fails.
double orbit_period(const ReducedState& state0, const ModelParams& params,
                    double max_time = 5000.0);

}  // namespace leapfrog
