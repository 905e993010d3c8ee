#pragma once

#include <vector>

#include "risnoma/types.hpp"

namespace risnoma {

/// Angle grid, target mask and the indices the max-min objective ranges over.
struct SensingSpec {
  std::vector<double> angle_grid_deg;   // ordered, covers [-90, 90]
  std::vector<int> interest_set;        // grid indices within beam_width/2 of a target
  std::vector<int> desired_mask;        // 1 on the interest set, 0 elsewhere
  double beam_width_deg = 6.0;

  int q_count() const { return static_cast<int>(interest_set.size()); }
  double interest_angle(int q) const { return angle_grid_deg[interest_set[q]]; }
};

/// Builds the grid [-90 : grid_step : 90] and marks every grid angle within
/// beam_width/2 of some target as an angle of interest.
SensingSpec build_sensing_spec(const std::vector<double>& target_angles_deg,
                               double beam_width_deg, double grid_step_deg);

}  // namespace risnoma
