#include "risnoma/sensing.hpp"

#include <cmath>

namespace risnoma {

SensingSpec build_sensing_spec(const std::vector<double>& target_angles_deg,
                               double beam_width_deg, double grid_step_deg) {
  if (!(beam_width_deg > 0.0))
    throw std::invalid_argument("sensing: beam width must be positive");
  if (!(grid_step_deg > 0.0))
    throw std::invalid_argument("sensing: grid step must be positive");
  if (target_angles_deg.empty())
    throw std::invalid_argument("sensing: no target angles");

  SensingSpec spec;
  spec.beam_width_deg = beam_width_deg;
  const int n_steps = static_cast<int>(std::lround(180.0 / grid_step_deg));
  if (std::abs(n_steps * grid_step_deg - 180.0) > 1e-9)
    throw std::invalid_argument("sensing: grid step must divide 180 degrees");
  for (int i = 0; i <= n_steps; ++i)
    spec.angle_grid_deg.push_back(-90.0 + i * grid_step_deg);

  const double half_width = beam_width_deg / 2.0;
  spec.desired_mask.assign(spec.angle_grid_deg.size(), 0);
  for (std::size_t i = 0; i < spec.angle_grid_deg.size(); ++i) {
    for (double target : target_angles_deg) {
      // inclusive window, with a hair of slack against grid round-off
      if (std::abs(spec.angle_grid_deg[i] - target) <= half_width + 1e-9) {
        spec.desired_mask[i] = 1;
        spec.interest_set.push_back(static_cast<int>(i));
        break;
      }
    }
  }
  if (spec.interest_set.empty())
    throw std::invalid_argument(
        "sensing: no grid angle falls within beam_width/2 of any target");
  return spec;
}

}  // namespace risnoma
