#include "risnoma/geometry.hpp"

#include <cmath>

#include "risnoma/rng.hpp"

namespace risnoma {

void SystemGeometry::validate() const {
  if (cluster_angle_ranges_deg.empty())
    throw std::invalid_argument("geometry: no cluster angle ranges");
  for (std::size_t k = 0; k < cluster_angle_ranges_deg.size(); ++k) {
    const auto& r = cluster_angle_ranges_deg[k];
    if (!(r.lo <= r.hi))
      throw std::invalid_argument("geometry: empty cluster angle range");
    for (std::size_t j = k + 1; j < cluster_angle_ranges_deg.size(); ++j) {
      const auto& o = cluster_angle_ranges_deg[j];
      if (std::max(r.lo, o.lo) < std::min(r.hi, o.hi))
        throw std::invalid_argument("geometry: overlapping cluster angle ranges");
    }
  }
  if (!(rnu_radius_range_m.lo > 0.0 && rnu_radius_range_m.hi >= rnu_radius_range_m.lo))
    throw std::invalid_argument("geometry: invalid RNU radius range");
  if (!(rfu_radius_range_m.lo > 0.0 && rfu_radius_range_m.hi >= rfu_radius_range_m.lo))
    throw std::invalid_argument("geometry: invalid RFU radius range");
  if (target_angles_deg.size() != target_radii_m.size())
    throw std::invalid_argument("geometry: target angle/radius count mismatch");
  for (double r : target_radii_m)
    if (!(r > 0.0)) throw std::invalid_argument("geometry: target radius must be positive");
}

double SystemGeometry::angle_from_ris_deg(const std::array<double, 2>& p) const {
  const double dx = p[0] - ris_position[0];
  const double dy = p[1] - ris_position[1];
  return rad2deg(std::atan2(dx, dy));
}

double SystemGeometry::bs_ris_distance() const {
  const double dx = bs_position[0] - ris_position[0];
  const double dy = bs_position[1] - ris_position[1];
  return std::hypot(dx, dy);
}

UserPositions sample_user_positions(const SystemGeometry& geometry,
                                    std::uint64_t seed) {
  geometry.validate();
  RngStream rng(seed, "user-positions");
  UserPositions out;
  const std::size_t k_clusters = geometry.cluster_angle_ranges_deg.size();
  out.rnu.resize(k_clusters);
  out.rfu.resize(k_clusters);
  for (std::size_t k = 0; k < k_clusters; ++k) {
    const auto& range = geometry.cluster_angle_ranges_deg[k];
    const double angle = rng.uniform(range.lo, range.hi);
    const double r_near =
        rng.uniform(geometry.rnu_radius_range_m.lo, geometry.rnu_radius_range_m.hi);
    const double r_far =
        rng.uniform(geometry.rfu_radius_range_m.lo, geometry.rfu_radius_range_m.hi);
    out.rnu[k] = {angle, r_near};
    out.rfu[k] = {angle, r_far};  // RNU and RFU share the cluster angle
  }
  return out;
}

}  // namespace risnoma
