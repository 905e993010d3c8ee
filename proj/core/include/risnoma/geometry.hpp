#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "risnoma/types.hpp"

namespace risnoma {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
  double width() const { return hi - lo; }
};

/// 2-D deployment layout. The RIS is a ULA; angles of users/targets are
/// measured from its broadside (the +y axis), positive toward +x, so a point
/// (x, y) seen from the RIS sits at atan2(x, y).
struct SystemGeometry {
  std::array<double, 2> bs_position{-40.0, 10.0};
  std::array<double, 2> ris_position{0.0, 0.0};
  std::vector<Interval> cluster_angle_ranges_deg;  // one per cluster
  Interval rnu_radius_range_m{20.0, 25.0};
  Interval rfu_radius_range_m{80.0, 85.0};
  std::vector<double> target_angles_deg;
  std::vector<double> target_radii_m;

  void validate() const;

  /// Angle (degrees, from RIS broadside) of a point in the plane.
  double angle_from_ris_deg(const std::array<double, 2>& p) const;

  /// BS -> RIS distance.
  double bs_ris_distance() const;
};

struct UserPosition {
  double angle_deg = 0.0;
  double radius_m = 0.0;
};

/// Per-cluster (RNU, RFU) placements. Within a cluster both users share the
/// same angle; radii are drawn from the near/far rings.
struct UserPositions {
  std::vector<UserPosition> rnu;  // index = cluster
  std::vector<UserPosition> rfu;
};

UserPositions sample_user_positions(const SystemGeometry& geometry,
                                    std::uint64_t seed);

}  // namespace risnoma
