#pragma once

#include <array>
#include <string>
#include <string_view>
#include <optional>
#include <vector>

#include "monotraj/core.hpp"

namespace monotraj {

enum class TrajectoryClass : int {
  LeftTurn = 0,
  LeftForward = 1,
  Straight = 2,
  RightForward = 3,
  RightTurn = 4,
};

inline constexpr int kNumClasses = 5;
inline constexpr std::array<TrajectoryClass, kNumClasses> kAllClasses = {
    TrajectoryClass::LeftTurn, TrajectoryClass::LeftForward, TrajectoryClass::Straight,
    TrajectoryClass::RightForward, TrajectoryClass::RightTurn};

constexpr int class_index(TrajectoryClass c) { return static_cast<int>(c); }
std::string_view class_name(TrajectoryClass c);
// Accepts the names returned by class_name or an integer id 0..4.
std::optional<TrajectoryClass> parse_class(std::string_view text);
TrajectoryClass mirror_class(TrajectoryClass c);

// Terminal heading change in radians. Positive yaw turns toward the robot's
// left, which is -x in the camera frame: the heading-psi direction is
// (-sin psi, 0, cos psi).
double terminal_heading_change(TrajectoryClass c);

// Planar direction of travel for heading psi (camera or world frame).
inline Vec3 heading_direction(double psi) { return {-std::sin(psi), 0.0, std::cos(psi)}; }

struct Trajectory {
  std::vector<Vec3> waypoints;
  std::vector<double> headings;
  TrajectoryClass class_id = TrajectoryClass::Straight;
  double arc_length = 0.0;

  std::size_t size() const { return waypoints.size(); }
  double spacing() const { return arc_length / static_cast<double>(waypoints.size() - 1); }
  bool operator==(const Trajectory&) const = default;
};

struct PrimitiveSet {
  std::array<Trajectory, kNumClasses> trajectories;

  const Trajectory& operator[](TrajectoryClass c) const { return trajectories[class_index(c)]; }
};

inline constexpr double kDefaultArcLength = 2.5;
inline constexpr int kDefaultSamples = 50;

// Five constant-curvature arcs in the y = 0 plane, equal arc length, terminal
// heading changes of +90, +45, 0, -45, -90 degrees. Right-hand members are
// exact reflections of their left-hand counterparts.
PrimitiveSet generate_primitives(double arc_length = kDefaultArcLength, int n_samples = kDefaultSamples);

// Arc length of the segment between consecutive waypoints, treating it as
// the circular arc implied by the two tangent headings.
double segment_length(const Trajectory& traj, std::size_t i);

// Pose on the curve at arc length s from the start (clamped to the curve).
struct CurvePoint {
  Vec3 position;
  double heading = 0.0;
};
CurvePoint point_at(const Trajectory& traj, double s);

Trajectory resample(const Trajectory& traj, int n);
Trajectory mirror(const Trajectory& traj);
// Prefix of arc length min(horizon, arc_length), re-stationed uniformly with
// spacing no larger than the original.
Trajectory truncate(const Trajectory& traj, double horizon);

}  // namespace monotraj
