#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "monotraj/distance_field.hpp"
#include "monotraj/geometry.hpp"
#include "monotraj/primitives.hpp"

namespace monotraj {

struct CostParams {
  double d_max = 3.5;           // obstacle-cost cutoff, meters
  double w = 0.5;               // smoothness weight
  double robot_radius = 0.30;   // collision threshold, meters
  double safety_horizon = 2.0;  // truncated safety check, meters

  void validate() const;
};

struct CostBreakdown {
  double f_obst = 0.0;
  double f_smooth = 0.0;
  double total = 0.0;
  double min_clearance = 0.0;
  bool collides = false;
};

// J = f_obst + w * f_smooth per class plus the derived label facts.
struct LabelRecord {
  std::string frame_id;
  std::array<CostBreakdown, kNumClasses> costs{};
  TrajectoryClass label = TrajectoryClass::Straight;
  std::array<TrajectoryClass, 2> top2{TrajectoryClass::Straight, TrajectoryClass::LeftForward};
  std::array<bool, kNumClasses> safe_full{};
  std::array<bool, kNumClasses> safe_truncated{};
  std::array<double, kNumClasses> clearance_truncated{};

  const CostBreakdown& cost(TrajectoryClass c) const { return costs[class_index(c)]; }
};

// Left-Riemann sum of (max(0, d_max - d))^2 * ds over stations 0..n-2 with
// ds = arc_length / (n - 1).
double obstacle_cost(const Trajectory& traj, const DistanceField& field, double d_max);

// 1/2 * sum ||delta xi / dt||^2 * dt with t uniform on [0, 1]. Each delta is
// the segment's arc length (see segment_length), equal to the chord on
// straight segments.
double smoothness_cost(const Trajectory& traj);

CostBreakdown total_cost(const Trajectory& traj, const DistanceField& field, const CostParams& params);

struct CollisionResult {
  bool collides = false;
  double min_clearance = 0.0;
};
CollisionResult check_collision(const Trajectory& traj, const DistanceField& field, double radius, double horizon);

// Preference order used when totals tie exactly: smaller |heading change|
// first, then left before right.
inline constexpr std::array<TrajectoryClass, kNumClasses> kTieBreakOrder = {
    TrajectoryClass::Straight, TrajectoryClass::LeftForward, TrajectoryClass::RightForward,
    TrajectoryClass::LeftTurn, TrajectoryClass::RightTurn};

// Classes sorted by total cost, ties resolved by kTieBreakOrder.
std::array<TrajectoryClass, kNumClasses> rank_classes(const std::array<CostBreakdown, kNumClasses>& costs);

struct LabelerConfig {
  CostParams cost;
  double voxel_size = 0.10;
  // Added around the camera frustum on every side.
  double bounds_margin = 0.5;
};

// Lattice used for one frame: the camera frustum up to depth
// arc_length + d_max (nothing farther can reach any primitive within d_max),
// grown by bounds_margin, and symmetric about the optical axis in x and y.
LatticeSpec labeling_lattice(const CameraIntrinsics& k, const PrimitiveSet& prims, const LabelerConfig& config);

// Distance field of one depth frame (fill, project, voxelize, EDT).
DistanceField frame_distance_field(const DepthImage& depth, const CameraIntrinsics& k, const PrimitiveSet& prims,
                                   const LabelerConfig& config);

LabelRecord label_with_field(const DistanceField& field, const PrimitiveSet& prims, const CostParams& params,
                             std::string frame_id = {});

LabelRecord label_frame(const DepthImage& depth, const CameraIntrinsics& k, const PrimitiveSet& prims,
                        const LabelerConfig& config, std::string frame_id = {});

struct FrameFailure {
  std::string frame_id;
  std::string message;
};

struct DatasetLabels {
  std::vector<LabelRecord> records;
  std::array<double, kNumClasses> distribution{};
  std::vector<FrameFailure> failures;
};

// Frames that throw InputError are recorded in `failures` and skipped.
// Records keep the input order.
DatasetLabels label_dataset(const std::vector<std::pair<std::string, DepthImage>>& frames,
                            const CameraIntrinsics& k, const PrimitiveSet& prims, const LabelerConfig& config);

}  // namespace monotraj
