#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "monotraj/cost.hpp"
#include "monotraj/geometry.hpp"
#include "monotraj/primitives.hpp"

namespace monotraj::sim {

// World frame: x east, z north, y up. Flight happens at the altitude of the
// start pose.
struct SceneWorld {
  std::vector<Box3> boxes;
  Box3 bounds;

  void validate() const;
  // Distance from p to the nearest box surface (0 inside a box); +inf when
  // the world has no boxes.
  double clearance(const Vec3& p) const;
  bool inside_box(const Vec3& p) const;
  SceneWorld mirrored_x() const;
};

struct RobotPose {
  Vec3 position;
  double yaw = 0.0;  // positive turns left; heading direction (-sin, 0, cos)

  bool operator==(const RobotPose&) const = default;
};

// Camera-frame point or vector (x right, y down, z forward) to world frame.
Vec3 camera_to_world(const RobotPose& pose, const Vec3& p_cam);
Vec3 camera_dir_to_world(const RobotPose& pose, const Vec3& d_cam);

// Pinhole render of the box world. Depth is the z component along the
// optical axis; rays without a hit inside max_range read max_range (valid).
DepthImage render_depth(const SceneWorld& world, const RobotPose& pose, const CameraIntrinsics& k,
                        double max_range);

struct SimConfig {
  CameraIntrinsics intrinsics = CameraIntrinsics::centered(320, 240, 260.0);
  LabelerConfig labeler;
  double arc_length = kDefaultArcLength;
  int n_samples = kDefaultSamples;
  double advance = 0.5;
  int max_steps = 200;
  double max_range = 10.0;
  // Spacing of the continuous collision check along each advance.
  double collision_step = 0.02;
  // Stop instead of flying on when no primitive is collision-free within
  // the safety horizon.
  bool stop_at_dead_end = true;

  void validate() const;
};

enum class Termination { MaxSteps, GoalReached, LeftBounds, Collision, DeadEnd };
std::string_view termination_name(Termination t);

struct StepDiagnostics {
  LabelRecord label;
  double label_micros = 0.0;
  bool collided = false;
  bool dead_end = false;
  Vec3 collision_point;
};

struct StepResult {
  RobotPose pose;
  TrajectoryClass chosen = TrajectoryClass::Straight;
  StepDiagnostics diagnostics;
};

// Render, label, then advance `advance` meters along the chosen primitive
// (perfect tracking, yaw kept on the path tangent). A collision found by the
// continuous point-box check stops the pose at the last collision-free sample.
StepResult step(const SceneWorld& world, const RobotPose& pose, const PrimitiveSet& prims, const SimConfig& config);

struct LogStep {
  RobotPose pose;
  TrajectoryClass chosen = TrajectoryClass::Straight;
  double clearance = 0.0;  // true point-box clearance at the logged pose
  double micros = 0.0;     // label_frame compute time
};

struct SimLog {
  std::vector<LogStep> steps;
  double traveled = 0.0;
  double mean_obstacle_distance = 0.0;
  bool collided = false;
  Termination termination = Termination::MaxSteps;

  // Median of the logged per-step timings.
  double median_micros() const;
  // Equality of everything except the wall-clock timings.
  bool same_trajectory(const SimLog& other) const;
};

struct Episode {
  SceneWorld world;
  RobotPose start;
  std::optional<Box3> goal;
};

struct EpisodeOptions {
  // When set, each step's rendered depth is written there as
  // frame_<step>.f32.
  std::optional<std::filesystem::path> dump_frames_dir;
};

SimLog run_episode(const Episode& episode, const SimConfig& config, const EpisodeOptions& options = {});

// CSV: step,x,y,z,yaw,class,clearance,micros
std::string format_log_csv(const SimLog& log);
std::string format_log_summary(const SimLog& log);

}  // namespace monotraj::sim
