#include "monotraj/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "monotraj/depth_io.hpp"
#include "monotraj/simd/kernels.hpp"

namespace monotraj::sim {

void SceneWorld::validate() const {
  if (!bounds.non_degenerate()) throw InputError("scene: degenerate bounds");
  for (const Box3& b : boxes) {
    if (!b.non_degenerate()) throw InputError("scene: degenerate box");
    if (!bounds.contains(b)) throw InputError("scene: box outside bounds");
  }
}

double SceneWorld::clearance(const Vec3& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Box3& b : boxes) best = std::min(best, b.distance_to(p));
  return best;
}

bool SceneWorld::inside_box(const Vec3& p) const {
  return std::any_of(boxes.begin(), boxes.end(), [&](const Box3& b) { return b.contains(p); });
}

SceneWorld SceneWorld::mirrored_x() const {
  auto flip = [](const Box3& b) {
    return Box3{{-b.hi.x, b.lo.y, b.lo.z}, {-b.lo.x, b.hi.y, b.hi.z}};
  };
  SceneWorld out;
  out.bounds = flip(bounds);
  for (const Box3& b : boxes) out.boxes.push_back(flip(b));
  return out;
}

Vec3 camera_to_world(const RobotPose& pose, const Vec3& p) {
  const double c = std::cos(pose.yaw);
  const double s = std::sin(pose.yaw);
  return {pose.position.x + p.x * c - p.z * s, pose.position.y - p.y, pose.position.z + p.x * s + p.z * c};
}

Vec3 camera_dir_to_world(const RobotPose& pose, const Vec3& d) {
  const double c = std::cos(pose.yaw);
  const double s = std::sin(pose.yaw);
  return {d.x * c - d.z * s, -d.y, d.x * s + d.z * c};
}

DepthImage render_depth(const SceneWorld& world, const RobotPose& pose, const CameraIntrinsics& k,
                        double max_range) {
  k.validate();
  if (!(max_range > 0.0)) throw InputError("render: max_range must be positive");
  if (world.inside_box(pose.position)) throw InputError("render: camera pose lies inside a box");

  std::vector<simd::SlabBox> slabs;
  slabs.reserve(world.boxes.size());
  for (const Box3& b : world.boxes) slabs.push_back({{b.lo.x, b.lo.y, b.lo.z}, {b.hi.x, b.hi.y, b.hi.z}});

  const auto w = static_cast<std::size_t>(k.width);
  const double c = std::cos(pose.yaw);
  const double s = std::sin(pose.yaw);
  std::vector<double> xn(w);
  for (std::size_t u = 0; u < w; ++u) xn[u] = (static_cast<double>(u) - k.cx) / k.fx;
  std::vector<double> dx(w), dy(w), dz(w);
  for (std::size_t u = 0; u < w; ++u) {
    dx[u] = xn[u] * c - s;
    dz[u] = xn[u] * s + c;
  }

  const auto& kern = simd::active();
  std::vector<double> depth(w * static_cast<std::size_t>(k.height));
  simd::RayBundle rays{{pose.position.x, pose.position.y, pose.position.z}, dx.data(), dy.data(), dz.data(), w};
  for (int v = 0; v < k.height; ++v) {
    const double yn = (v - k.cy) / k.fy;
    std::fill(dy.begin(), dy.end(), -yn);
    kern.ray_box_nearest(rays, slabs.data(), slabs.size(), max_range, depth.data() + static_cast<std::size_t>(v) * w);
  }
  return DepthImage(k.width, k.height, std::move(depth), std::vector<std::uint8_t>(w * k.height, 1));
}

void SimConfig::validate() const {
  intrinsics.validate();
  labeler.cost.validate();
  if (!(advance > 0.0 && advance <= arc_length)) throw InputError("sim: advance must lie in (0, arc_length]");
  if (max_steps < 1) throw InputError("sim: max_steps must be >= 1");
  if (!(max_range > 0.0)) throw InputError("sim: max_range must be positive");
  if (!(collision_step > 0.0)) throw InputError("sim: collision_step must be positive");
}

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::MaxSteps: return "max_steps";
    case Termination::GoalReached: return "goal_reached";
    case Termination::LeftBounds: return "left_bounds";
    case Termination::Collision: return "collision";
    case Termination::DeadEnd: return "dead_end";
  }
  return "unknown";
}

namespace {

RobotPose pose_along(const RobotPose& pose, const Trajectory& traj, double s) {
  const CurvePoint cp = point_at(traj, s);
  return {camera_to_world(pose, cp.position), std::remainder(pose.yaw + cp.heading, 2.0 * std::numbers::pi)};
}

}  // namespace

StepResult step(const SceneWorld& world, const RobotPose& pose, const PrimitiveSet& prims, const SimConfig& config) {
  const DepthImage depth = render_depth(world, pose, config.intrinsics, config.max_range);
  StepResult out;
  const auto t0 = std::chrono::steady_clock::now();
  out.diagnostics.label = label_frame(depth, config.intrinsics, prims, config.labeler);
  const auto t1 = std::chrono::steady_clock::now();
  out.diagnostics.label_micros = std::chrono::duration<double, std::micro>(t1 - t0).count();
  out.chosen = out.diagnostics.label.label;
  out.pose = pose;

  if (config.stop_at_dead_end &&
      std::none_of(out.diagnostics.label.safe_truncated.begin(), out.diagnostics.label.safe_truncated.end(),
                   [](bool safe) { return safe; })) {
    out.diagnostics.dead_end = true;
    return out;
  }

  const Trajectory& traj = prims[out.chosen];
  const double radius = config.labeler.cost.robot_radius;
  const int samples = std::max(1, static_cast<int>(std::ceil(config.advance / config.collision_step)));
  RobotPose last_free = pose;
  for (int i = 1; i <= samples; ++i) {
    const double s = i == samples ? config.advance : config.advance * (static_cast<double>(i) / samples);
    const RobotPose next = pose_along(pose, traj, s);
    if (world.clearance(next.position) < radius) {
      out.diagnostics.collided = true;
      out.diagnostics.collision_point = next.position;
      out.pose = last_free;
      return out;
    }
    last_free = next;
  }
  out.pose = last_free;
  return out;
}

double SimLog::median_micros() const {
  if (steps.empty()) return 0.0;
  std::vector<double> t;
  t.reserve(steps.size());
  for (const LogStep& s : steps) t.push_back(s.micros);
  const std::size_t mid = t.size() / 2;
  std::nth_element(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(mid), t.end());
  if (t.size() % 2 == 1) return t[mid];
  const double upper = t[mid];
  const double lower = *std::max_element(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

bool SimLog::same_trajectory(const SimLog& other) const {
  if (steps.size() != other.steps.size() || traveled != other.traveled ||
      mean_obstacle_distance != other.mean_obstacle_distance || collided != other.collided ||
      termination != other.termination) {
    return false;
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i].pose == other.steps[i].pose) || steps[i].chosen != other.steps[i].chosen ||
        steps[i].clearance != other.steps[i].clearance) {
      return false;
    }
  }
  return true;
}

SimLog run_episode(const Episode& episode, const SimConfig& config, const EpisodeOptions& options) {
  config.validate();
  episode.world.validate();
  if (episode.world.inside_box(episode.start.position) ||
      episode.world.clearance(episode.start.position) < config.labeler.cost.robot_radius) {
    throw InputError("episode: start pose is not in free space");
  }
  if (options.dump_frames_dir) std::filesystem::create_directories(*options.dump_frames_dir);

  const PrimitiveSet prims = generate_primitives(config.arc_length, config.n_samples);
  SimLog log;
  RobotPose pose = episode.start;
  double clearance_sum = 0.0;
  for (int i = 0; i < config.max_steps; ++i) {
    if (options.dump_frames_dir) {
      char name[64];
      std::snprintf(name, sizeof name, "frame_%05d.f32", i);
      io::write_depth_raster(*options.dump_frames_dir / name,
                             render_depth(episode.world, pose, config.intrinsics, config.max_range));
    }
    const StepResult r = step(episode.world, pose, prims, config);
    const double clearance = episode.world.clearance(r.pose.position);
    log.steps.push_back({r.pose, r.chosen, clearance, r.diagnostics.label_micros});
    log.traveled += (r.pose.position - pose.position).norm();
    clearance_sum += clearance;
    pose = r.pose;
    if (r.diagnostics.collided) {
      log.collided = true;
      log.termination = Termination::Collision;
      break;
    }
    if (r.diagnostics.dead_end) {
      log.termination = Termination::DeadEnd;
      break;
    }
    if (!episode.world.bounds.contains(pose.position)) {
      log.termination = Termination::LeftBounds;
      break;
    }
    if (episode.goal && episode.goal->contains(pose.position)) {
      log.termination = Termination::GoalReached;
      break;
    }
  }
  if (!log.steps.empty()) log.mean_obstacle_distance = clearance_sum / static_cast<double>(log.steps.size());
  return log;
}

std::string format_log_csv(const SimLog& log) {
  std::ostringstream out;
  out << "step,x,y,z,yaw,class,clearance,micros\n";
  char line[256];
  for (std::size_t i = 0; i < log.steps.size(); ++i) {
    const LogStep& s = log.steps[i];
    std::snprintf(line, sizeof line, "%zu,%.10g,%.10g,%.10g,%.10g,%s,%.10g,%.0f\n", i, s.pose.position.x,
                  s.pose.position.y, s.pose.position.z, s.pose.yaw, std::string(class_name(s.chosen)).c_str(),
                  s.clearance, s.micros);
    out << line;
  }
  return out.str();
}

std::string format_log_summary(const SimLog& log) {
  char text[512];
  std::snprintf(text, sizeof text,
                "steps=%zu\ntraveled=%.10g\nmean_obstacle_distance=%.10g\ncollided=%s\ntermination=%s\n"
                "median_label_micros=%.0f\n",
                log.steps.size(), log.traveled, log.mean_obstacle_distance, log.collided ? "true" : "false",
                std::string(termination_name(log.termination)).c_str(), log.median_micros());
  return text;
}

}  // namespace monotraj::sim
