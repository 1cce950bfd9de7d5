#include "monotraj/cost.hpp"

#include <algorithm>
#include <cmath>

#include "monotraj/simd/kernels.hpp"

namespace monotraj {

void CostParams::validate() const {
  if (!(d_max > 0.0)) throw InputError("cost params: d_max must be positive");
  if (!(w >= 0.0)) throw InputError("cost params: w must be non-negative");
  if (!(robot_radius >= 0.0)) throw InputError("cost params: robot_radius must be non-negative");
  if (!(safety_horizon > 0.0)) throw InputError("cost params: safety_horizon must be positive");
}

namespace {

std::vector<double> waypoint_distances(const Trajectory& traj, const DistanceField& field) {
  std::vector<double> d(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) d[i] = field.query(traj.waypoints[i]);
  return d;
}

double riemann_obstacle(const Trajectory& traj, const std::vector<double>& d, double d_max) {
  const std::size_t stations = traj.size() - 1;
  return simd::active().shortfall_sq_sum(d.data(), stations, d_max) * traj.spacing();
}

}  // namespace

double obstacle_cost(const Trajectory& traj, const DistanceField& field, double d_max) {
  if (traj.size() < 2) throw InputError("obstacle_cost: trajectory needs at least 2 waypoints");
  return riemann_obstacle(traj, waypoint_distances(traj, field), d_max);
}

double smoothness_cost(const Trajectory& traj) {
  if (traj.size() < 2) throw InputError("smoothness_cost: trajectory needs at least 2 waypoints");
  const double dt = 1.0 / static_cast<double>(traj.size() - 1);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const double speed = segment_length(traj, i) / dt;
    acc += speed * speed * dt;
  }
  return 0.5 * acc;
}

CostBreakdown total_cost(const Trajectory& traj, const DistanceField& field, const CostParams& params) {
  if (traj.size() < 2) throw InputError("total_cost: trajectory needs at least 2 waypoints");
  const std::vector<double> d = waypoint_distances(traj, field);
  CostBreakdown out;
  out.f_obst = riemann_obstacle(traj, d, params.d_max);
  out.f_smooth = smoothness_cost(traj);
  out.total = out.f_obst + params.w * out.f_smooth;
  out.min_clearance = *std::min_element(d.begin(), d.end());
  out.collides = out.min_clearance < params.robot_radius;
  return out;
}

CollisionResult check_collision(const Trajectory& traj, const DistanceField& field, double radius, double horizon) {
  if (!(radius >= 0.0)) throw InputError("check_collision: radius must be non-negative");
  const Trajectory prefix = truncate(traj, horizon);
  CollisionResult out{false, field.free_space_value()};
  for (const Vec3& p : prefix.waypoints) {
    const double d = field.query(p);
    out.min_clearance = std::min(out.min_clearance, d);
    if (d < radius) out.collides = true;
  }
  return out;
}

std::array<TrajectoryClass, kNumClasses> rank_classes(const std::array<CostBreakdown, kNumClasses>& costs) {
  std::array<TrajectoryClass, kNumClasses> order = kTieBreakOrder;
  std::stable_sort(order.begin(), order.end(), [&](TrajectoryClass a, TrajectoryClass b) {
    return costs[class_index(a)].total < costs[class_index(b)].total;
  });
  return order;
}

LatticeSpec labeling_lattice(const CameraIntrinsics& k, const PrimitiveSet& prims, const LabelerConfig& config) {
  k.validate();
  config.cost.validate();
  if (!(config.voxel_size > 0.0)) throw InputError("labeler: voxel_size must be positive");
  if (!(config.bounds_margin >= 0.0)) throw InputError("labeler: bounds_margin must be non-negative");
  double reach = 0.0;
  double lateral = 0.0;
  double vertical = 0.0;
  for (const Trajectory& t : prims.trajectories) {
    reach = std::max(reach, t.arc_length);
    for (const Vec3& p : t.waypoints) {
      lateral = std::max(lateral, std::fabs(p.x));
      vertical = std::max(vertical, std::fabs(p.y));
    }
  }
  const double depth_limit = reach + config.cost.d_max;
  const double m = config.bounds_margin;
  const double vs = config.voxel_size;
  const double half_x =
      std::max(depth_limit * std::max(k.cx, k.width - 1 - k.cx) / k.fx, lateral) + m;
  const double half_y =
      std::max(depth_limit * std::max(k.cy, k.height - 1 - k.cy) / k.fy, vertical) + m;

  LatticeSpec spec;
  spec.voxel_size = vs;
  spec.nx = 2 * static_cast<int>(std::ceil(half_x / vs));
  spec.ny = 2 * static_cast<int>(std::ceil(half_y / vs));
  spec.nz = static_cast<int>(std::ceil((depth_limit + 2.0 * m) / vs));
  spec.origin = {-(spec.nx * vs * 0.5), -(spec.ny * vs * 0.5), -m};
  return spec;
}

DistanceField frame_distance_field(const DepthImage& depth, const CameraIntrinsics& k, const PrimitiveSet& prims,
                                   const LabelerConfig& config) {
  const LatticeSpec lattice = labeling_lattice(k, prims, config);
  const PointCloud cloud = depth.valid_count() == depth.size()
                               ? project_depth_to_cloud(depth, k)
                               : project_depth_to_cloud(fill_depth_holes(depth), k);
  return compute_edt(voxelize(cloud, lattice));
}

LabelRecord label_with_field(const DistanceField& field, const PrimitiveSet& prims, const CostParams& params,
                             std::string frame_id) {
  params.validate();
  LabelRecord rec;
  rec.frame_id = std::move(frame_id);
  for (TrajectoryClass c : kAllClasses) {
    const Trajectory& t = prims[c];
    const int i = class_index(c);
    rec.costs[i] = total_cost(t, field, params);
    rec.safe_full[i] = !rec.costs[i].collides;
    const CollisionResult near = check_collision(t, field, params.robot_radius, params.safety_horizon);
    rec.safe_truncated[i] = !near.collides;
    rec.clearance_truncated[i] = near.min_clearance;
  }
  const auto ranked = rank_classes(rec.costs);
  rec.label = ranked[0];
  rec.top2 = {ranked[0], ranked[1]};
  return rec;
}

LabelRecord label_frame(const DepthImage& depth, const CameraIntrinsics& k, const PrimitiveSet& prims,
                        const LabelerConfig& config, std::string frame_id) {
  return label_with_field(frame_distance_field(depth, k, prims, config), prims, config.cost, std::move(frame_id));
}

DatasetLabels label_dataset(const std::vector<std::pair<std::string, DepthImage>>& frames,
                            const CameraIntrinsics& k, const PrimitiveSet& prims, const LabelerConfig& config) {
  if (frames.empty()) throw InputError("label_dataset: no frames");
  DatasetLabels out;
  std::array<std::size_t, kNumClasses> counts{};
  for (const auto& [id, depth] : frames) {
    try {
      LabelRecord rec = label_frame(depth, k, prims, config, id);
      ++counts[class_index(rec.label)];
      out.records.push_back(std::move(rec));
    } catch (const InputError& e) {
      out.failures.push_back({id, e.what()});
    }
  }
  if (!out.records.empty()) {
    for (int c = 0; c < kNumClasses; ++c) {
      out.distribution[c] = static_cast<double>(counts[c]) / static_cast<double>(out.records.size());
    }
  }
  return out;
}

}  // namespace monotraj
