#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "monotraj/geometry.hpp"
#include "monotraj/simulator.hpp"

namespace test_support {

using namespace monotraj;

inline OccupancyGrid random_grid(std::uint64_t seed, int n, double density, double voxel_size = 0.1) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution occ(density);
  LatticeSpec spec{{0.0, 0.0, 0.0}, voxel_size, n, n, n};
  OccupancyGrid g(spec);
  for (auto& v : g.occupied) v = occ(rng) ? 1 : 0;
  return g;
}

// Depth of a fronto-parallel wall at distance z everywhere.
inline DepthImage constant_depth(int w, int h, double z) {
  DepthImage d(w, h);
  for (int v = 0; v < h; ++v)
    for (int u = 0; u < w; ++u) d.set(u, v, z);
  return d;
}

// Camera-frame box world rendered from the origin looking down +z.
inline DepthImage render_camera_scene(const std::vector<Box3>& camera_boxes, const CameraIntrinsics& k,
                                      double max_range = 10.0) {
  sim::SceneWorld world;
  world.bounds = {{-50, -50, -50}, {50, 50, 50}};
  // Camera y points down while world y points up; flip y to express the
  // camera-frame boxes in the world frame of a pose at the origin.
  for (const Box3& b : camera_boxes) world.boxes.push_back({{b.lo.x, -b.hi.y, b.lo.z}, {b.hi.x, -b.lo.y, b.hi.z}});
  return sim::render_depth(world, sim::RobotPose{}, k, max_range);
}

}  // namespace test_support
