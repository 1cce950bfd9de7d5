#include "monotraj/scenes.hpp"

#include <random>

namespace monotraj::sim::scenes {
namespace {

constexpr double kWall = 0.2;
constexpr double kFloor = -1.5;
constexpr double kCeiling = 2.5;

Box3 slab(double x0, double x1, double z0, double z1) { return {{x0, kFloor, z0}, {x1, kCeiling, z1}}; }

}  // namespace

Episode corridor(double length, double width) {
  const double half = 0.5 * width;
  Episode e;
  e.world.boxes = {slab(-half - kWall, -half, -2.0, length), slab(half, half + kWall, -2.0, length)};
  e.world.bounds = {{-half - 1.0, kFloor - 1.0, -3.0}, {half + 1.0, kCeiling + 1.0, length + 3.0}};
  e.start = {{0.0, 0.0, 0.0}, 0.0};
  return e;
}

Episode door(double gap, double width) {
  const double half = 0.5 * width;
  const double wall_z = 4.0;
  const double far = 12.0;
  Episode e;
  e.world.boxes = {
      slab(-half - kWall, -half, -2.0, far),
      slab(half, half + kWall, -2.0, far),
      slab(-half, -0.5 * gap, wall_z, wall_z + kWall),
      slab(0.5 * gap, half, wall_z, wall_z + kWall),
  };
  e.world.bounds = {{-half - 1.0, kFloor - 1.0, -3.0}, {half + 1.0, kCeiling + 1.0, far + 3.0}};
  e.start = {{0.0, 0.0, 0.0}, 0.0};
  e.goal = Box3{{-half, kFloor, wall_z + 1.5}, {half, kCeiling, far}};
  return e;
}

Episode dead_end() {
  const double half = 1.5;
  const double back = -1.0;
  const double front = 6.0;
  Episode e;
  e.world.boxes = {
      slab(-half - kWall, -half, back - kWall, front + kWall),
      slab(half, half + kWall, back - kWall, front + kWall),
      slab(-half, half, front, front + kWall),
      slab(-half, half, back - kWall, back),
  };
  e.world.bounds = {{-half - 2.0, kFloor - 1.0, back - 3.0}, {half + 2.0, kCeiling + 1.0, front + 4.0}};
  e.start = {{0.0, 0.0, 0.0}, 0.0};
  e.goal = Box3{{-half, kFloor, front + 1.0}, {half, kCeiling, front + 3.0}};
  return e;
}

SceneWorld random_boxes(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(3, 6);
  std::uniform_real_distribution<double> cx(-3.0, 3.0);
  std::uniform_real_distribution<double> cz(1.6, 5.0);
  std::uniform_real_distribution<double> cy(-1.0, 1.0);
  std::uniform_real_distribution<double> size(0.3, 1.5);
  std::uniform_real_distribution<double> height(0.5, 3.0);
  SceneWorld w;
  w.bounds = {{-10.0, -5.0, -5.0}, {10.0, 5.0, 12.0}};
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    const double x = cx(rng);
    const double z = cz(rng);
    const double y = cy(rng);
    const double sx = 0.5 * size(rng);
    const double sz = 0.5 * size(rng);
    const double sy = 0.5 * height(rng);
    Box3 b{{x - sx, y - sy, std::max(1.0, z - sz)}, {x + sx, y + sy, z + sz}};
    w.boxes.push_back(b);
  }
  return w;
}

}  // namespace monotraj::sim::scenes
