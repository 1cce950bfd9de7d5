#include <doctest.h>

#include <algorithm>
#include <random>

#include "monotraj/geometry.hpp"
#include "support.hpp"

using namespace monotraj;

TEST_CASE("intrinsics validation") {
  CHECK_NOTHROW(CameraIntrinsics::centered(320, 240, 260).validate());
  CHECK_THROWS_AS((CameraIntrinsics{0, 1, 1, 1, 4, 4}).validate(), InputError);
  CHECK_THROWS_AS((CameraIntrinsics{1, 1, 4, 1, 4, 4}).validate(), InputError);
  CHECK_THROWS_AS((CameraIntrinsics{1, 1, 1, -0.5, 4, 4}).validate(), InputError);
  const auto c = CameraIntrinsics::centered(320, 240, 260);
  CHECK(c.cx == 159.5);
  CHECK(c.cy == 119.5);
}

TEST_CASE("depth image marks non-positive and non-finite samples invalid") {
  DepthImage d(2, 2, {1.0, 0.0, -1.0, std::nan("")}, {1, 1, 1, 1});
  CHECK(d.valid(0, 0));
  CHECK_FALSE(d.valid(1, 0));
  CHECK_FALSE(d.valid(0, 1));
  CHECK_FALSE(d.valid(1, 1));
  CHECK(d.valid_count() == 1);
  CHECK_THROWS_AS(DepthImage(2, 2, {1.0}, {1}), InputError);
}

TEST_CASE("projection of principal point and one-focal offset") {
  CameraIntrinsics k{100.0, 100.0, 2.0, 1.0, 8, 4};
  DepthImage d(8, 4);
  d.set(2, 1, 2.0);
  auto cloud = project_depth_to_cloud(d, k);
  REQUIRE(cloud.points.size() == 1);
  CHECK(cloud.points[0] == Vec3{0.0, 0.0, 2.0});

  CameraIntrinsics k2{4.0, 4.0, 1.0, 1.0, 8, 4};
  DepthImage d2(8, 4);
  d2.set(5, 1, 1.0);  // u = cx + fx
  cloud = project_depth_to_cloud(d2, k2);
  REQUIRE(cloud.points.size() == 1);
  CHECK(cloud.points[0] == Vec3{1.0, 0.0, 1.0});
}

TEST_CASE("projection emits one point per valid pixel") {
  CameraIntrinsics k{3.0, 3.0, 1.5, 1.5, 4, 4};
  DepthImage d(4, 4);
  const int coords[5][2] = {{0, 0}, {3, 0}, {1, 2}, {2, 3}, {3, 3}};
  for (const auto& c : coords) d.set(c[0], c[1], 1.0 + c[0] * 0.5);
  CHECK(project_depth_to_cloud(d, k).points.size() == 5);
  CHECK_THROWS_AS(project_depth_to_cloud(DepthImage(3, 4), k), InputError);
}

TEST_CASE("projection matches the pinhole formula on random pixels") {
  CameraIntrinsics k{210.3, 190.7, 77.2, 55.9, 160, 120};
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> z(0.3, 9.0);
  DepthImage d(160, 120);
  for (int v = 0; v < 120; ++v)
    for (int u = 0; u < 160; ++u) d.set(u, v, z(rng));
  const auto cloud = project_depth_to_cloud(d, k);
  REQUIRE(cloud.points.size() == 160u * 120u);
  for (int v = 0; v < 120; ++v) {
    for (int u = 0; u < 160; ++u) {
      const Vec3& p = cloud.points[static_cast<std::size_t>(v) * 160 + u];
      const double zz = d.at(u, v);
      CHECK(p.z == zz);
      CHECK(p.x == doctest::Approx((u - k.cx) * zz / k.fx).epsilon(1e-14));
      CHECK(p.y == doctest::Approx((v - k.cy) * zz / k.fy).epsilon(1e-14));
    }
  }
}

TEST_CASE("fronto-parallel plane round trip keeps z exact") {
  const auto k = CameraIntrinsics::centered(64, 48, 50);
  const auto cloud = project_depth_to_cloud(test_support::constant_depth(64, 48, 2.75), k);
  for (const Vec3& p : cloud.points) CHECK(p.z == 2.75);
}

TEST_CASE("hole filling") {
  SUBCASE("complete image is unchanged") {
    const auto d = test_support::constant_depth(6, 5, 1.25);
    CHECK(fill_depth_holes(d) == d);
  }
  SUBCASE("constant image with one hole") {
    auto d = test_support::constant_depth(7, 7, 3.0);
    d.invalidate(3, 3);
    const auto f = fill_depth_holes(d);
    CHECK(f.valid_count() == f.size());
    CHECK(f.at(3, 3) == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("checkerboard hole stays within the valid range") {
    DepthImage d(8, 8);
    for (int v = 0; v < 8; ++v)
      for (int u = 0; u < 8; ++u) d.set(u, v, (u + v) % 2 ? 2.0 : 1.0);
    d.invalidate(4, 5);
    const auto f = fill_depth_holes(d);
    CHECK(f.at(4, 5) >= 1.0);
    CHECK(f.at(4, 5) <= 2.0);
  }
  SUBCASE("large holes, original pixels untouched, idempotent") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> z(0.5, 6.0);
    std::bernoulli_distribution hole(0.4);
    DepthImage d(30, 20);
    double lo = 1e9, hi = -1e9;
    for (int v = 0; v < 20; ++v) {
      for (int u = 0; u < 30; ++u) {
        if (u > 10 && u < 20 && v > 5 && v < 15) continue;  // block hole
        if (hole(rng)) continue;
        const double val = z(rng);
        d.set(u, v, val);
        lo = std::min(lo, val);
        hi = std::max(hi, val);
      }
    }
    const auto f = fill_depth_holes(d);
    CHECK(f.valid_count() == f.size());
    for (int v = 0; v < 20; ++v) {
      for (int u = 0; u < 30; ++u) {
        if (d.valid(u, v)) CHECK(f.at(u, v) == d.at(u, v));
        CHECK(f.at(u, v) >= lo);
        CHECK(f.at(u, v) <= hi);
      }
    }
    CHECK(fill_depth_holes(f) == f);
  }
  SUBCASE("fully invalid image is rejected") {
    CHECK_THROWS_AS(fill_depth_holes(DepthImage(4, 4)), InputError);
  }
}

TEST_CASE("axis_index commutes with reflection") {
  for (int n : {1, 2, 7, 10, 11}) {
    for (double s = -7.3; s <= 7.3; s += 0.05) {
      const int a = axis_index(s, n);
      const int b = axis_index(-s, n);
      if (a >= 0 && a < n) CHECK(b == n - 1 - a);
    }
  }
  CHECK(axis_index(0.0, 4) == 2);
  CHECK(axis_index(-0.01, 4) == 1);
  CHECK(axis_index(2.5, 4) == 4);
  CHECK(axis_index(-2.5, 4) == -1);
}

TEST_CASE("voxelize basics") {
  const Box3 bounds{{0, 0, 0}, {1, 1, 1}};
  SUBCASE("empty cloud") {
    const auto g = voxelize(PointCloud{}, 0.1, bounds);
    CHECK(g.occupied_count() == 0);
    CHECK(g.lattice.voxel_count() == 1000);
  }
  SUBCASE("point at a voxel center") {
    PointCloud c{{{0.35, 0.45, 0.55}}};
    const auto g = voxelize(c, 0.1, bounds);
    CHECK(g.occupied_count() == 1);
    CHECK(g.at(3, 4, 5));
  }
  SUBCASE("points outside bounds are ignored") {
    PointCloud c{{{-0.05, 0.5, 0.5}, {0.5, 1.05, 0.5}, {0.5, 0.5, 2.0}}};
    CHECK(voxelize(c, 0.1, bounds).occupied_count() == 0);
  }
}

TEST_CASE("voxelize matches per-voxel brute force and is monotone") {
  const Box3 bounds{{-1.0, -0.5, 0.0}, {1.0, 0.5, 2.0}};
  const double vs = 0.1;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-0.999, 0.999), uy(-0.499, 0.499), uz(0.001, 1.999);
  PointCloud cloud;
  for (int i = 0; i < 1000; ++i) cloud.points.push_back({ux(rng), uy(rng), uz(rng)});
  const auto g = voxelize(cloud, vs, bounds);
  const auto& L = g.lattice;
  std::size_t expected = 0;
  for (int k = 0; k < L.nz; ++k) {
    for (int j = 0; j < L.ny; ++j) {
      for (int i = 0; i < L.nx; ++i) {
        const Vec3 c = L.voxel_center(i, j, k);
        bool any = false;
        for (const Vec3& p : cloud.points) {
          if (std::abs(p.x - c.x) < 0.5 * vs && std::abs(p.y - c.y) < 0.5 * vs && std::abs(p.z - c.z) < 0.5 * vs) {
            any = true;
            break;
          }
        }
        expected += any;
        CHECK(g.at(i, j, k) == any);
      }
    }
  }
  CHECK(g.occupied_count() == expected);

  PointCloud more = cloud;
  for (int i = 0; i < 300; ++i) more.points.push_back({ux(rng), uy(rng), uz(rng)});
  const auto g2 = voxelize(more, vs, bounds);
  for (std::size_t i = 0; i < g.occupied.size(); ++i)
    if (g.occupied[i]) CHECK(g2.occupied[i]);
}

TEST_CASE("horizontal flip") {
  DepthImage d(3, 2);
  d.set(0, 0, 1.0);
  d.set(2, 1, 4.0);
  const auto f = flip_horizontal(d);
  CHECK(f.at(2, 0) == 1.0);
  CHECK(f.valid(2, 0));
  CHECK_FALSE(f.valid(0, 0));
  CHECK(f.at(0, 1) == 4.0);
  CHECK(flip_horizontal(f) == d);
}
