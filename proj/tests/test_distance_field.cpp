#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "monotraj/distance_field.hpp"
#include "support.hpp"

using namespace monotraj;

namespace {

// Independent oracle: nearest occupied center by exhaustive search, written
// here rather than reusing brute_force_edt.
double nearest_occupied(const OccupancyGrid& g, int i, int j, int k) {
  const auto& L = g.lattice;
  double best = INFINITY;
  for (int c = 0; c < L.nz; ++c)
    for (int b = 0; b < L.ny; ++b)
      for (int a = 0; a < L.nx; ++a)
        if (g.at(a, b, c)) {
          const double d2 = double(a - i) * (a - i) + double(b - j) * (b - j) + double(c - k) * (c - k);
          best = std::min(best, std::sqrt(d2) * L.voxel_size);
        }
  return best;
}

void check_against_oracle(const OccupancyGrid& g, const DistanceField& f) {
  const auto& L = g.lattice;
  for (int k = 0; k < L.nz; ++k)
    for (int j = 0; j < L.ny; ++j)
      for (int i = 0; i < L.nx; ++i) {
        const double want = nearest_occupied(g, i, j, k);
        if (std::isinf(want)) {
          CHECK(f.at(i, j, k) == f.free_space_value());
        } else {
          CHECK(std::abs(f.at(i, j, k) - want) <= 1e-9);
        }
      }
}

}  // namespace

TEST_CASE("single voxel and its neighbors") {
  LatticeSpec spec{{0, 0, 0}, 0.1, 5, 5, 5};
  OccupancyGrid g(spec);
  g.set(2, 2, 2);
  const auto f = compute_edt(g);
  CHECK(f.at(2, 2, 2) == 0.0);
  CHECK(f.at(3, 2, 2) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(f.at(2, 1, 2) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(f.at(2, 2, 4) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(f.at(0, 0, 0) == doctest::Approx(std::sqrt(12.0) * 0.1).epsilon(1e-15));
  check_against_oracle(g, f);
}

TEST_CASE("all-free grid holds the diagonal sentinel") {
  LatticeSpec spec{{0, 0, 0}, 0.1, 8, 8, 8};
  const auto f = compute_edt(OccupancyGrid(spec));
  const double diag = std::sqrt(3.0 * 64.0) * 0.1;
  for (double v : f.values()) CHECK(v >= diag - 1e-12);
  CHECK(brute_force_edt(OccupancyGrid(spec)).values() == f.values());
}

TEST_CASE("randomized grids match the exhaustive oracle") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto g = test_support::random_grid(seed, 9, 0.02 + 0.1 * seed);
    check_against_oracle(g, compute_edt(g));
  }
}

TEST_CASE("anisotropic lattice shape and very sparse grids") {
  LatticeSpec spec{{-1, 2, 0}, 0.05, 13, 3, 7};
  OccupancyGrid g(spec);
  g.set(12, 0, 6);
  g.set(0, 2, 0);
  check_against_oracle(g, compute_edt(g));
  LatticeSpec line{{0, 0, 0}, 0.1, 40, 1, 1};
  OccupancyGrid h(line);
  h.set(17, 0, 0);
  check_against_oracle(h, compute_edt(h));
}

TEST_CASE("field invariants: zero on occupied, 1-Lipschitz, monotone, mirror symmetric") {
  auto g = test_support::random_grid(42, 12, 0.08);
  const auto f = compute_edt(g);
  const auto& L = g.lattice;
  for (int k = 0; k < L.nz; ++k)
    for (int j = 0; j < L.ny; ++j)
      for (int i = 0; i < L.nx; ++i) {
        const double v = f.at(i, j, k);
        CHECK(v >= 0.0);
        if (g.at(i, j, k)) CHECK(v == 0.0);
        if (i + 1 < L.nx) CHECK(std::abs(v - f.at(i + 1, j, k)) <= L.voxel_size + 1e-12);
        if (j + 1 < L.ny) CHECK(std::abs(v - f.at(i, j + 1, k)) <= L.voxel_size + 1e-12);
        if (k + 1 < L.nz) CHECK(std::abs(v - f.at(i, j, k + 1)) <= L.voxel_size + 1e-12);
      }

  auto g2 = g;
  g2.set(5, 5, 5);
  g2.set(0, 11, 3);
  const auto f2 = compute_edt(g2);
  for (std::size_t i = 0; i < f.values().size(); ++i) CHECK(f2.values()[i] <= f.values()[i]);

  for (int axis = 0; axis < 3; ++axis) {
    OccupancyGrid m(L);
    for (int k = 0; k < L.nz; ++k)
      for (int j = 0; j < L.ny; ++j)
        for (int i = 0; i < L.nx; ++i) {
          const int a = axis == 0 ? L.nx - 1 - i : i;
          const int b = axis == 1 ? L.ny - 1 - j : j;
          const int c = axis == 2 ? L.nz - 1 - k : k;
          m.set(a, b, c, g.at(i, j, k));
        }
    const auto fm = compute_edt(m);
    for (int k = 0; k < L.nz; ++k)
      for (int j = 0; j < L.ny; ++j)
        for (int i = 0; i < L.nx; ++i) {
          const int a = axis == 0 ? L.nx - 1 - i : i;
          const int b = axis == 1 ? L.ny - 1 - j : j;
          const int c = axis == 2 ? L.nz - 1 - k : k;
          CHECK(fm.at(a, b, c) == f.at(i, j, k));
        }
  }
}

TEST_CASE("brute force is the identity on single-voxel grids") {
  LatticeSpec spec{{0, 0, 0}, 0.3, 1, 1, 1};
  OccupancyGrid g(spec);
  g.set(0, 0, 0);
  CHECK(brute_force_edt(g).at(0, 0, 0) == 0.0);
  CHECK(compute_edt(g).at(0, 0, 0) == 0.0);
}

TEST_CASE("trilinear query") {
  auto g = test_support::random_grid(3, 10, 0.1);
  const auto f = compute_edt(g);
  const auto& L = g.lattice;

  SUBCASE("voxel centers return stored values") {
    for (int k = 0; k < L.nz; ++k)
      for (int j = 0; j < L.ny; ++j)
        for (int i = 0; i < L.nx; ++i) CHECK(f.query(L.voxel_center(i, j, k)) == doctest::Approx(f.at(i, j, k)).epsilon(1e-12));
  }
  SUBCASE("midpoints average their neighbors") {
    for (int i = 0; i + 1 < L.nx; ++i) {
      const Vec3 a = L.voxel_center(i, 4, 6), b = L.voxel_center(i + 1, 4, 6);
      const double want = 0.5 * (f.at(i, 4, 6) + f.at(i + 1, 4, 6));
      CHECK(f.query((a + b) * 0.5) == doctest::Approx(want).epsilon(1e-12));
    }
  }
  SUBCASE("random queries stay within the adjacent spread of the nearest voxel") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double vs = L.voxel_size;
    for (int q = 0; q < 1000; ++q) {
      const Vec3 p{L.origin.x + vs * (0.5 + u(rng) * (L.nx - 1)), L.origin.y + vs * (0.5 + u(rng) * (L.ny - 1)),
                   L.origin.z + vs * (0.5 + u(rng) * (L.nz - 1))};
      const int i0 = std::clamp(int(std::floor((p.x - L.origin.x) / vs - 0.5)), 0, L.nx - 2);
      const int j0 = std::clamp(int(std::floor((p.y - L.origin.y) / vs - 0.5)), 0, L.ny - 2);
      const int k0 = std::clamp(int(std::floor((p.z - L.origin.z) / vs - 0.5)), 0, L.nz - 2);
      double lo = INFINITY, hi = -INFINITY;
      for (int c = 0; c < 2; ++c)
        for (int b = 0; b < 2; ++b)
          for (int a = 0; a < 2; ++a) {
            lo = std::min(lo, f.at(i0 + a, j0 + b, k0 + c));
            hi = std::max(hi, f.at(i0 + a, j0 + b, k0 + c));
          }
      const int ni = std::clamp(int(std::floor((p.x - L.origin.x) / vs)), 0, L.nx - 1);
      const int nj = std::clamp(int(std::floor((p.y - L.origin.y) / vs)), 0, L.ny - 1);
      const int nk = std::clamp(int(std::floor((p.z - L.origin.z) / vs)), 0, L.nz - 1);
      const double v = query_distance(f, p);
      CHECK(v >= lo - 1e-12);
      CHECK(v <= hi + 1e-12);
      CHECK(std::abs(v - f.at(ni, nj, nk)) <= hi - lo + 1e-12);
    }
  }
  SUBCASE("points outside are clamped onto the boundary") {
    const Vec3 inside = L.voxel_center(0, 3, 3);
    CHECK(f.query({inside.x - 5.0, inside.y, inside.z}) == doctest::Approx(f.at(0, 3, 3)).epsilon(1e-12));
    const Vec3 corner = L.voxel_center(L.nx - 1, L.ny - 1, L.nz - 1);
    CHECK(f.query(corner + Vec3{1, 1, 1}) == doctest::Approx(f.at(L.nx - 1, L.ny - 1, L.nz - 1)).epsilon(1e-12));
  }
}
