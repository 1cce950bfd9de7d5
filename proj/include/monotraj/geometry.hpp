#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "monotraj/core.hpp"

namespace monotraj {

// Pinhole intrinsics in pixels. Camera frame is x right, y down, z forward.
struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  // Throws InputError when fx/fy are not positive or the principal point
  // lies outside the image.
  void validate() const;

  // Intrinsics with the principal point on the image center, so that a
  // horizontal image flip maps rays onto their x-mirrored counterparts.
  static CameraIntrinsics centered(int width, int height, double focal);
};

// Row-major range image in meters with a validity mask.
class DepthImage {
 public:
  DepthImage() = default;
  DepthImage(int width, int height);
  // Pixels whose depth is not finite or not positive are marked invalid
  // regardless of `valid`.
  DepthImage(int width, int height, std::vector<double> depth, std::vector<std::uint8_t> valid);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return depth_.size(); }

  double at(int u, int v) const { return depth_[index(u, v)]; }
  bool valid(int u, int v) const { return valid_[index(u, v)] != 0; }
  void set(int u, int v, double z);
  void invalidate(int u, int v);

  const std::vector<double>& depth() const { return depth_; }
  const std::vector<std::uint8_t>& mask() const { return valid_; }
  std::size_t valid_count() const;

  bool operator==(const DepthImage&) const = default;

 private:
  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(u);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> depth_;
  std::vector<std::uint8_t> valid_;
};

struct PointCloud {
  std::vector<Vec3> points;
};

// Lattice of nx*ny*nz cubic voxels; voxel (0,0,0) has its min corner at origin.
struct LatticeSpec {
  Vec3 origin;
  double voxel_size = 0.1;
  int nx = 1;
  int ny = 1;
  int nz = 1;

  std::size_t voxel_count() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz);
  }
  std::size_t linear(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * static_cast<std::size_t>(ny) + static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(nx) +
           static_cast<std::size_t>(i);
  }
  Vec3 center() const;
  Vec3 voxel_center(int i, int j, int k) const;
  // Smallest lattice of the given voxel size covering `bounds`.
  static LatticeSpec covering(const Box3& bounds, double voxel_size);
  void validate() const;
  bool operator==(const LatticeSpec&) const = default;
};

struct OccupancyGrid {
  LatticeSpec lattice;
  std::vector<std::uint8_t> occupied;

  explicit OccupancyGrid(const LatticeSpec& spec);
  bool at(int i, int j, int k) const { return occupied[lattice.linear(i, j, k)] != 0; }
  void set(int i, int j, int k, bool value = true) { occupied[lattice.linear(i, j, k)] = value ? 1 : 0; }
  std::size_t occupied_count() const;
};

// Index of the voxel along one axis holding offset `s` (in voxel units,
// measured from the lattice center) for an axis of n voxels, or -1 / n when
// outside. The rule uses |s| so that it commutes with reflection about the
// lattice center: index(-s) == n - 1 - index(s) for every s.
int axis_index(double s, int n);

PointCloud project_depth_to_cloud(const DepthImage& depth, const CameraIntrinsics& k);

// Fills invalid pixels by diffusing from valid neighbors: a propagation pass
// seeds every hole from the mean of its already-known 3x3 neighbors, then
// Jacobi sweeps relax filled pixels toward their neighborhood mean until the
// largest update falls below `tolerance` (meters) or `max_sweeps` is hit.
// Originally-valid pixels are never modified.
DepthImage fill_depth_holes(const DepthImage& depth, double tolerance = 1e-4, int max_sweeps = 500);

OccupancyGrid voxelize(const PointCloud& cloud, const LatticeSpec& lattice);
OccupancyGrid voxelize(const PointCloud& cloud, double voxel_size, const Box3& bounds);

// Horizontal image flip (column u <-> width-1-u).
DepthImage flip_horizontal(const DepthImage& depth);

}  // namespace monotraj
