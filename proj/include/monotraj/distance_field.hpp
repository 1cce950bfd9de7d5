#pragma once

#include <filesystem>
#include <vector>

#include "monotraj/geometry.hpp"

namespace monotraj {

// Unsigned Euclidean distance (meters) from every voxel center to the nearest
// occupied voxel center. Voxels of an all-free grid hold free_space_value().
class DistanceField {
 public:
  DistanceField(const LatticeSpec& lattice, std::vector<double> dist);

  const LatticeSpec& lattice() const { return lattice_; }
  const std::vector<double>& values() const { return dist_; }
  double at(int i, int j, int k) const { return dist_[lattice_.linear(i, j, k)]; }

  // Lattice diagonal length; the value stored wherever no obstacle exists.
  double free_space_value() const;

  // Trilinear interpolation between the eight surrounding voxel centers.
  // Points beyond the outermost centers are clamped onto the boundary.
  // Each axis is evaluated from the lattice center outward so that
  // reflecting both the query and the field about the lattice center gives
  // bit-identical results.
  double query(const Vec3& p) const;

 private:
  LatticeSpec lattice_;
  std::vector<double> dist_;
};

// Exact separable squared EDT (lower envelope of parabolas, one pass per
// axis) in integer voxel units, scaled to meters at the end.
DistanceField compute_edt(const OccupancyGrid& grid);

// All-pairs reference with the same contract as compute_edt. Quadratic in
// the voxel count; intended for tests.
DistanceField brute_force_edt(const OccupancyGrid& grid);

inline double query_distance(const DistanceField& field, const Vec3& p) { return field.query(p); }

}  // namespace monotraj

namespace monotraj::io {

// Debug dump: ASCII header "EDTF32 nx ny nz voxel_size ox oy oz\n" then
// nx*ny*nz little-endian float32 distances, x fastest.
void write_distance_field(const std::filesystem::path& path, const DistanceField& field);

}  // namespace monotraj::io
