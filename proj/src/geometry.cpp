#include "monotraj/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "monotraj/simd/kernels.hpp"

namespace monotraj {

void CameraIntrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) throw InputError("intrinsics: fx and fy must be positive");
  if (width <= 0 || height <= 0) throw InputError("intrinsics: width and height must be positive");
  if (!(cx >= 0.0 && cx < width) || !(cy >= 0.0 && cy < height)) {
    throw InputError("intrinsics: principal point outside the image");
  }
}

CameraIntrinsics CameraIntrinsics::centered(int width, int height, double focal) {
  return {focal, focal, 0.5 * (width - 1), 0.5 * (height - 1), width, height};
}

DepthImage::DepthImage(int width, int height)
    : width_(width),
      height_(height),
      depth_(static_cast<std::size_t>(std::max(width, 0)) * static_cast<std::size_t>(std::max(height, 0)), 0.0),
      valid_(depth_.size(), 0) {
  if (width <= 0 || height <= 0) throw InputError("depth image: non-positive dimensions");
}

DepthImage::DepthImage(int width, int height, std::vector<double> depth, std::vector<std::uint8_t> valid)
    : width_(width), height_(height), depth_(std::move(depth)), valid_(std::move(valid)) {
  if (width <= 0 || height <= 0) throw InputError("depth image: non-positive dimensions");
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (depth_.size() != n || valid_.size() != n) throw InputError("depth image: array length != width*height");
  for (std::size_t i = 0; i < n; ++i) {
    if (valid_[i] && !(std::isfinite(depth_[i]) && depth_[i] > 0.0)) valid_[i] = 0;
    if (!valid_[i]) depth_[i] = 0.0;
    else valid_[i] = 1;
  }
}

void DepthImage::set(int u, int v, double z) {
  const std::size_t i = index(u, v);
  if (std::isfinite(z) && z > 0.0) {
    depth_[i] = z;
    valid_[i] = 1;
  } else {
    depth_[i] = 0.0;
    valid_[i] = 0;
  }
}

void DepthImage::invalidate(int u, int v) {
  depth_[index(u, v)] = 0.0;
  valid_[index(u, v)] = 0;
}

std::size_t DepthImage::valid_count() const {
  return static_cast<std::size_t>(std::count(valid_.begin(), valid_.end(), std::uint8_t{1}));
}

Vec3 LatticeSpec::center() const {
  return {origin.x + nx * voxel_size * 0.5, origin.y + ny * voxel_size * 0.5, origin.z + nz * voxel_size * 0.5};
}

Vec3 LatticeSpec::voxel_center(int i, int j, int k) const {
  return {origin.x + (i + 0.5) * voxel_size, origin.y + (j + 0.5) * voxel_size, origin.z + (k + 0.5) * voxel_size};
}

LatticeSpec LatticeSpec::covering(const Box3& bounds, double voxel_size) {
  if (!(voxel_size > 0.0)) throw InputError("lattice: voxel_size must be positive");
  if (!bounds.non_degenerate()) throw InputError("lattice: degenerate bounds");
  auto count = [&](double extent) { return std::max(1, static_cast<int>(std::ceil(extent / voxel_size - 1e-9))); };
  LatticeSpec spec;
  spec.origin = bounds.lo;
  spec.voxel_size = voxel_size;
  spec.nx = count(bounds.hi.x - bounds.lo.x);
  spec.ny = count(bounds.hi.y - bounds.lo.y);
  spec.nz = count(bounds.hi.z - bounds.lo.z);
  return spec;
}

void LatticeSpec::validate() const {
  if (!(voxel_size > 0.0)) throw InputError("lattice: voxel_size must be positive");
  if (nx < 1 || ny < 1 || nz < 1) throw InputError("lattice: dims must be >= 1");
}

OccupancyGrid::OccupancyGrid(const LatticeSpec& spec) : lattice(spec) {
  lattice.validate();
  occupied.assign(lattice.voxel_count(), 0);
}

std::size_t OccupancyGrid::occupied_count() const {
  return static_cast<std::size_t>(std::count(occupied.begin(), occupied.end(), std::uint8_t{1}));
}

int axis_index(double s, int n) {
  const double a = std::fabs(s);
  // Offset of the containing voxel from the center, counted outward.
  long outward;
  if (n % 2 == 0) {
    outward = static_cast<long>(std::floor(a));
    const long half = n / 2;
    if (outward >= half) return s >= 0.0 ? n : -1;
    return static_cast<int>(s >= 0.0 ? half + outward : half - 1 - outward);
  }
  outward = static_cast<long>(std::floor(a + 0.5));
  const long half = (n - 1) / 2;
  if (outward > half) return s >= 0.0 ? n : -1;
  return static_cast<int>(s >= 0.0 ? half + outward : half - outward);
}

PointCloud project_depth_to_cloud(const DepthImage& depth, const CameraIntrinsics& k) {
  k.validate();
  if (depth.width() != k.width || depth.height() != k.height) {
    throw InputError("project: depth is " + std::to_string(depth.width()) + "x" + std::to_string(depth.height()) +
                     " but intrinsics are " + std::to_string(k.width) + "x" + std::to_string(k.height));
  }
  const auto& kern = simd::active();
  const auto w = static_cast<std::size_t>(depth.width());
  std::vector<double> lateral(w);
  PointCloud cloud;
  cloud.points.reserve(depth.valid_count());
  for (int v = 0; v < depth.height(); ++v) {
    const double* row = depth.depth().data() + static_cast<std::size_t>(v) * w;
    const std::uint8_t* mask = depth.mask().data() + static_cast<std::size_t>(v) * w;
    kern.lateral_offsets(row, w, 0.0, k.cx, k.fx, lateral.data());
    const double dv = v - k.cy;
    for (std::size_t u = 0; u < w; ++u) {
      if (!mask[u]) continue;
      cloud.points.push_back({lateral[u], (dv * row[u]) / k.fy, row[u]});
    }
  }
  return cloud;
}

DepthImage fill_depth_holes(const DepthImage& depth, double tolerance, int max_sweeps) {
  const int w = depth.width();
  const int h = depth.height();
  if (depth.valid_count() == 0) throw InputError("fill_depth_holes: image has no valid pixels");
  if (depth.valid_count() == depth.size()) return depth;

  std::vector<double> z = depth.depth();
  std::vector<std::uint8_t> known = depth.mask();
  const std::vector<std::uint8_t>& original = depth.mask();
  auto idx = [w](int u, int v) { return static_cast<std::size_t>(v) * static_cast<std::size_t>(w) + u; };

  auto neighbor_mean = [&](int u, int v, const std::vector<double>& src, const std::vector<std::uint8_t>& use,
                           double& mean) {
    double acc = 0.0;
    int count = 0;
    for (int dv = -1; dv <= 1; ++dv) {
      for (int du = -1; du <= 1; ++du) {
        if (du == 0 && dv == 0) continue;
        const int uu = u + du;
        const int vv = v + dv;
        if (uu < 0 || vv < 0 || uu >= w || vv >= h) continue;
        if (!use[idx(uu, vv)]) continue;
        acc += src[idx(uu, vv)];
        ++count;
      }
    }
    if (count == 0) return false;
    mean = acc / count;
    return true;
  };

  // Propagation: each pass fills the hole pixels touching the known region.
  std::vector<std::size_t> front;
  for (;;) {
    front.clear();
    std::vector<double> next = z;
    for (int v = 0; v < h; ++v) {
      for (int u = 0; u < w; ++u) {
        if (known[idx(u, v)]) continue;
        double mean = 0.0;
        if (neighbor_mean(u, v, z, known, mean)) {
          next[idx(u, v)] = mean;
          front.push_back(idx(u, v));
        }
      }
    }
    if (front.empty()) break;
    for (std::size_t i : front) known[i] = 1;
    z.swap(next);
  }

  // Relaxation of the filled pixels; originals stay fixed.
  const std::vector<std::uint8_t> all(z.size(), 1);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    std::vector<double> next = z;
    double largest = 0.0;
    for (int v = 0; v < h; ++v) {
      for (int u = 0; u < w; ++u) {
        if (original[idx(u, v)]) continue;
        double mean = 0.0;
        if (neighbor_mean(u, v, z, all, mean)) {
          largest = std::max(largest, std::fabs(mean - z[idx(u, v)]));
          next[idx(u, v)] = mean;
        }
      }
    }
    z.swap(next);
    if (largest < tolerance) break;
  }

  return DepthImage(w, h, std::move(z), std::vector<std::uint8_t>(depth.size(), 1));
}

OccupancyGrid voxelize(const PointCloud& cloud, const LatticeSpec& lattice) {
  OccupancyGrid grid(lattice);
  const Vec3 c = lattice.center();
  const double vs = lattice.voxel_size;
  for (const Vec3& p : cloud.points) {
    const int i = axis_index((p.x - c.x) / vs, lattice.nx);
    const int j = axis_index((p.y - c.y) / vs, lattice.ny);
    const int k = axis_index((p.z - c.z) / vs, lattice.nz);
    if (i < 0 || j < 0 || k < 0 || i >= lattice.nx || j >= lattice.ny || k >= lattice.nz) continue;
    grid.set(i, j, k);
  }
  return grid;
}

OccupancyGrid voxelize(const PointCloud& cloud, double voxel_size, const Box3& bounds) {
  const LatticeSpec lattice = LatticeSpec::covering(bounds, voxel_size);
  PointCloud inside;
  inside.points.reserve(cloud.points.size());
  for (const Vec3& p : cloud.points) {
    if (p.x >= bounds.lo.x && p.x < bounds.hi.x && p.y >= bounds.lo.y && p.y < bounds.hi.y && p.z >= bounds.lo.z &&
        p.z < bounds.hi.z) {
      inside.points.push_back(p);
    }
  }
  return voxelize(inside, lattice);
}

DepthImage flip_horizontal(const DepthImage& depth) {
  const int w = depth.width();
  const int h = depth.height();
  std::vector<double> z(depth.size());
  std::vector<std::uint8_t> valid(depth.size());
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      const std::size_t dst = static_cast<std::size_t>(v) * w + u;
      const std::size_t src = static_cast<std::size_t>(v) * w + (w - 1 - u);
      z[dst] = depth.depth()[src];
      valid[dst] = depth.mask()[src];
    }
  }
  return DepthImage(w, h, std::move(z), std::move(valid));
}

}  // namespace monotraj
