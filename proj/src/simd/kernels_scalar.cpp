#include "monotraj/simd/kernels.hpp"

namespace monotraj::simd {
namespace {

inline double min_x86(double a, double b) { return a < b ? a : b; }
inline double max_x86(double a, double b) { return a > b ? a : b; }

void ray_box_nearest_scalar(const RayBundle& rays, const SlabBox* boxes, std::size_t box_count, double t_max,
                            double* t_out) {
  for (std::size_t i = 0; i < rays.count; ++i) {
    const double inv[3] = {1.0 / rays.dx[i], 1.0 / rays.dy[i], 1.0 / rays.dz[i]};
    double best = t_max;
    for (std::size_t b = 0; b < box_count; ++b) {
      double t_near = 0.0;
      double t_far = 0.0;
      for (int a = 0; a < 3; ++a) {
        const double t1 = (boxes[b].lo[a] - rays.origin[a]) * inv[a];
        const double t2 = (boxes[b].hi[a] - rays.origin[a]) * inv[a];
        const double lo = min_x86(t1, t2);
        const double hi = max_x86(t1, t2);
        t_near = a == 0 ? lo : max_x86(t_near, lo);
        t_far = a == 0 ? hi : min_x86(t_far, hi);
      }
      if (t_near <= t_far && t_near > 0.0 && t_near < best) best = t_near;
    }
    t_out[i] = best;
  }
}

void lateral_offsets_scalar(const double* z, std::size_t n, double u0, double c, double f, double* out) {
  for (std::size_t u = 0; u < n; ++u) {
    const double uu = u0 + static_cast<double>(u);
    out[u] = ((uu - c) * z[u]) / f;
  }
}

double shortfall_sq_sum_scalar(const double* d, std::size_t n, double d_max) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = max_x86(d_max - d[i], 0.0);
    acc += s * s;
  }
  return acc;
}

DepthLossSums depth_loss_sums_scalar(const double* d, std::size_t width, std::size_t height) {
  DepthLossSums out;
  for (std::size_t v = 0; v < height; ++v) {
    const double* row = d + v * width;
    const double* below = v + 1 < height ? row + width : nullptr;
    for (std::size_t u = 0; u < width; ++u) {
      const double x = row[u];
      out.sum += x;
      out.sum_sq += x * x;
      const double gx = u + 1 < width ? row[u + 1] - x : 0.0;
      const double gy = below ? below[u] - x : 0.0;
      out.grad_sq += gx * gx + gy * gy;
    }
  }
  return out;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels table{Backend::Scalar, ray_box_nearest_scalar, lateral_offsets_scalar,
                             shortfall_sq_sum_scalar, depth_loss_sums_scalar};
  return table;
}

}  // namespace monotraj::simd
