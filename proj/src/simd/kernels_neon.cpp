// AArch64 Advanced SIMD variants (two double lanes).
#include <arm_neon.h>

#include "monotraj/simd/kernels.hpp"

namespace monotraj::simd::detail {
namespace {

// x86-style min/max: second operand on ties and NaN, matching the scalar
// reference instead of the NaN-propagating vminq/vmaxq.
inline float64x2_t min_x86(float64x2_t a, float64x2_t b) { return vbslq_f64(vcltq_f64(a, b), a, b); }
inline float64x2_t max_x86(float64x2_t a, float64x2_t b) { return vbslq_f64(vcgtq_f64(a, b), a, b); }

void ray_box_nearest_neon(const RayBundle& rays, const SlabBox* boxes, std::size_t box_count, double t_max,
                          double* t_out) {
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t ox = vdupq_n_f64(rays.origin[0]);
  const float64x2_t oy = vdupq_n_f64(rays.origin[1]);
  const float64x2_t oz = vdupq_n_f64(rays.origin[2]);
  std::size_t i = 0;
  for (; i + 2 <= rays.count; i += 2) {
    const float64x2_t inv_x = vdivq_f64(one, vld1q_f64(rays.dx + i));
    const float64x2_t inv_y = vdivq_f64(one, vld1q_f64(rays.dy + i));
    const float64x2_t inv_z = vdivq_f64(one, vld1q_f64(rays.dz + i));
    float64x2_t best = vdupq_n_f64(t_max);
    for (std::size_t b = 0; b < box_count; ++b) {
      const SlabBox& box = boxes[b];
      const float64x2_t x1 = vmulq_f64(vsubq_f64(vdupq_n_f64(box.lo[0]), ox), inv_x);
      const float64x2_t x2 = vmulq_f64(vsubq_f64(vdupq_n_f64(box.hi[0]), ox), inv_x);
      const float64x2_t y1 = vmulq_f64(vsubq_f64(vdupq_n_f64(box.lo[1]), oy), inv_y);
      const float64x2_t y2 = vmulq_f64(vsubq_f64(vdupq_n_f64(box.hi[1]), oy), inv_y);
      const float64x2_t z1 = vmulq_f64(vsubq_f64(vdupq_n_f64(box.lo[2]), oz), inv_z);
      const float64x2_t z2 = vmulq_f64(vsubq_f64(vdupq_n_f64(box.hi[2]), oz), inv_z);
      float64x2_t t_near = min_x86(x1, x2);
      float64x2_t t_far = max_x86(x1, x2);
      t_near = max_x86(t_near, min_x86(y1, y2));
      t_far = min_x86(t_far, max_x86(y1, y2));
      t_near = max_x86(t_near, min_x86(z1, z2));
      t_far = min_x86(t_far, max_x86(z1, z2));
      const uint64x2_t hit =
          vandq_u64(vandq_u64(vcleq_f64(t_near, t_far), vcgtq_f64(t_near, zero)), vcltq_f64(t_near, best));
      best = vbslq_f64(hit, t_near, best);
    }
    vst1q_f64(t_out + i, best);
  }
  if (i < rays.count) {
    RayBundle tail{{rays.origin[0], rays.origin[1], rays.origin[2]}, rays.dx + i, rays.dy + i, rays.dz + i,
                   rays.count - i};
    scalar_kernels().ray_box_nearest(tail, boxes, box_count, t_max, t_out + i);
  }
}

void lateral_offsets_neon(const double* z, std::size_t n, double u0, double c, double f, double* out) {
  const float64x2_t vc = vdupq_n_f64(c);
  const float64x2_t vf = vdupq_n_f64(f);
  const float64x2_t vu0 = vdupq_n_f64(u0);
  std::size_t u = 0;
  for (; u + 2 <= n; u += 2) {
    const double base = static_cast<double>(u);
    const double idx_lanes[2] = {base, base + 1.0};
    const float64x2_t uu = vaddq_f64(vu0, vld1q_f64(idx_lanes));
    const float64x2_t num = vmulq_f64(vsubq_f64(uu, vc), vld1q_f64(z + u));
    vst1q_f64(out + u, vdivq_f64(num, vf));
  }
  if (u < n) scalar_kernels().lateral_offsets(z + u, n - u, u0 + static_cast<double>(u), c, f, out + u);
}

double shortfall_sq_sum_neon(const double* d, std::size_t n, double d_max) {
  const float64x2_t vmax = vdupq_n_f64(d_max);
  const float64x2_t zero = vdupq_n_f64(0.0);
  float64x2_t acc = zero;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t s = max_x86(vsubq_f64(vmax, vld1q_f64(d + i)), zero);
    acc = vaddq_f64(acc, vmulq_f64(s, s));
  }
  double total = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  if (i < n) total += scalar_kernels().shortfall_sq_sum(d + i, n - i, d_max);
  return total;
}

DepthLossSums depth_loss_sums_neon(const double* d, std::size_t width, std::size_t height) {
  float64x2_t sum = vdupq_n_f64(0.0);
  float64x2_t sum_sq = sum;
  float64x2_t grad_sq = sum;
  DepthLossSums tail;
  for (std::size_t v = 0; v < height; ++v) {
    const double* row = d + v * width;
    const bool has_below = v + 1 < height;
    std::size_t u = 0;
    for (; u + 2 < width; u += 2) {
      const float64x2_t x = vld1q_f64(row + u);
      const float64x2_t gx = vsubq_f64(vld1q_f64(row + u + 1), x);
      float64x2_t g2 = vmulq_f64(gx, gx);
      if (has_below) {
        const float64x2_t gy = vsubq_f64(vld1q_f64(row + width + u), x);
        g2 = vaddq_f64(g2, vmulq_f64(gy, gy));
      }
      sum = vaddq_f64(sum, x);
      sum_sq = vaddq_f64(sum_sq, vmulq_f64(x, x));
      grad_sq = vaddq_f64(grad_sq, g2);
    }
    for (; u < width; ++u) {
      const double x = row[u];
      tail.sum += x;
      tail.sum_sq += x * x;
      const double gx = u + 1 < width ? row[u + 1] - x : 0.0;
      const double gy = has_below ? row[width + u] - x : 0.0;
      tail.grad_sq += gx * gx + gy * gy;
    }
  }
  auto lanes = [](float64x2_t v) { return vgetq_lane_f64(v, 0) + vgetq_lane_f64(v, 1); };
  return {lanes(sum) + tail.sum, lanes(sum_sq) + tail.sum_sq, lanes(grad_sq) + tail.grad_sq};
}

}  // namespace

const Kernels& neon_kernels() {
  static const Kernels table{Backend::Neon, ray_box_nearest_neon, lateral_offsets_neon, shortfall_sq_sum_neon,
                             depth_loss_sums_neon};
  return table;
}

}  // namespace monotraj::simd::detail
