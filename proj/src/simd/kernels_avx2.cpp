// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "monotraj/simd/kernels.hpp"

namespace monotraj::simd::detail {
namespace {

void ray_box_nearest_avx2(const RayBundle& rays, const SlabBox* boxes, std::size_t box_count, double t_max,
                          double* t_out) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d ox = _mm256_set1_pd(rays.origin[0]);
  const __m256d oy = _mm256_set1_pd(rays.origin[1]);
  const __m256d oz = _mm256_set1_pd(rays.origin[2]);
  std::size_t i = 0;
  for (; i + 4 <= rays.count; i += 4) {
    const __m256d inv_x = _mm256_div_pd(one, _mm256_loadu_pd(rays.dx + i));
    const __m256d inv_y = _mm256_div_pd(one, _mm256_loadu_pd(rays.dy + i));
    const __m256d inv_z = _mm256_div_pd(one, _mm256_loadu_pd(rays.dz + i));
    __m256d best = _mm256_set1_pd(t_max);
    for (std::size_t b = 0; b < box_count; ++b) {
      const SlabBox& box = boxes[b];
      const __m256d x1 = _mm256_mul_pd(_mm256_sub_pd(_mm256_set1_pd(box.lo[0]), ox), inv_x);
      const __m256d x2 = _mm256_mul_pd(_mm256_sub_pd(_mm256_set1_pd(box.hi[0]), ox), inv_x);
      const __m256d y1 = _mm256_mul_pd(_mm256_sub_pd(_mm256_set1_pd(box.lo[1]), oy), inv_y);
      const __m256d y2 = _mm256_mul_pd(_mm256_sub_pd(_mm256_set1_pd(box.hi[1]), oy), inv_y);
      const __m256d z1 = _mm256_mul_pd(_mm256_sub_pd(_mm256_set1_pd(box.lo[2]), oz), inv_z);
      const __m256d z2 = _mm256_mul_pd(_mm256_sub_pd(_mm256_set1_pd(box.hi[2]), oz), inv_z);
      __m256d t_near = _mm256_min_pd(x1, x2);
      __m256d t_far = _mm256_max_pd(x1, x2);
      t_near = _mm256_max_pd(t_near, _mm256_min_pd(y1, y2));
      t_far = _mm256_min_pd(t_far, _mm256_max_pd(y1, y2));
      t_near = _mm256_max_pd(t_near, _mm256_min_pd(z1, z2));
      t_far = _mm256_min_pd(t_far, _mm256_max_pd(z1, z2));
      const __m256d hit = _mm256_and_pd(_mm256_and_pd(_mm256_cmp_pd(t_near, t_far, _CMP_LE_OQ),
                                                      _mm256_cmp_pd(t_near, zero, _CMP_GT_OQ)),
                                        _mm256_cmp_pd(t_near, best, _CMP_LT_OQ));
      best = _mm256_blendv_pd(best, t_near, hit);
    }
    _mm256_storeu_pd(t_out + i, best);
  }
  if (i < rays.count) {
    RayBundle tail{{rays.origin[0], rays.origin[1], rays.origin[2]}, rays.dx + i, rays.dy + i, rays.dz + i,
                   rays.count - i};
    scalar_kernels().ray_box_nearest(tail, boxes, box_count, t_max, t_out + i);
  }
}

void lateral_offsets_avx2(const double* z, std::size_t n, double u0, double c, double f, double* out) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vf = _mm256_set1_pd(f);
  const __m256d vu0 = _mm256_set1_pd(u0);
  std::size_t u = 0;
  for (; u + 4 <= n; u += 4) {
    const double base = static_cast<double>(u);
    const __m256d idx = _mm256_set_pd(base + 3.0, base + 2.0, base + 1.0, base);
    const __m256d uu = _mm256_add_pd(vu0, idx);
    const __m256d num = _mm256_mul_pd(_mm256_sub_pd(uu, vc), _mm256_loadu_pd(z + u));
    _mm256_storeu_pd(out + u, _mm256_div_pd(num, vf));
  }
  if (u < n) scalar_kernels().lateral_offsets(z + u, n - u, u0 + static_cast<double>(u), c, f, out + u);
}

double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

double shortfall_sq_sum_avx2(const double* d, std::size_t n, double d_max) {
  const __m256d vmax = _mm256_set1_pd(d_max);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_max_pd(_mm256_sub_pd(vmax, _mm256_loadu_pd(d + i)), zero);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(s, s));
  }
  double total = hsum(acc);
  if (i < n) total += scalar_kernels().shortfall_sq_sum(d + i, n - i, d_max);
  return total;
}

DepthLossSums depth_loss_sums_avx2(const double* d, std::size_t width, std::size_t height) {
  __m256d sum = _mm256_setzero_pd();
  __m256d sum_sq = _mm256_setzero_pd();
  __m256d grad_sq = _mm256_setzero_pd();
  DepthLossSums tail;
  for (std::size_t v = 0; v < height; ++v) {
    const double* row = d + v * width;
    const bool has_below = v + 1 < height;
    // Columns [0, width-1) have a right neighbor; the last column does not.
    std::size_t u = 0;
    for (; u + 4 < width; u += 4) {
      const __m256d x = _mm256_loadu_pd(row + u);
      const __m256d gx = _mm256_sub_pd(_mm256_loadu_pd(row + u + 1), x);
      __m256d g2 = _mm256_mul_pd(gx, gx);
      if (has_below) {
        const __m256d gy = _mm256_sub_pd(_mm256_loadu_pd(row + width + u), x);
        g2 = _mm256_add_pd(g2, _mm256_mul_pd(gy, gy));
      }
      sum = _mm256_add_pd(sum, x);
      sum_sq = _mm256_add_pd(sum_sq, _mm256_mul_pd(x, x));
      grad_sq = _mm256_add_pd(grad_sq, g2);
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
  return {hsum(sum) + tail.sum, hsum(sum_sq) + tail.sum_sq, hsum(grad_sq) + tail.grad_sq};
}

}  // namespace

const Kernels& avx2_kernels() {
  static const Kernels table{Backend::Avx2, ray_box_nearest_avx2, lateral_offsets_avx2, shortfall_sq_sum_avx2,
                             depth_loss_sums_avx2};
  return table;
}

}  // namespace monotraj::simd::detail
