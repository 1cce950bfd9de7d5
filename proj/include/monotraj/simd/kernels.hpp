#pragma once

// Data-parallel inner loops behind the pipeline. Each kernel has a scalar
// reference and optional vector variants; one table is picked at startup
// from the CPU features (override with MONOTRAJ_SIMD=scalar|avx2|neon).
//
// Element-wise kernels (ray_box_nearest, lateral_offsets) perform the same
// IEEE operations per lane as the scalar loop and must match it bit for
// bit. Reductions may differ in summation order only.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace monotraj::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);

// Slab-form box: per-axis min and max.
struct SlabBox {
  double lo[3];
  double hi[3];
};

// Ray bundle sharing one origin; directions in structure-of-arrays layout.
struct RayBundle {
  double origin[3];
  const double* dx;
  const double* dy;
  const double* dz;
  std::size_t count;
};

struct DepthLossSums {
  double sum = 0.0;     // sum d
  double sum_sq = 0.0;  // sum d^2
  double grad_sq = 0.0; // sum (dx^2 + dy^2), forward differences, zero on last row/column
};

struct Kernels {
  Backend backend;

  // t_out[i] = smallest ray parameter t in (0, t_max] at which ray i enters a
  // box, or t_max when there is none. min/max follow the x86 convention
  // (a < b ? a : b) so NaNs resolve identically on every backend.
  void (*ray_box_nearest)(const RayBundle& rays, const SlabBox* boxes, std::size_t box_count, double t_max,
                          double* t_out);

  // out[u] = ((u0 + u - c) * z[u]) / f for u in [0, n): the lateral camera
  // coordinate of pixels u0.. of one image row.
  void (*lateral_offsets)(const double* z, std::size_t n, double u0, double c, double f, double* out);

  // sum over i of (max(0, d_max - d[i]))^2.
  double (*shortfall_sq_sum)(const double* d, std::size_t n, double d_max);

  DepthLossSums (*depth_loss_sums)(const double* d, std::size_t width, std::size_t height);
};

const Kernels& scalar_kernels();
// Kernels compiled into this build whose CPU features are present.
std::vector<Backend> available_backends();
const Kernels& kernels_for(Backend b);
// Table chosen once per process.
const Kernels& active();

namespace detail {
#if defined(MONOTRAJ_BUILD_AVX2)
const Kernels& avx2_kernels();
#endif
#if defined(MONOTRAJ_BUILD_NEON)
const Kernels& neon_kernels();
#endif
}  // namespace detail

}  // namespace monotraj::simd
