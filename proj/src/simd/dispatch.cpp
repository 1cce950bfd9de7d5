#include <cstdlib>
#include <string>

#include "monotraj/simd/kernels.hpp"

namespace monotraj::simd {

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::Scalar};
#if defined(MONOTRAJ_BUILD_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) out.push_back(Backend::Avx2);
#endif
#if defined(MONOTRAJ_BUILD_NEON)
  out.push_back(Backend::Neon);
#endif
  return out;
}

const Kernels& kernels_for(Backend b) {
  switch (b) {
#if defined(MONOTRAJ_BUILD_AVX2)
    case Backend::Avx2: return detail::avx2_kernels();
#endif
#if defined(MONOTRAJ_BUILD_NEON)
    case Backend::Neon: return detail::neon_kernels();
#endif
    default: return scalar_kernels();
  }
}

namespace {

const Kernels& select() {
  const auto backends = available_backends();
  if (const char* env = std::getenv("MONOTRAJ_SIMD")) {
    const std::string wanted(env);
    for (Backend b : backends) {
      if (backend_name(b) == wanted) return kernels_for(b);
    }
    return scalar_kernels();
  }
  return kernels_for(backends.back());
}

}  // namespace

const Kernels& active() {
  static const Kernels& chosen = select();
  return chosen;
}

}  // namespace monotraj::simd
