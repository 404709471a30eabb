#include "pclabel/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace pclabel::kernels {

namespace {

void eq_mask_and_scalar(const std::int32_t* codes, std::size_t n,
                        std::int32_t target, std::uint8_t* mask) {
  for (std::size_t i = 0; i < n; ++i) {
    mask[i] = static_cast<std::uint8_t>(mask[i] & (codes[i] == target ? 1u : 0u));
  }
}

std::int64_t masked_weight_sum_scalar(const std::uint8_t* mask,
                                      const std::int64_t* weights,
                                      std::size_t n) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i]) sum += weights[i];
  }
  return sum;
}

void pack_mixed_radix_scalar(std::uint64_t* keys, const std::int32_t* codes,
                             std::size_t n, std::uint64_t radix) {
  for (std::size_t i = 0; i < n; ++i) {
    keys[i] = keys[i] * radix +
              static_cast<std::uint64_t>(static_cast<std::int64_t>(codes[i]) + 1);
  }
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend backend{
      "scalar",
      eq_mask_and_scalar,
      masked_weight_sum_scalar,
      pack_mixed_radix_scalar,
  };
  return backend;
}

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("bmi2");
#else
  return false;
#endif
}

#if PCLABEL_HAVE_AVX2
const Backend& avx2_backend();
#endif

const Backend& active_backend() {
  static const Backend* selected = [] {
    const char* env = std::getenv("PCLABEL_SIMD");
    if (env && std::string_view(env) == "scalar") return &scalar_backend();
#if PCLABEL_HAVE_AVX2
    if (avx2_available()) return &avx2_backend();
#endif
    return &scalar_backend();
  }();
  return *selected;
}

}  // namespace pclabel::kernels
