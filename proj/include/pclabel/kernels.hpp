#pragma once

#include <cstddef>
#include <cstdint>

namespace pclabel::kernels {

// Row-parallel primitives behind pattern counting and group-by key packing.
// Every entry point has a scalar reference implementation; on x86-64 with
// AVX2 and BMI2 a vectorized variant is selected at runtime. Both variants
// produce bit-identical results and are equivalence-tested against each
// other on random inputs.
struct Backend {
  const char* name;

  // mask[i] &= (codes[i] == target); mask entries are 0 or 1.
  void (*eq_mask_and)(const std::int32_t* codes, std::size_t n,
                      std::int32_t target, std::uint8_t* mask);

  // Sum of weights[i] over positions with mask[i] != 0.
  std::int64_t (*masked_weight_sum)(const std::uint8_t* mask,
                                    const std::int64_t* weights,
                                    std::size_t n);

  // keys[i] = keys[i] * radix + (codes[i] + 1).
  // Missing cells (code -1) map to digit 0; radix must be domain size + 1
  // and fit in 32 bits.
  void (*pack_mixed_radix)(std::uint64_t* keys, const std::int32_t* codes,
                           std::size_t n, std::uint64_t radix);
};

const Backend& scalar_backend();

bool avx2_available();

// Dispatched backend. PCLABEL_SIMD=scalar forces the reference path;
// anything else picks AVX2 when the CPU supports it.
const Backend& active_backend();

}  // namespace pclabel::kernels
