// AVX2 + BMI2 variants of the counting kernels. This translation unit is the
// only one compiled with -mavx2; execution is gated by the runtime dispatch
// in kernels.cpp.

#include "pclabel/kernels.hpp"

#if PCLABEL_HAVE_AVX2

#include <immintrin.h>

namespace pclabel::kernels {

namespace {

// Eight 32-bit lanes per iteration. The comparison result is compressed to
// 8 movemask bits and expanded to one byte per lane with pdep so it can be
// ANDed into the byte mask in a single 64-bit store.
void eq_mask_and_avx2(const std::int32_t* codes, std::size_t n,
                      std::int32_t target, std::uint8_t* mask) {
  const __m256i want = _mm256_set1_epi32(target);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(codes + i));
    const __m256i eq = _mm256_cmpeq_epi32(v, want);
    const auto bits = static_cast<std::uint64_t>(
        _mm256_movemask_ps(_mm256_castsi256_ps(eq)));
    const std::uint64_t bytes = _pdep_u64(bits, 0x0101010101010101ULL);
    std::uint64_t cur;
    __builtin_memcpy(&cur, mask + i, 8);
    cur &= bytes;
    __builtin_memcpy(mask + i, &cur, 8);
  }
  for (; i < n; ++i) {
    mask[i] = static_cast<std::uint8_t>(mask[i] & (codes[i] == target ? 1u : 0u));
  }
}

std::int64_t masked_weight_sum_avx2(const std::uint8_t* mask,
                                    const std::int64_t* weights,
                                    std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    std::uint32_t four;
    __builtin_memcpy(&four, mask + i, 4);
    const __m256i m8 =
        _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(static_cast<int>(four)));
    // 0/1 bytes widen to 0/1 qwords; compare against zero to build the blend.
    const __m256i keep = _mm256_cmpgt_epi64(m8, _mm256_setzero_si256());
    const __m256i w =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(weights + i));
    acc = _mm256_add_epi64(acc, _mm256_and_si256(w, keep));
  }
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::int64_t sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) {
    if (mask[i]) sum += weights[i];
  }
  return sum;
}

// 64x32 multiply from two 32x32 halves; radix fits in 32 bits.
inline __m256i mul_u64_u32(__m256i k, __m256i radix) {
  const __m256i lo = _mm256_mul_epu32(k, radix);
  const __m256i hi = _mm256_mul_epu32(_mm256_srli_epi64(k, 32), radix);
  return _mm256_add_epi64(lo, _mm256_slli_epi64(hi, 32));
}

void pack_mixed_radix_avx2(std::uint64_t* keys, const std::int32_t* codes,
                           std::size_t n, std::uint64_t radix) {
  const __m256i r = _mm256_set1_epi64x(static_cast<long long>(radix));
  const __m256i one = _mm256_set1_epi64x(1);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i k =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(keys + i));
    const __m256i c = _mm256_cvtepi32_epi64(
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(codes + i)));
    const __m256i digit = _mm256_add_epi64(c, one);
    const __m256i packed = _mm256_add_epi64(mul_u64_u32(k, r), digit);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(keys + i), packed);
  }
  for (; i < n; ++i) {
    keys[i] = keys[i] * radix +
              static_cast<std::uint64_t>(static_cast<std::int64_t>(codes[i]) + 1);
  }
}

}  // namespace

const Backend& avx2_backend() {
  static const Backend backend{
      "avx2",
      eq_mask_and_avx2,
      masked_weight_sum_avx2,
      pack_mixed_radix_avx2,
  };
  return backend;
}

}  // namespace pclabel::kernels

#endif  // PCLABEL_HAVE_AVX2
