// AVX2 variants of the marking kernels; compiled with -mavx2 and only
// entered after a runtime cpuid check. Eight 32-bit lanes per iteration,
// scalar handling for the tail.

#include "iic/simd.hpp"

#if defined(IIC_HAVE_AVX2)

#include <immintrin.h>

namespace iic::simd::avx2 {

namespace {

// Lanes where x >= y as unsigned 32-bit: max(x, y) == x.
inline __m256i cmpge_epu32(__m256i x, __m256i y) {
  return _mm256_cmpeq_epi32(_mm256_max_epu32(x, y), x);
}

}  // namespace

bool all_ge(const Token* a, const Token* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i ge = cmpge_epu32(va, vb);
    if (_mm256_movemask_epi8(ge) != -1) return false;
  }
  return scalar::all_ge(a + i, b + i, n - i);
}

void max_u32(const Token* a, const Token* b, Token* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_max_epu32(va, vb));
  }
  scalar::max_u32(a + i, b + i, out + i, n - i);
}

bool sub_max_u32(const Token* a, const TokenDelta* d, const Token* g, Token* out,
                 std::size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vd = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(d + i));
    __m256i vg = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(g + i));

    // Wrapping a - d; classify lanes by the sign of d to recover the exact value.
    __m256i x = _mm256_sub_epi32(va, vd);
    __m256i dneg = _mm256_cmpgt_epi32(zero, vd);
    __m256i dpos = _mm256_cmpgt_epi32(vd, zero);

    // d < 0 adds |d|; the true value exceeded the range iff the wrapped
    // result dropped below a.
    __m256i ovf = _mm256_andnot_si256(cmpge_epu32(x, va), dneg);
    if (!_mm256_testz_si256(ovf, ovf)) return false;

    // d > 0 subtracts; a < d means the true value is negative, where the
    // guard (nonnegative) wins the max.
    __m256i went_neg = _mm256_andnot_si256(cmpge_epu32(va, vd), dpos);
    __m256i res = _mm256_max_epu32(x, vg);
    res = _mm256_blendv_epi8(res, vg, went_neg);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), res);
  }
  return scalar::sub_max_u32(a + i, d + i, g + i, out + i, n - i);
}

}  // namespace iic::simd::avx2

#endif  // IIC_HAVE_AVX2
