// NEON variants of the marking kernels (aarch64). Four 32-bit lanes per
// iteration, scalar handling for the tail.

#include "iic/simd.hpp"

#if defined(IIC_HAVE_NEON)

#include <arm_neon.h>

namespace iic::simd::neon {

bool all_ge(const Token* a, const Token* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    uint32x4_t ge = vcgeq_u32(vld1q_u32(a + i), vld1q_u32(b + i));
    if (vminvq_u32(ge) == 0) return false;
  }
  return scalar::all_ge(a + i, b + i, n - i);
}

void max_u32(const Token* a, const Token* b, Token* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    vst1q_u32(out + i, vmaxq_u32(vld1q_u32(a + i), vld1q_u32(b + i)));
  }
  scalar::max_u32(a + i, b + i, out + i, n - i);
}

bool sub_max_u32(const Token* a, const TokenDelta* d, const Token* g, Token* out,
                 std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    uint32x4_t va = vld1q_u32(a + i);
    int32x4_t vd = vld1q_s32(d + i);
    uint32x4_t vg = vld1q_u32(g + i);

    // Wrapping a - d; classify lanes by the sign of d to recover the exact value.
    uint32x4_t x = vsubq_u32(va, vreinterpretq_u32_s32(vd));
    uint32x4_t dneg = vcltq_s32(vd, vdupq_n_s32(0));
    uint32x4_t dpos = vcgtq_s32(vd, vdupq_n_s32(0));

    uint32x4_t ovf = vandq_u32(dneg, vcltq_u32(x, va));
    if (vmaxvq_u32(ovf) != 0) return false;

    uint32x4_t went_neg = vandq_u32(dpos, vcltq_u32(va, vreinterpretq_u32_s32(vd)));
    uint32x4_t res = vmaxq_u32(x, vg);
    res = vbslq_u32(went_neg, vg, res);
    vst1q_u32(out + i, res);
  }
  return scalar::sub_max_u32(a + i, d + i, g + i, out + i, n - i);
}

}  // namespace iic::simd::neon

#endif  // IIC_HAVE_NEON
