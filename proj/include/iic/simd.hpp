#pragma once

#include <cstddef>
#include <cstdint>

#include "iic/kernel.hpp"

// Vector kernels behind the marking arithmetic. Each kernel has a scalar
// reference implementation plus SIMD variants; the dispatched entry points
// pick a backend once at startup (overridable with IIC_KERNELS=scalar|avx2|neon).
// All variants are bit-identical in results, including the overflow flag.

namespace iic::simd {

enum class Backend { scalar, avx2, neon };

Backend active_backend();
const char* backend_name(Backend b);

/// Selects a backend explicitly. Returns false (and leaves the current
/// selection untouched) if the backend is not available on this machine.
bool set_backend(Backend b);

/// all_ge: a[i] >= b[i] for all i.
bool all_ge(const Token* a, const Token* b, std::size_t n);

/// max_u32: out[i] = max(a[i], b[i]).
void max_u32(const Token* a, const Token* b, Token* out, std::size_t n);

/// sub_max_u32: out[i] = max(a[i] - d[i], g[i]) in exact integer arithmetic
/// (g[i] >= 0 absorbs negative differences). Returns false without completing
/// the output if some a[i] - d[i] exceeds the Token range.
bool sub_max_u32(const Token* a, const TokenDelta* d, const Token* g, Token* out,
                 std::size_t n);

namespace scalar {
bool all_ge(const Token* a, const Token* b, std::size_t n);
void max_u32(const Token* a, const Token* b, Token* out, std::size_t n);
bool sub_max_u32(const Token* a, const TokenDelta* d, const Token* g, Token* out,
                 std::size_t n);
}  // namespace scalar

#if defined(IIC_HAVE_AVX2)
namespace avx2 {
bool all_ge(const Token* a, const Token* b, std::size_t n);
void max_u32(const Token* a, const Token* b, Token* out, std::size_t n);
bool sub_max_u32(const Token* a, const TokenDelta* d, const Token* g, Token* out,
                 std::size_t n);
}  // namespace avx2
#endif

#if defined(IIC_HAVE_NEON)
namespace neon {
bool all_ge(const Token* a, const Token* b, std::size_t n);
void max_u32(const Token* a, const Token* b, Token* out, std::size_t n);
bool sub_max_u32(const Token* a, const TokenDelta* d, const Token* g, Token* out,
                 std::size_t n);
}  // namespace neon
#endif

}  // namespace iic::simd
