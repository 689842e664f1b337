#include <cstdint>
#include <limits>

#include "iic/simd.hpp"

namespace iic::simd::scalar {

bool all_ge(const Token* a, const Token* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

void max_u32(const Token* a, const Token* b, Token* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a[i] < b[i] ? b[i] : a[i];
  }
}

bool sub_max_u32(const Token* a, const TokenDelta* d, const Token* g, Token* out,
                 std::size_t n) {
  constexpr std::int64_t kMax = std::numeric_limits<Token>::max();
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t v = static_cast<std::int64_t>(a[i]) - d[i];
    if (v > kMax) return false;
    if (v < static_cast<std::int64_t>(g[i])) v = g[i];
    out[i] = static_cast<Token>(v);
  }
  return true;
}

}  // namespace iic::simd::scalar
