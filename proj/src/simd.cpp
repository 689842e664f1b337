#include "iic/simd.hpp"

#include <cstdlib>
#include <cstring>

namespace iic::simd {

namespace {

struct Table {
  bool (*all_ge)(const Token*, const Token*, std::size_t);
  void (*max_u32)(const Token*, const Token*, Token*, std::size_t);
  bool (*sub_max_u32)(const Token*, const TokenDelta*, const Token*, Token*, std::size_t);
  Backend backend;
};

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(IIC_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::neon:
#if defined(IIC_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Table table_for(Backend b) {
  switch (b) {
#if defined(IIC_HAVE_AVX2)
    case Backend::avx2:
      return {avx2::all_ge, avx2::max_u32, avx2::sub_max_u32, Backend::avx2};
#endif
#if defined(IIC_HAVE_NEON)
    case Backend::neon:
      return {neon::all_ge, neon::max_u32, neon::sub_max_u32, Backend::neon};
#endif
    default:
      return {scalar::all_ge, scalar::max_u32, scalar::sub_max_u32, Backend::scalar};
  }
}

Backend pick_backend() {
  if (const char* env = std::getenv("IIC_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && backend_available(Backend::avx2)) return Backend::avx2;
    if (std::strcmp(env, "neon") == 0 && backend_available(Backend::neon)) return Backend::neon;
    // Unknown or unavailable request falls through to autodetection.
  }
  if (backend_available(Backend::avx2)) return Backend::avx2;
  if (backend_available(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

Table& table() {
  static Table t = table_for(pick_backend());
  return t;
}

}  // namespace

Backend active_backend() { return table().backend; }

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "?";
}

bool set_backend(Backend b) {
  if (!backend_available(b)) return false;
  table() = table_for(b);
  return true;
}

bool all_ge(const Token* a, const Token* b, std::size_t n) {
  return table().all_ge(a, b, n);
}

void max_u32(const Token* a, const Token* b, Token* out, std::size_t n) {
  table().max_u32(a, b, out, n);
}

bool sub_max_u32(const Token* a, const TokenDelta* d, const Token* g, Token* out,
                 std::size_t n) {
  return table().sub_max_u32(a, d, g, out, n);
}

}  // namespace iic::simd
