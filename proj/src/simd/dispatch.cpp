#include <atomic>
#include <cstdlib>
#include <string_view>

#include "srt/error.hpp"
#include "srt/simd/kernels.hpp"

namespace srt::simd {
namespace {

bool cpu_has_avx2() {
#if SRT_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("SRT_SIMD")) {
    const std::string_view v(env);
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && available(Isa::Avx2)) return Isa::Avx2;
  }
  return available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<int>& selected() {
  static std::atomic<int> isa{static_cast<int>(detect())};
  return isa;
}

}  // namespace

const char* name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2: return cpu_has_avx2();
  }
  return false;
}

const Kernels& kernels(Isa isa) {
  require(available(isa), ErrorCode::Unsupported, "requested SIMD kernels are not available on this CPU");
#if SRT_HAVE_AVX2
  if (isa == Isa::Avx2) return detail::avx2_kernels;
#endif
  return detail::scalar_kernels;
}

Isa active_isa() { return static_cast<Isa>(selected().load()); }

void set_isa(Isa isa) {
  require(available(isa), ErrorCode::Unsupported, "requested SIMD kernels are not available on this CPU");
  selected().store(static_cast<int>(isa));
}

const Kernels& active() { return kernels(active_isa()); }

}  // namespace srt::simd
