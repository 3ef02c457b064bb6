#pragma once

#include <cstddef>

// Inner loops of the two backprojection stages. Each kernel has a scalar
// reference implementation and, where the target supports it, an AVX2
// variant. The vector variants perform the same IEEE operations in the same
// order as the scalar code (no FMA contraction), so results are bitwise
// identical across ISAs.

namespace srt::simd {

enum class Isa { Scalar, Avx2 };

struct Kernels {
  /// out[i] += weight * lerp(line, sqrt(dy2 + s2[i]) * inv_dr), i in [0, n).
  /// line has last + 1 samples; arguments beyond the last sample contribute 0.
  void (*radial_gather)(const double* line, std::size_t last, double inv_dr, double dy2, const double* s2,
                        std::size_t n, double weight, double* out);

  /// out[j] += wa * a[j] + wb * b[j], j in [0, n).
  void (*lerp_axpy)(const double* a, const double* b, double wa, double wb, double* out, std::size_t n);
};

const char* name(Isa isa);
bool available(Isa isa);
const Kernels& kernels(Isa isa);

/// Best available ISA unless overridden by set_isa() or SRT_SIMD=scalar|avx2.
Isa active_isa();
void set_isa(Isa isa);
const Kernels& active();

namespace detail {
extern const Kernels scalar_kernels;
#if SRT_HAVE_AVX2
extern const Kernels avx2_kernels;
#endif
}  // namespace detail

}  // namespace srt::simd
