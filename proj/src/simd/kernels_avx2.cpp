// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "srt/simd/kernels.hpp"

namespace srt::simd::detail {
namespace {

void radial_gather(const double* line, std::size_t last, double inv_dr, double dy2, const double* s2, std::size_t n,
                   double weight, double* out) {
  const __m256d vdy2 = _mm256_set1_pd(dy2);
  const __m256d vinv = _mm256_set1_pd(inv_dr);
  const __m256d vtmax = _mm256_set1_pd(static_cast<double>(last));
  const __m256d vimax = _mm256_set1_pd(static_cast<double>(last) - 1.0);
  const __m256d vw = _mm256_set1_pd(weight);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_mul_pd(_mm256_sqrt_pd(_mm256_add_pd(vdy2, _mm256_loadu_pd(s2 + i))), vinv);
    const __m256d inside = _mm256_cmp_pd(t, vtmax, _CMP_LE_OQ);
    if (_mm256_movemask_pd(inside) == 0) continue;
    const __m256d fi = _mm256_floor_pd(_mm256_min_pd(t, vimax));
    const __m128i idx = _mm256_cvttpd_epi32(fi);
    const __m256d f = _mm256_sub_pd(t, fi);
    const __m256d a = _mm256_i32gather_pd(line, idx, 8);
    const __m256d b = _mm256_i32gather_pd(line + 1, idx, 8);
    const __m256d v = _mm256_add_pd(a, _mm256_mul_pd(f, _mm256_sub_pd(b, a)));
    const __m256d o = _mm256_loadu_pd(out + i);
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(o, _mm256_add_pd(o, _mm256_mul_pd(vw, v)), inside));
  }
  if (i < n) scalar_kernels.radial_gather(line, last, inv_dr, dy2, s2 + i, n - i, weight, out + i);
}

void lerp_axpy(const double* a, const double* b, double wa, double wb, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(wa);
  const __m256d vb = _mm256_set1_pd(wb);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d s = _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(a + j)), _mm256_mul_pd(vb, _mm256_loadu_pd(b + j)));
    _mm256_storeu_pd(out + j, _mm256_add_pd(_mm256_loadu_pd(out + j), s));
  }
  if (j < n) scalar_kernels.lerp_axpy(a + j, b + j, wa, wb, out + j, n - j);
}

}  // namespace

const Kernels avx2_kernels{radial_gather, lerp_axpy};

}  // namespace srt::simd::detail
