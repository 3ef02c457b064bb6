#include <algorithm>
#include <cmath>

#include "srt/simd/kernels.hpp"

namespace srt::simd::detail {
namespace {

void radial_gather(const double* line, std::size_t last, double inv_dr, double dy2, const double* s2, std::size_t n,
                   double weight, double* out) {
  const double tmax = static_cast<double>(last);
  const double imax = tmax - 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = std::sqrt(dy2 + s2[i]) * inv_dr;
    if (!(t <= tmax)) continue;
    const double fi = std::floor(std::min(t, imax));
    const auto i0 = static_cast<std::size_t>(fi);
    const double f = t - fi;
    const double a = line[i0];
    const double v = a + f * (line[i0 + 1] - a);
    out[i] = out[i] + weight * v;
  }
}

void lerp_axpy(const double* a, const double* b, double wa, double wb, double* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) out[j] = out[j] + (wa * a[j] + wb * b[j]);
}

}  // namespace

const Kernels scalar_kernels{radial_gather, lerp_axpy};

}  // namespace srt::simd::detail
