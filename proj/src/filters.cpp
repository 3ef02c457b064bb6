#include "srt/filters.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <string>

#include "srt/parallel.hpp"

namespace srt::filters {
namespace {

void require_length(const SampledSignal& sig, std::size_t n, const char* op) {
  if (sig.size() < n) fail(ErrorCode::Domain, std::string(op) + " needs at least " + std::to_string(n) + " samples");
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// FFTW planning is not thread safe; execution on distinct arrays is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

void first_difference(const double* f, std::size_t n, double h, double* out) {
  const double inv2h = 1.0 / (2.0 * h);
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2h;
  out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
}

void second_difference(const double* f, std::size_t n, double h, double* out, std::size_t stride = 1) {
  const double inv = 1.0 / (h * h);
  auto F = [&](std::size_t i) { return f[i * stride]; };
  for (std::size_t i = 1; i + 1 < n; ++i) out[i * stride] = (F(i + 1) - 2.0 * F(i) + F(i - 1)) * inv;
  if (n >= 4) {
    out[0] = (2.0 * F(0) - 5.0 * F(1) + 4.0 * F(2) - F(3)) * inv;
    out[(n - 1) * stride] = (2.0 * F(n - 1) - 5.0 * F(n - 2) + 4.0 * F(n - 3) - F(n - 4)) * inv;
  } else {
    out[0] = out[stride];
    out[(n - 1) * stride] = out[stride];
  }
}

}  // namespace

SampledSignal::SampledSignal(std::vector<double> v, double spacing_, double origin_)
    : values(std::move(v)), spacing(spacing_), origin(origin_) {
  require(std::isfinite(spacing) && spacing > 0.0, ErrorCode::Validation, "signal spacing must be positive");
  require(std::isfinite(origin), ErrorCode::Validation, "signal origin must be finite");
}

bool SampledSignal::is_symmetric() const {
  if (size() % 2 == 0) return false;
  const double half = 0.5 * static_cast<double>(size() - 1) * spacing;
  return std::abs(origin + half) <= 1e-12 * (1.0 + half);
}

DataGrid multiply_radius_power(const DataGrid& d, int p) {
  if (p < 0) fail(ErrorCode::Domain, "radius power must be non-negative");
  DataGrid out = d;
  const ScanGeometry& g = d.geometry();
  std::vector<double> factor(d.radii());
  for (int l = 0; l <= g.M; ++l) factor[static_cast<std::size_t>(l)] = std::pow(g.radius(l), p);
  auto v = out.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= factor[i % factor.size()];
  return out;
}

SampledSignal diff_s(const SampledSignal& sig) {
  require_length(sig, 3, "diff_s");
  SampledSignal out(std::vector<double>(sig.size()), sig.spacing, sig.origin);
  first_difference(sig.values.data(), sig.size(), sig.spacing, out.values.data());
  return out;
}

SampledSignal diff2_s(const SampledSignal& sig) {
  require_length(sig, 3, "diff2_s");
  SampledSignal out(std::vector<double>(sig.size()), sig.spacing, sig.origin);
  second_difference(sig.values.data(), sig.size(), sig.spacing, out.values.data());
  return out;
}

SampledSignal Ds_operator(const SampledSignal& sig) {
  require_length(sig, 3, "Ds_operator");
  if (sig.origin != 0.0) fail(ErrorCode::Domain, "Ds_operator needs a signal starting at s = 0");
  SampledSignal out = diff_s(sig);
  const double h = sig.spacing;
  // even reflection f(-h) = f(h): h''(0) ~ 2 (f1 - f0) / h^2
  out.values[0] = (sig.values[1] - sig.values[0]) / (h * h);
  for (std::size_t i = 1; i < out.size(); ++i) out.values[i] /= 2.0 * sig.coord(i);
  return out;
}

SampledSignal even_extension(const SampledSignal& half) {
  if (half.origin != 0.0) fail(ErrorCode::Domain, "even extension needs a signal starting at s = 0");
  const std::size_t n = half.size();
  std::vector<double> v(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    v[n - 1 + i] = half.values[i];
    v[n - 1 - i] = half.values[i];
  }
  return SampledSignal(std::move(v), half.spacing, -static_cast<double>(n - 1) * half.spacing);
}

SampledSignal hilbert(const SampledSignal& sig) {
  require_length(sig, 8, "hilbert");
  const std::size_t n = sig.size();
  const std::size_t npad = 2 * next_pow2(n);
  const std::size_t nfreq = npad / 2 + 1;

  double* buf = fftw_alloc_real(npad);
  fftw_complex* spec = fftw_alloc_complex(nfreq);
  fftw_plan fwd, inv;
  {
    std::lock_guard lock(fftw_planner_mutex());
    fwd = fftw_plan_dft_r2c_1d(static_cast<int>(npad), buf, spec, FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_1d(static_cast<int>(npad), spec, buf, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < npad; ++i) buf[i] = i < n ? sig.values[i] : 0.0;
  fftw_execute(fwd);
  // multiplier -i sign(xi); DC and Nyquist carry no sign and are dropped
  spec[0][0] = spec[0][1] = 0.0;
  spec[nfreq - 1][0] = spec[nfreq - 1][1] = 0.0;
  for (std::size_t k = 1; k + 1 < nfreq; ++k) {
    const double re = spec[k][0];
    const double im = spec[k][1];
    spec[k][0] = im;
    spec[k][1] = -re;
  }
  fftw_execute(inv);

  SampledSignal out(std::vector<double>(n), sig.spacing, sig.origin);
  const double scale = 1.0 / static_cast<double>(npad);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = buf[i] * scale;
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
  }
  fftw_free(buf);
  fftw_free(spec);
  return out;
}

SampledSignal bs_operator(const SampledSignal& sig, int n) {
  if (n != 2 && n != 3) fail(ErrorCode::Unsupported, "B_s is implemented for n = 2 and n = 3 only");
  if (n == 2) {
    SampledSignal out = sig;
    for (double& v : out.values) v = -v;
    return out;
  }
  const bool half_line = sig.origin == 0.0;
  if (!half_line && !sig.is_symmetric()) {
    fail(ErrorCode::Domain, "B_s needs a signal on s >= 0 or on a grid symmetric about 0");
  }
  const SampledSignal full = half_line ? even_extension(sig) : sig;
  // s D_s = (1/2) d/ds
  SampledSignal out = diff_s(hilbert(full));
  for (double& v : out.values) v *= -0.5;
  if (!half_line) return out;
  const std::size_t offset = sig.size() - 1;
  return SampledSignal(std::vector<double>(out.values.begin() + static_cast<std::ptrdiff_t>(offset), out.values.end()),
                       sig.spacing, 0.0);
}

Volume laplacian_Ax(const Volume& vol, double a1, double a2) {
  require(a1 > 0.0 && a2 > 0.0, ErrorCode::Validation, "semi-axes must be positive");
  const VolumeShape& sh = vol.shape();
  require(sh.width() >= 4, ErrorCode::Domain, "laplacian needs at least four samples per axis");
  Volume out(sh);
  const std::size_t w = sh.width();
  const double c1 = 1.0 / (a1 * a1);
  const double c2 = 1.0 / (a2 * a2);
  parallel_for(sh.depth(), [&](std::size_t layer) {
    const int n3 = sh.n3_min() + static_cast<int>(layer);
    const auto src = vol.slice(n3);
    auto dst = out.slice(n3);
    std::vector<double> d11(w * w), d22(w * w);
    for (std::size_t row = 0; row < w; ++row) second_difference(src.data() + row * w, w, sh.dx, d11.data() + row * w);
    for (std::size_t col = 0; col < w; ++col) second_difference(src.data() + col, w, sh.dx, d22.data() + col, w);
    for (std::size_t i = 0; i < w * w; ++i) dst[i] = c1 * d11[i] + c2 * d22[i];
  });
  return out;
}

SampledSignal ubp_radial_filter(const SampledSignal& sig) {
  require_length(sig, 4, "ubp_radial_filter");
  if (sig.origin != 0.0) fail(ErrorCode::Domain, "ubp_radial_filter needs a signal starting at r = 0");
  const std::size_t n = sig.size();
  const double h = sig.spacing;
  std::vector<double> u(n), v(n), w(n);
  for (std::size_t l = 0; l < n; ++l) u[l] = sig.coord(l) * sig.values[l];
  first_difference(u.data(), n, h, v.data());
  for (std::size_t l = 1; l < n; ++l) v[l] /= sig.coord(l);
  // v is undefined at r = 0: differentiate on l >= 1 only
  first_difference(v.data() + 1, n - 1, h, w.data() + 1);
  for (std::size_t l = 1; l < n; ++l) w[l] /= sig.coord(l);
  w[0] = 3.0 * w[1] - 3.0 * w[2] + w[3];
  return SampledSignal(std::move(w), h, 0.0);
}

DataGrid ubp_filter_data(const DataGrid& d) {
  DataGrid out(d.geometry());
  const ScanGeometry& g = d.geometry();
  parallel_for(static_cast<std::size_t>(g.K), [&](std::size_t ks) {
    const int k = static_cast<int>(ks);
    for (int m = -g.L; m <= g.L; ++m) {
      const auto in = d.line(k, m);
      const SampledSignal f = ubp_radial_filter(SampledSignal({in.begin(), in.end()}, g.radius_step(), 0.0));
      auto dst = out.line(k, m);
      std::copy(f.values.begin(), f.values.end(), dst.begin());
    }
  });
  return out;
}

PlaneGrid diff2_plane(const PlaneGrid& q) {
  require(q.ns >= 3, ErrorCode::Domain, "diff2_plane needs at least three s samples");
  PlaneGrid out(q.ny, q.ns, q.dy, q.ds, q.y0);
  for (std::size_t iy = 0; iy < q.ny; ++iy) second_difference(q.row(iy).data(), q.ns, q.ds, out.row(iy).data());
  return out;
}

}  // namespace srt::filters
