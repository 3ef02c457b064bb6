#include "srt/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "srt/parallel.hpp"
#include "srt/phantom.hpp"
#include "srt/recon.hpp"

namespace srt::harness {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// uniform in (0, 1] (first) and [0, 1) (second) from one counter
std::pair<double, double> uniform_pair(std::uint64_t seed, std::uint64_t pair) {
  const std::uint64_t key = splitmix64(seed);
  const std::uint64_t a = splitmix64(key ^ (2 * pair));
  const std::uint64_t b = splitmix64(key ^ (2 * pair + 1));
  constexpr double scale = 0x1.0p-53;
  return {(static_cast<double>(a >> 11) + 1.0) * scale, static_cast<double>(b >> 11) * scale};
}

void check_same_shape(const Volume& a, const Volume& b) {
  require(a.shape() == b.shape(), ErrorCode::Validation, "volumes have different shapes");
}

}  // namespace

double gaussian_sample(std::uint64_t seed, std::uint64_t index) {
  const auto [u1, u2] = uniform_pair(seed, index / 2);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return index % 2 == 0 ? radius * std::cos(angle) : radius * std::sin(angle);
}

DataGrid add_noise(const DataGrid& d, double level, std::uint64_t seed, NoiseConvention convention) {
  require(std::isfinite(level), ErrorCode::Domain, "noise level must be finite");
  if (level < 0.0) fail(ErrorCode::Domain, "noise level must be non-negative");
  DataGrid out = d;
  if (level == 0.0) return out;
  double gmax = 0.0;
  for (double v : d.values()) gmax = std::max(gmax, std::abs(v));
  const double sigma = convention == NoiseConvention::Variance ? std::sqrt(level * gmax) : level * gmax;
  auto values = out.values();
  const std::size_t n = values.size();
  const std::size_t blocks = (n + 4095) / 4096;
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t end = std::min(n, (b + 1) * 4096);
    for (std::size_t i = b * 4096; i < end; ++i) values[i] += sigma * gaussian_sample(seed, i);
  });
  return out;
}

bool MaskSpec::contains(const VolumeShape& shape, int n1, int n2, int n3) const {
  const double u = shape.x(n1) / a1;
  const double v = shape.x(n2) / a2;
  const double q = u * u + v * v;
  if (kind == MaskKind::Interior) return q < 1.0;
  const double half_height = 0.5 * shape.dz * shape.lz;
  return q < 0.95 * 0.95 && std::abs(shape.z(n3)) <= 0.8 * half_height * (1.0 + 1e-12);
}

MaskKind parse_mask(const std::string& name) {
  if (name == "interior") return MaskKind::Interior;
  if (name == "shrunk") return MaskKind::Shrunk;
  fail(ErrorCode::Validation, "unknown mask '" + name + "' (expected interior or shrunk)");
}

template <class Fn>
void for_each_masked(const VolumeShape& sh, const MaskSpec& mask, Fn fn) {
  for (int n3 = sh.n3_min(); n3 <= sh.n3_max(); ++n3)
    for (int n2 = -sh.nx; n2 <= sh.nx; ++n2)
      for (int n1 = -sh.nx; n1 <= sh.nx; ++n1)
        if (mask.contains(sh, n1, n2, n3)) fn(n1, n2, n3);
}

double relative_l2(const Volume& v, const Volume& ref, const MaskSpec& mask) {
  check_same_shape(v, ref);
  require(mask.a1 > 0.0 && mask.a2 > 0.0, ErrorCode::Validation, "mask semi-axes must be positive");
  double num = 0.0;
  double den = 0.0;
  for_each_masked(v.shape(), mask, [&](int n1, int n2, int n3) {
    const double r = ref.at(n1, n2, n3);
    const double e = v.at(n1, n2, n3) - r;
    num += e * e;
    den += r * r;
  });
  if (den == 0.0) {
    if (num == 0.0) return 0.0;
    fail(ErrorCode::Domain, "reference volume vanishes on the mask");
  }
  return std::sqrt(num / den);
}

double correlation(const Volume& a, const Volume& b, const MaskSpec& mask) {
  check_same_shape(a, b);
  double sa = 0.0, sb = 0.0;
  std::size_t n = 0;
  for_each_masked(a.shape(), mask, [&](int n1, int n2, int n3) {
    sa += a.at(n1, n2, n3);
    sb += b.at(n1, n2, n3);
    ++n;
  });
  require(n >= 2, ErrorCode::Domain, "mask selects fewer than two voxels");
  const double ma = sa / static_cast<double>(n);
  const double mb = sb / static_cast<double>(n);
  double cab = 0.0, caa = 0.0, cbb = 0.0;
  for_each_masked(a.shape(), mask, [&](int n1, int n2, int n3) {
    const double x = a.at(n1, n2, n3) - ma;
    const double y = b.at(n1, n2, n3) - mb;
    cab += x * y;
    caa += x * x;
    cbb += y * y;
  });
  if (caa == 0.0 || cbb == 0.0) fail(ErrorCode::Domain, "correlation of a constant volume is undefined");
  return cab / std::sqrt(caa * cbb);
}

BenchCase bench_case(int Nx) {
  require(Nx >= 4, ErrorCode::Validation, "benchmark sizes must be at least 4");
  BenchCase c;
  c.Nx = Nx;
  c.geometry = ScanGeometry{1.0, 0.8, 2.0, 4.0, static_cast<int>(std::lround(2.56 * Nx)), 2 * Nx, 4 * Nx};
  c.geometry.validate();
  c.Lz = c.geometry.L;
  const double w = 2.0 * Nx + 1.0;
  c.unknowns = w * w * (c.Lz + 1.0);
  c.datapoints = static_cast<double>(c.geometry.K) * (2.0 * c.geometry.L + 1.0) * (c.geometry.M + 1.0);
  return c;
}

double time_inv3d(const BenchCase& c) {
  const Phantom p{{Ball{{0.0, 0.0, 0.0}, 0.5, 1.0}}};
  const DataGrid d = phantom::forward_data(p, c.geometry);
  const auto req = recon::ReconRequest::make(recon::Method::Inv3d, c.geometry, c.Nx, c.Lz);
  const auto t0 = std::chrono::steady_clock::now();
  const Volume v = recon::reconstruct_inv3d(d, req);
  const auto t1 = std::chrono::steady_clock::now();
  (void)v;
  return std::chrono::duration<double>(t1 - t0).count();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorCode::Domain, "slope fit needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0.0 && y[i] > 0.0, ErrorCode::Domain, "log-log fit needs positive values");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = std::log(x[i]) - mx;
    sxy += u * (std::log(y[i]) - my);
    sxx += u * u;
  }
  require(sxx > 0.0, ErrorCode::Domain, "slope fit needs distinct sizes");
  return sxy / sxx;
}

BenchResult benchmark_scaling(const std::vector<int>& sizes, bool single_thread, const BenchTimer& timer) {
  if (sizes.size() < 3) fail(ErrorCode::Domain, "benchmark needs at least three sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    require(sizes[i] > sizes[i - 1], ErrorCode::Domain, "benchmark sizes must be strictly increasing");
  }
  struct ThreadGuard {
    unsigned saved = num_threads();
    bool active;
    explicit ThreadGuard(bool on) : active(on) {
      if (active) set_num_threads(1);
    }
    ~ThreadGuard() {
      if (active) set_num_threads(saved);
    }
  } guard(single_thread);

  BenchResult r;
  std::vector<double> n, t;
  for (int Nx : sizes) {
    const BenchCase c = bench_case(Nx);
    std::array<double, 3> runs{};
    for (double& s : runs) s = timer(c);
    std::sort(runs.begin(), runs.end());
    r.rows.push_back({Nx, c.unknowns, c.datapoints, runs[1]});
    n.push_back(c.unknowns);
    t.push_back(runs[1]);
  }
  r.slope = loglog_slope(n, t);
  require(std::isfinite(r.slope), ErrorCode::Domain, "benchmark slope is not finite");
  return r;
}

std::string bench_csv(const BenchResult& r) {
  std::ostringstream os;
  os.precision(10);
  os << "Nx,N,datapoints,seconds\n";
  for (const BenchRow& row : r.rows) {
    os << row.Nx << ',' << static_cast<long long>(row.unknowns) << ',' << static_cast<long long>(row.datapoints)
       << ',' << row.seconds << '\n';
  }
  os << "slope," << r.slope << '\n';
  return os.str();
}

void write_bench_csv(const BenchResult& r, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out << bench_csv(r);
  out.flush();
  if (!out) fail(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

SliceAxis parse_axis(const std::string& name) {
  if (name == "horizontal") return SliceAxis::Horizontal;
  if (name == "vertical") return SliceAxis::Vertical;
  fail(ErrorCode::Validation, "unknown slice axis '" + name + "' (expected horizontal or vertical)");
}

std::string encode_pgm(const std::vector<double>& pixels, std::size_t width, std::size_t height) {
  require(width > 0 && height > 0 && pixels.size() == width * height, ErrorCode::Validation,
          "image extents do not match the pixel count");
  const auto [lo_it, hi_it] = std::minmax_element(pixels.begin(), pixels.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  require(std::isfinite(lo) && std::isfinite(hi), ErrorCode::NonFinite, "slice contains non-finite values");
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.reserve(out.size() + pixels.size());
  for (double v : pixels) {
    const long level = hi > lo ? std::lround(255.0 * (v - lo) / (hi - lo)) : 128;
    out.push_back(static_cast<char>(static_cast<unsigned char>(std::clamp(level, 0L, 255L))));
  }
  return out;
}

std::vector<double> extract_slice(const Volume& v, SliceAxis axis, int index, std::size_t& width,
                                  std::size_t& height) {
  const VolumeShape& sh = v.shape();
  std::vector<double> px;
  width = sh.width();
  if (axis == SliceAxis::Horizontal) {
    require(index >= sh.n3_min() && index <= sh.n3_max(), ErrorCode::Validation, "slice index outside the volume");
    height = sh.width();
    for (int n2 = sh.nx; n2 >= -sh.nx; --n2)
      for (int n1 = -sh.nx; n1 <= sh.nx; ++n1) px.push_back(v.at(n1, n2, index));
  } else {
    require(index >= -sh.nx && index <= sh.nx, ErrorCode::Validation, "slice index outside the volume");
    height = sh.depth();
    for (int n3 = sh.n3_max(); n3 >= sh.n3_min(); --n3)
      for (int n1 = -sh.nx; n1 <= sh.nx; ++n1) px.push_back(v.at(n1, index, n3));
  }
  return px;
}

void export_slice_pgm(const Volume& v, SliceAxis axis, int index, const std::filesystem::path& path) {
  std::size_t w = 0, h = 0;
  const std::vector<double> px = extract_slice(v, axis, index, w, h);
  const std::string bytes = encode_pgm(px, w, h);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) fail(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

}  // namespace srt::harness
