#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "srt/core.hpp"

namespace srt::harness {

/// How the noise level relates to the data scale g_max = max |g|.
enum class NoiseConvention {
  Variance,  // variance = level * g_max (default)
  Sigma,     // standard deviation = level * g_max
};

/// Adds i.i.d. zero-mean Gaussian noise. Sample j uses SplitMix64 of
/// (seed, j / 2) through Box-Muller, so the output depends only on the seed.
DataGrid add_noise(const DataGrid& d, double level, std::uint64_t seed,
                   NoiseConvention convention = NoiseConvention::Variance);

/// Standard normal sample number `index` of the stream selected by `seed`.
double gaussian_sample(std::uint64_t seed, std::uint64_t index);

enum class MaskKind {
  Interior,  // (x1/a1)^2 + (x2/a2)^2 < 1
  Shrunk,    // (x1/a1)^2 + (x2/a2)^2 < 0.95^2 and |y| <= 0.8 * reconstructed half-height
};

struct MaskSpec {
  MaskKind kind = MaskKind::Interior;
  double a1 = 1.0;
  double a2 = 1.0;

  static MaskSpec interior(const ScanGeometry& g) { return {MaskKind::Interior, g.a1, g.a2}; }
  static MaskSpec shrunk(const ScanGeometry& g) { return {MaskKind::Shrunk, g.a1, g.a2}; }
  bool contains(const VolumeShape& shape, int n1, int n2, int n3) const;
};

MaskKind parse_mask(const std::string& name);

/// sqrt(sum (v - ref)^2 / sum ref^2) over the mask.
double relative_l2(const Volume& v, const Volume& ref, const MaskSpec& mask);

/// Pearson correlation of the two volumes over the mask.
double correlation(const Volume& a, const Volume& b, const MaskSpec& mask);

struct BenchCase {
  int Nx = 0;
  ScanGeometry geometry;
  int Lz = 0;
  double unknowns = 0.0;    // (2Nx+1)^2 (Lz+1)
  double datapoints = 0.0;  // K (2L+1) (M+1)
};

struct BenchRow {
  int Nx = 0;
  double unknowns = 0.0;
  double datapoints = 0.0;
  double seconds = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  double slope = 0.0;
};

/// Seconds for one timed run of a case.
using BenchTimer = std::function<double(const BenchCase&)>;

/// Case for size Nx: a1 = 1, a2 = 0.8, H = 2, r0 = 4, K = round(2.56 Nx),
/// L = 2 Nx, M = 4 Nx, Lz = L.
BenchCase bench_case(int Nx);

/// Times reconstruct_inv3d of a centered ball (data synthesis excluded).
double time_inv3d(const BenchCase& c);

/// Median of three timings per size and the least-squares slope of
/// log T against log N. Sizes must be strictly increasing, at least three.
/// With single_thread the worker count is 1 for the duration of the run.
BenchResult benchmark_scaling(const std::vector<int>& sizes, bool single_thread, const BenchTimer& timer = time_inv3d);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Header `Nx,N,datapoints,seconds`, one row per size, final `slope,<v>`.
std::string bench_csv(const BenchResult& r);
void write_bench_csv(const BenchResult& r, const std::filesystem::path& path);

enum class SliceAxis { Horizontal, Vertical };
SliceAxis parse_axis(const std::string& name);

/// Binary 8-bit PGM of a row-major image; linear min-max scaling, constant
/// images map to 128.
std::string encode_pgm(const std::vector<double>& pixels, std::size_t width, std::size_t height);

/// Horizontal: the layer n3 = index (rows n2 from top = +Nx, columns n1).
/// Vertical: the plane n2 = index (rows n3 from the top layer, columns n1).
std::vector<double> extract_slice(const Volume& v, SliceAxis axis, int index, std::size_t& width,
                                  std::size_t& height);
void export_slice_pgm(const Volume& v, SliceAxis axis, int index, const std::filesystem::path& path);

}  // namespace srt::harness
