#pragma once

#include <vector>

#include "srt/core.hpp"

namespace srt::filters {

/// Uniformly sampled function: values[i] at origin + i * spacing.
struct SampledSignal {
  std::vector<double> values;
  double spacing = 1.0;
  double origin = 0.0;

  SampledSignal() = default;
  SampledSignal(std::vector<double> v, double spacing, double origin = 0.0);

  std::size_t size() const { return values.size(); }
  double coord(std::size_t i) const { return origin + spacing * static_cast<double>(i); }
  /// Grid symmetric about zero with an odd number of samples.
  bool is_symmetric() const;
};

/// values[k][m][l] *= (r0 l / M)^p, p >= 0.
DataGrid multiply_radius_power(const DataGrid& d, int p);

/// Central first difference; second-order one-sided stencils at both ends.
SampledSignal diff_s(const SampledSignal& sig);
/// Central second difference; four-point one-sided stencils at both ends
/// (three-point when only three samples exist).
SampledSignal diff2_s(const SampledSignal& sig);

/// D_s = (2s)^{-1} d/ds for an even function sampled on s >= 0 (origin 0).
/// At s = 0 the even-function limit h''(0)/2 is used.
SampledSignal Ds_operator(const SampledSignal& sig);

/// Even extension of a signal on s >= 0 to the symmetric grid [-s_max, s_max].
SampledSignal even_extension(const SampledSignal& half);

/// Hilbert transform (1/pi) p.v. int h(s') / (s - s') ds', computed with the
/// frequency multiplier -i sign(xi) after zero padding to twice the next
/// power of two. Output sampled on the input grid.
SampledSignal hilbert(const SampledSignal& sig);

/// B_s = -h for n = 2 and -s D_s H_s h for n = 3. A signal with origin 0 is
/// treated as an even function on s >= 0 (extended evenly for the Hilbert
/// step, result returned on s >= 0); a symmetric signal is processed on the
/// full line.
SampledSignal bs_operator(const SampledSignal& sig, int n);

/// (1/a1^2) d^2/dx1^2 + (1/a2^2) d^2/dx2^2 on every horizontal slice, with
/// spacing dx on both axes; one-sided stencils on the boundary layers.
Volume laplacian_Ax(const Volume& vol, double a1, double a2);

/// r^{-1} d/dr r^{-1} d/dr (r g) for g sampled on r >= 0. The r = 0 sample is
/// extrapolated quadratically from l = 1, 2, 3.
SampledSignal ubp_radial_filter(const SampledSignal& sig);

/// ubp_radial_filter applied to every (k, m) radius line.
DataGrid ubp_filter_data(const DataGrid& d);

/// diff2_s applied along s to every row of a plane.
PlaneGrid diff2_plane(const PlaneGrid& q);

}  // namespace srt::filters
