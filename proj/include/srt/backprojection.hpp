#pragma once

#include <vector>

#include "srt/core.hpp"

namespace srt::backprojection {

/// Stage-1 output lattice shared by all detectors: heights y0 + iy*dy,
/// iy < ny, and radii s = is*ds, is < ns, with ds = r0/M.
struct ReconPlanGrid {
  std::size_t ny = 0;
  std::size_t ns = 0;
  double dy = 1.0;
  double ds = 1.0;
  double y0 = 0.0;

  /// Heights at the layers of `shape`; s covers the largest distance from
  /// any detector to the corners of the reconstruction box, plus one sample.
  static ReconPlanGrid for_volume(const ScanGeometry& g, const VolumeShape& shape);

  void validate() const;
  double s_max() const { return ds * static_cast<double>(ns - 1); }
  PlaneGrid make_plane() const { return PlaneGrid(ny, ns, dy, ds, y0); }
};

/// (M_{y,s}^# h)(x_k, y, s) = int h(x_k, y', sqrt((y - y')^2 + s^2)) dy' by the
/// trapezoid rule over the data heights, linear interpolation in the radius
/// (zero beyond r0).
PlaneGrid mys_backprojection(const DataGrid& d, int k, const ReconPlanGrid& plan);

/// mys_backprojection for every detector, in parallel over k.
std::vector<PlaneGrid> mys_all(const DataGrid& d, const ReconPlanGrid& plan);

/// (M_x^# q)(x, y) = (2 pi / K) sum_k q_k(y, |x - x_k|) with linear
/// interpolation in s. With `mask`, only points strictly inside E_A are
/// evaluated (others are 0); otherwise the whole rectangular grid is.
Volume mx_backprojection(const std::vector<PlaneGrid>& planes, const ScanGeometry& g, const VolumeShape& shape,
                         bool mask = true);

/// Weighted detector sum of the universal backprojection:
/// (1/2pi)(2pi/K) sum_k nu(theta_k).(x - x_k) |dx_k/dtheta| q_k(y, |x - x_k|),
/// with q_k the stage-1 planes of UBP-filtered data. Masked to E_A.
Volume ubp_backprojection(const std::vector<PlaneGrid>& planes, const ScanGeometry& g, const VolumeShape& shape);

}  // namespace srt::backprojection
