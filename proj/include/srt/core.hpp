#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "srt/error.hpp"

namespace srt {

using Point2 = std::array<double, 2>;
using Point3 = std::array<double, 3>;

/// Detector cylinder (ellipse boundary x [-H, H]) and the sampling of the
/// measured spherical means.
struct ScanGeometry {
  double a1 = 1.0;
  double a2 = 1.0;
  double half_height = 1.0;  // H
  double max_radius = 1.0;   // r0
  int K = 4;                 // detector angles
  int L = 2;                 // heights are H*m/L, m in [-L, L]
  int M = 2;                 // radii are r0*l/M, l in [0, M]

  void validate() const;

  Point2 detector(int k) const;
  double angle(int k) const;
  double height(int m) const;
  double radius(int l) const;
  double height_step() const { return half_height / L; }
  double radius_step() const { return max_radius / M; }
  bool is_circular() const { return a1 == a2; }
  /// (x1/a1)^2 + (x2/a2)^2 < 1
  bool inside_ellipse(double x1, double x2) const;
};

/// Measured spherical means g[k][m][l]; l is the fastest index.
class DataGrid {
 public:
  explicit DataGrid(const ScanGeometry& geometry);
  DataGrid(const ScanGeometry& geometry, std::vector<double> values);

  const ScanGeometry& geometry() const { return geometry_; }
  int K() const { return geometry_.K; }
  int L() const { return geometry_.L; }
  int M() const { return geometry_.M; }
  std::size_t heights() const { return 2 * static_cast<std::size_t>(L()) + 1; }
  std::size_t radii() const { return static_cast<std::size_t>(M()) + 1; }
  std::size_t size() const { return values_.size(); }

  /// m is the signed height index in [-L, L].
  double& at(int k, int m, int l) { return values_[index(k, m, l)]; }
  double at(int k, int m, int l) const { return values_[index(k, m, l)]; }

  std::span<double> line(int k, int m);
  std::span<const double> line(int k, int m) const;
  /// The contiguous (m, l) plane of one detector.
  std::span<const double> detector_plane(int k) const;

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  void check_finite() const;

 private:
  std::size_t index(int k, int m, int l) const {
    return (static_cast<std::size_t>(k) * heights() + static_cast<std::size_t>(m + L())) * radii() +
           static_cast<std::size_t>(l);
  }

  ScanGeometry geometry_;
  std::vector<double> values_;
};

/// Lattice description of a reconstruction volume: n1, n2 in [-nx, nx],
/// n3 in [-lz/2, lz/2] (lz + 1 layers); point (n1, n2, n3) sits at (dx*n1, dx*n2, dz*n3).
struct VolumeShape {
  int nx = 2;
  int lz = 2;
  double dx = 1.0;
  double dz = 1.0;

  void validate() const;
  std::size_t width() const { return 2 * static_cast<std::size_t>(nx) + 1; }
  std::size_t depth() const { return static_cast<std::size_t>(lz) + 1; }
  std::size_t pixels() const { return width() * width(); }
  std::size_t voxels() const { return pixels() * depth(); }
  double x(int n) const { return dx * n; }
  double z(int n3) const { return dz * n3; }
  int n3_min() const { return -(lz / 2); }
  /// Symmetric for even lz; odd lz puts the extra layer on top.
  int n3_max() const { return n3_min() + lz; }

  bool operator==(const VolumeShape&) const = default;
};

/// Reconstruction lattice for a scan: dx = max(a1, a2)/Nx on both horizontal
/// axes, dz = H/Lz, so the volume covers the box around E_A and |y| <= H/2.
VolumeShape reconstruction_shape(const ScanGeometry& g, int Nx, int Lz);

/// Voxel values; n1 fastest, n3 slowest (matches the on-disk order).
class Volume {
 public:
  explicit Volume(const VolumeShape& shape);
  Volume(const VolumeShape& shape, std::vector<double> values);

  const VolumeShape& shape() const { return shape_; }
  int Nx() const { return shape_.nx; }
  int Lz() const { return shape_.lz; }
  double dx() const { return shape_.dx; }
  double dz() const { return shape_.dz; }

  double& at(int n1, int n2, int n3) { return values_[index(n1, n2, n3)]; }
  double at(int n1, int n2, int n3) const { return values_[index(n1, n2, n3)]; }

  /// Horizontal slice at height index n3 (row-major in n2, then n1).
  std::span<double> slice(int n3);
  std::span<const double> slice(int n3) const;

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  void check_finite() const;

 private:
  std::size_t index(int n1, int n2, int n3) const {
    const std::size_t w = shape_.width();
    return (static_cast<std::size_t>(n3 - shape_.n3_min()) * w + static_cast<std::size_t>(n2 + shape_.nx)) * w +
           static_cast<std::size_t>(n1 + shape_.nx);
  }

  VolumeShape shape_;
  std::vector<double> values_;
};

/// Per-detector intermediate q(y, s), s >= 0; s is the fastest index.
struct PlaneGrid {
  std::size_t ny = 0;
  std::size_t ns = 0;
  double dy = 1.0;
  double ds = 1.0;
  double y0 = 0.0;
  std::vector<double> values;

  PlaneGrid() = default;
  PlaneGrid(std::size_t ny, std::size_t ns, double dy, double ds, double y0);

  double& at(std::size_t iy, std::size_t is) { return values[iy * ns + is]; }
  double at(std::size_t iy, std::size_t is) const { return values[iy * ns + is]; }
  std::span<double> row(std::size_t iy) { return {values.data() + iy * ns, ns}; }
  std::span<const double> row(std::size_t iy) const { return {values.data() + iy * ns, ns}; }
  double y(std::size_t iy) const { return y0 + dy * static_cast<double>(iy); }
  double s(std::size_t is) const { return ds * static_cast<double>(is); }

  void check_finite() const;
  bool same_lattice(const PlaneGrid& other) const;
};

}  // namespace srt
