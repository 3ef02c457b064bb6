#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "srt/core.hpp"

namespace srt {

/// Indicator of a closed ball scaled by amplitude; center = (x1, x2, y) with
/// y the cylinder axis.
struct Ball {
  Point3 center{0.0, 0.0, 0.0};
  double radius = 1.0;
  double amplitude = 1.0;
};

struct Phantom {
  std::vector<Ball> balls;

  /// Three balls used by the demo workflow.
  static Phantom demo();

  /// Every ball strictly inside the open cylinder E_A x (-H, H).
  void validate(const ScanGeometry& g) const;
  bool contains(const ScanGeometry& g) const;

  double value(const Point3& p) const;
  /// Mean over the sphere |z - c| = |r|; even in r by construction.
  double spherical_mean(const Point3& c, double r) const;
};

namespace phantom {

/// Fraction of the 2-sphere of radius r, whose center is at distance d from
/// the ball center, that lies inside the ball of radius rho.
double cap_fraction(double d, double r, double rho);

/// Circle analogue of cap_fraction.
double arc_fraction(double d, double r, double rho);

/// Exact spherical means of the phantom at every detector / height / radius.
DataGrid forward_data(const Phantom& p, const ScanGeometry& g);

/// Ground truth on the reconstruction lattice (dx = a1/Nx, dz = H/Lz): mean
/// of the phantom over 2x2x2 subsamples per voxel, zero outside E_A.
Volume rasterize(const Phantom& p, int Nx, int Lz, const ScanGeometry& g);

/// Text format: one `ball cx cy cz radius amplitude` per line, '#' comments.
Phantom parse(std::istream& in);
Phantom load(const std::filesystem::path& path);
void save(const Phantom& p, const std::filesystem::path& path);

}  // namespace phantom
}  // namespace srt
