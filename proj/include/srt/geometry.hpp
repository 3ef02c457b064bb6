#pragma once

#include "srt/core.hpp"

namespace srt::geometry {

/// Total surface measure of the unit sphere S^{d-1} in R^d,
/// 2 pi^{d/2} / Gamma(d/2).
double unit_sphere_area(int d);

/// Constant of the cylinder decomposition for centers on Gamma x R^m,
/// Gamma a hypersurface of R^n:
///   (1/2) |S^m| |S^{n-1}| / |S^{n+m-1}|.
double decomposition_constant(int n, int m);

/// Boundary of the solid ellipse {(x1/a1)^2 + (x2/a2)^2 < 1}, parameterised
/// by the angle theta: point(theta) = (a1 cos theta, a2 sin theta).
struct EllipseBoundary {
  double a1 = 1.0;
  double a2 = 1.0;

  EllipseBoundary(double a1, double a2);
  explicit EllipseBoundary(const ScanGeometry& g) : EllipseBoundary(g.a1, g.a2) {}

  Point2 point(double theta) const;
  /// Outer unit normal at point(theta).
  Point2 normal(double theta) const;
  /// |d point / d theta|; dS = arclength_element * dtheta.
  double arclength_element(double theta) const;
  double det() const { return a1 * a2; }
};

}  // namespace srt::geometry
