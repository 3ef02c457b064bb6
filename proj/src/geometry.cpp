#include "srt/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace srt::geometry {
namespace {

// Gamma(d/2) through Gamma(x + 1) = x Gamma(x), seeded with Gamma(1) = 1 and
// Gamma(1/2) = sqrt(pi). Exact in the sense that no special function is used.
double gamma_half(int d) {
  double g = (d % 2 == 0) ? 1.0 : std::sqrt(std::numbers::pi);
  for (int twice_x = (d % 2 == 0) ? 2 : 1; twice_x < d; twice_x += 2) g *= 0.5 * twice_x;
  return g;
}

}  // namespace

double unit_sphere_area(int d) {
  if (d < 1) fail(ErrorCode::Domain, "unit sphere dimension must be >= 1, got " + std::to_string(d));
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / gamma_half(d);
}

double decomposition_constant(int n, int m) {
  if (n < 2 || m < 1) {
    fail(ErrorCode::Domain, "decomposition constant needs n >= 2, m >= 1 (got n=" + std::to_string(n) +
                                ", m=" + std::to_string(m) + ")");
  }
  return 0.5 * unit_sphere_area(m + 1) * unit_sphere_area(n) / unit_sphere_area(n + m);
}

EllipseBoundary::EllipseBoundary(double a1_, double a2_) : a1(a1_), a2(a2_) {
  require(std::isfinite(a1) && std::isfinite(a2) && a1 > 0.0 && a2 > 0.0, ErrorCode::Validation,
          "ellipse semi-axes must be positive and finite");
}

Point2 EllipseBoundary::point(double theta) const { return {a1 * std::cos(theta), a2 * std::sin(theta)}; }

Point2 EllipseBoundary::normal(double theta) const {
  const double u = std::cos(theta) / a1;
  const double v = std::sin(theta) / a2;
  const double n = std::hypot(u, v);
  return {u / n, v / n};
}

double EllipseBoundary::arclength_element(double theta) const {
  return std::hypot(a1 * std::sin(theta), a2 * std::cos(theta));
}

}  // namespace srt::geometry
