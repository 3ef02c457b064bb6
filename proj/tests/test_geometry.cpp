#include <cmath>
#include <numbers>

#include "srt/geometry.hpp"
#include "test_support.hpp"

using namespace srt;
using namespace srt::geometry;
using srt::test::check_error;
constexpr double pi = std::numbers::pi;

TEST_CASE("unit sphere areas") {
  CHECK(unit_sphere_area(1) == doctest::Approx(2.0));
  CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * pi).epsilon(1e-15));
  CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * pi).epsilon(1e-15));
  CHECK(std::abs(unit_sphere_area(4) - 19.739208802178716) < 1e-12);
  for (int d = 3; d <= 10; ++d) {
    CHECK(unit_sphere_area(d) == doctest::Approx(2.0 * pi * unit_sphere_area(d - 2) / (d - 2)).epsilon(1e-14));
  }
  for (int d = 1; d <= 10; ++d) {
    CHECK(unit_sphere_area(d) == doctest::Approx(2.0 * std::pow(pi, d / 2.0) / std::tgamma(d / 2.0)).epsilon(1e-13));
  }
  check_error(ErrorCode::Domain, [] { unit_sphere_area(0); });
}

TEST_CASE("decomposition constants") {
  CHECK(decomposition_constant(2, 1) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(decomposition_constant(3, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(decomposition_constant(2, 2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(decomposition_constant(4, 3) > 0.0);
  check_error(ErrorCode::Domain, [] { decomposition_constant(1, 1); });
  check_error(ErrorCode::Domain, [] { decomposition_constant(2, 0); });
}

TEST_CASE("ellipse boundary points, normals and arclength") {
  const EllipseBoundary circle(1.0, 1.0);
  const Point2 n = circle.normal(pi / 3);
  CHECK(n[0] == doctest::Approx(std::cos(pi / 3)).epsilon(1e-15));
  CHECK(n[1] == doctest::Approx(std::sin(pi / 3)).epsilon(1e-15));

  const EllipseBoundary e(1.0, 0.8);
  CHECK(e.point(0.0)[0] == 1.0);
  CHECK(e.point(0.0)[1] == 0.0);
  CHECK(e.normal(0.0)[0] == doctest::Approx(1.0));
  CHECK(e.normal(0.0)[1] == doctest::Approx(0.0));
  CHECK(e.arclength_element(0.0) == doctest::Approx(0.8));
  CHECK(e.det() == doctest::Approx(0.8));

  const int n_steps = 20000;
  double perimeter = 0.0;
  for (int i = 0; i < n_steps; ++i) perimeter += e.arclength_element(2.0 * pi * i / n_steps);
  perimeter *= 2.0 * pi / n_steps;
  CHECK(std::abs(perimeter - 5.672333577794897) < 1e-9);

  for (int i = 0; i < 360; ++i) {
    const double t = 2.0 * pi * i / 360.0 + 0.01;
    const Point2 p = e.point(t);
    const Point2 nu = e.normal(t);
    CHECK(std::abs(std::hypot(nu[0], nu[1]) - 1.0) < 1e-12);
    CHECK(p[0] * nu[0] + p[1] * nu[1] > 0.0);
    CHECK(std::pow(p[0] / 1.0, 2) + std::pow(p[1] / 0.8, 2) == doctest::Approx(1.0).epsilon(1e-14));
    // normal is orthogonal to the tangent (-a1 sin t, a2 cos t)
    CHECK(std::abs(-std::sin(t) * nu[0] + 0.8 * std::cos(t) * nu[1]) < 1e-12);
  }

  const EllipseBoundary r2(2.0, 2.0);
  double circ = 0.0;
  for (int i = 0; i < 64; ++i) {
    CHECK(r2.arclength_element(0.1 * i) == doctest::Approx(2.0));
    circ += r2.arclength_element(2.0 * pi * i / 64) * 2.0 * pi / 64;
  }
  CHECK(circ == doctest::Approx(4.0 * pi));
  check_error(ErrorCode::Validation, [] { EllipseBoundary bad(0.0, 1.0); });
}
