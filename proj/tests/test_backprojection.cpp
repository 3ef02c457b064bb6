#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "srt/backprojection.hpp"
#include "srt/parallel.hpp"
#include "srt/phantom.hpp"
#include "test_support.hpp"

using namespace srt;
using namespace srt::backprojection;
using srt::test::check_error;
constexpr double pi = std::numbers::pi;

namespace {

template <class Fn>
std::vector<PlaneGrid> make_planes(const ReconPlanGrid& plan, int K, Fn f) {
  std::vector<PlaneGrid> planes;
  for (int k = 0; k < K; ++k) {
    PlaneGrid p = plan.make_plane();
    for (std::size_t iy = 0; iy < p.ny; ++iy)
      for (std::size_t is = 0; is < p.ns; ++is) p.at(iy, is) = f(k, p.y(iy), p.s(is));
    planes.push_back(std::move(p));
  }
  return planes;
}

template <class Fn>
DataGrid make_data(const ScanGeometry& g, Fn f) {
  DataGrid d(g);
  for (int k = 0; k < g.K; ++k)
    for (int m = -g.L; m <= g.L; ++m)
      for (int l = 0; l <= g.M; ++l) d.at(k, m, l) = f(k, g.height(m), g.radius(l));
  return d;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

const ScanGeometry kGeo{1.0, 0.8, 2.0, 4.0, 24, 20, 80};

}  // namespace

TEST_CASE("stage-1 lattice for a volume") {
  const VolumeShape shape = reconstruction_shape(kGeo, 10, 8);
  const ReconPlanGrid plan = ReconPlanGrid::for_volume(kGeo, shape);
  CHECK(plan.ny == shape.depth());
  CHECK(plan.dy == shape.dz);
  CHECK(plan.y0 == doctest::Approx(-1.0));
  CHECK(plan.ds == kGeo.radius_step());
  CHECK(plan.s_max() >= 2.0 * kGeo.a1);
  ReconPlanGrid bad = plan;
  bad.ns = 1;
  check_error(ErrorCode::Validation, [&] { bad.validate(); });
}

TEST_CASE("height integral of constant data is the chord length") {
  const ScanGeometry g{1.0, 1.0, 1.0, 4.0, 8, 10, 40};
  const DataGrid ones = make_data(g, [](int, double, double) { return 1.0; });
  ReconPlanGrid plan{5, 11, 0.25, 0.1, -0.5};
  const PlaneGrid p = mys_backprojection(ones, 3, plan);
  for (std::size_t iy = 0; iy < p.ny; ++iy)
    for (std::size_t is = 0; is < p.ns; ++is) CHECK(std::abs(p.at(iy, is) - 2.0) < 1e-12);

  const DataGrid zero(g);
  for (double v : mys_backprojection(zero, 0, plan).values) CHECK(v == 0.0);
  check_error(ErrorCode::Validation, [&] { mys_backprojection(ones, 8, plan); });

  // data vanish beyond r0: the integrand drops out where (y - y')^2 + s^2 > r0^2
  const ScanGeometry big{1.0, 1.0, 4.0, 2.0, 4, 400, 200};
  const DataGrid b = make_data(big, [](int, double, double) { return 1.0; });
  const ReconPlanGrid one{1, 2, 1.0, 1.2, 0.0};
  const PlaneGrid q = mys_backprojection(b, 0, one);
  CHECK(std::abs(q.at(0, 0) - 4.0) < 2e-2);
  CHECK(std::abs(q.at(0, 1) - 2.0 * std::sqrt(4.0 - 1.44)) < 2e-2);
}

TEST_CASE("height integral of a truncated radius profile") {
  // data = 1 for r <= 1: at (y, s) = (0, 0) the integrand is 1 on |y'| <= 1
  const ScanGeometry g{1.0, 0.8, 2.0, 4.0, 4, 40, 80};
  const DataGrid d = make_data(g, [](int, double, double r) { return r <= 1.0 ? 1.0 : 0.0; });
  const ReconPlanGrid plan{1, 3, 1.0, 0.05, 0.0};
  CHECK(std::abs(mys_backprojection(d, 1, plan).at(0, 0) - 2.0) <= 2.0 * g.height_step());
}

TEST_CASE("height integral of ball data matches a dense quadrature") {
  const ScanGeometry g{1.0, 0.8, 2.0, 4.0, 8, 100, 400};
  const Phantom ball{{Ball{{0.1, 0.0, 0.2}, 0.5, 1.0}}};
  const DataGrid d = phantom::forward_data(ball, g);
  const ReconPlanGrid plan{9, 40, 0.25, 0.05, -1.0};
  const int k = 2;
  const PlaneGrid p = mys_backprojection(d, k, plan);
  const Point2 xk = g.detector(k);
  double num = 0.0, den = 0.0;
  for (std::size_t iy = 0; iy < p.ny; ++iy) {
    for (std::size_t is = 0; is < p.ns; ++is) {
      const double y = p.y(iy), s = p.s(is);
      const int n = 2000;  // ten times the data height resolution
      double ref = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double yp = -2.0 + 4.0 * i / n;
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        const double dist = std::sqrt(std::pow(xk[0] - 0.1, 2) + xk[1] * xk[1] + std::pow(yp - 0.2, 2));
        ref += w * phantom::cap_fraction(dist, std::sqrt((y - yp) * (y - yp) + s * s), 0.5);
      }
      ref *= 4.0 / n;
      num += std::pow(p.at(iy, is) - ref, 2);
      den += ref * ref;
    }
  }
  CHECK(std::sqrt(num / den) < 1e-2);
}

TEST_CASE("height integral matches a dense quadrature of smooth data") {
  const ScanGeometry g{1.0, 0.8, 2.0, 4.0, 4, 100, 400};
  const DataGrid d = make_data(g, [](int k, double y, double r) { return (1.0 + k) * std::exp(-r * r) * (1.0 + 0.2 * y); });
  const ReconPlanGrid plan{9, 30, 0.25, 0.05, -1.0};
  const PlaneGrid p = mys_backprojection(d, 2, plan);
  double worst = 0.0;
  for (std::size_t iy = 0; iy < p.ny; ++iy) {
    for (std::size_t is = 0; is < p.ns; ++is) {
      const double y = p.y(iy), s = p.s(is);
      const int n = 20000;
      double ref = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double yp = -2.0 + 4.0 * i / n;
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        ref += w * 3.0 * std::exp(-((y - yp) * (y - yp) + s * s)) * (1.0 + 0.2 * yp);
      }
      ref *= 4.0 / n;
      worst = std::max(worst, std::abs(p.at(iy, is) - ref));
    }
  }
  CHECK(worst < 1e-2);
}

TEST_CASE("detector sum of model planes") {
  const VolumeShape shape = reconstruction_shape(kGeo, 12, 6);
  const ReconPlanGrid plan = ReconPlanGrid::for_volume(kGeo, shape);

  SUBCASE("planes equal to one give 2 pi inside the ellipse") {
    const Volume v = mx_backprojection(make_planes(plan, kGeo.K, [](int, double, double) { return 1.0; }), kGeo, shape);
    for (int n3 = shape.n3_min(); n3 <= shape.n3_max(); ++n3)
      for (int n2 = -shape.nx; n2 <= shape.nx; ++n2)
        for (int n1 = -shape.nx; n1 <= shape.nx; ++n1) {
          const bool in = kGeo.inside_ellipse(shape.x(n1), shape.x(n2));
          CHECK(std::abs(v.at(n1, n2, n3) - (in ? 2.0 * pi : 0.0)) < 1e-12);
        }
  }
  SUBCASE("linear and quadratic profiles") {
    const auto lin = make_planes(plan, kGeo.K, [](int, double y, double s) { return s * (1.0 + y); });
    const auto quad = make_planes(plan, kGeo.K, [](int, double, double s) { return s * s; });
    const Volume vl = mx_backprojection(lin, kGeo, shape, false);
    const Volume vq = mx_backprojection(quad, kGeo, shape, false);
    for (int n3 = shape.n3_min(); n3 <= shape.n3_max(); ++n3)
      for (int n2 = -shape.nx; n2 <= shape.nx; n2 += 3)
        for (int n1 = -shape.nx; n1 <= shape.nx; n1 += 3) {
          double exact = 0.0, interp = 0.0;
          for (int k = 0; k < kGeo.K; ++k) {
            const Point2 xk = kGeo.detector(k);
            const double dist = std::hypot(shape.x(n1) - xk[0], shape.x(n2) - xk[1]);
            exact += dist * (1.0 + shape.z(n3));
            // linear interpolant of s^2 between neighbouring samples
            const double t = dist / plan.ds;
            const double i0 = std::floor(t);
            const double f = t - i0;
            const double a = i0 * plan.ds, b = (i0 + 1.0) * plan.ds;
            interp += (1.0 - f) * a * a + f * b * b;
          }
          CHECK(std::abs(vl.at(n1, n2, n3) - 2.0 * pi / kGeo.K * exact) < 1e-12);
          CHECK(std::abs(vq.at(n1, n2, n3) - 2.0 * pi / kGeo.K * interp) < 1e-12);
        }
  }
  SUBCASE("linearity") {
    const auto a = make_planes(plan, kGeo.K, [](int k, double y, double s) { return std::cos(s + k) * y; });
    const auto b = make_planes(plan, kGeo.K, [](int k, double, double s) { return std::exp(-s) * k; });
    auto c = a;
    for (std::size_t k = 0; k < c.size(); ++k)
      for (std::size_t i = 0; i < c[k].values.size(); ++i) c[k].values[i] = 2.0 * a[k].values[i] - 0.5 * b[k].values[i];
    const Volume va = mx_backprojection(a, kGeo, shape), vb = mx_backprojection(b, kGeo, shape);
    const Volume vc = mx_backprojection(c, kGeo, shape);
    for (std::size_t i = 0; i < vc.values().size(); ++i)
      CHECK(std::abs(vc.values()[i] - (2.0 * va.values()[i] - 0.5 * vb.values()[i])) < 1e-12);
  }
}

TEST_CASE("detector sum validation") {
  const VolumeShape shape = reconstruction_shape(kGeo, 8, 6);
  const ReconPlanGrid plan = ReconPlanGrid::for_volume(kGeo, shape);
  auto planes = make_planes(plan, kGeo.K, [](int, double, double) { return 1.0; });
  auto fewer = planes;
  fewer.pop_back();
  check_error(ErrorCode::Validation, [&] { mx_backprojection(fewer, kGeo, shape); });
  auto mixed = planes;
  mixed[3] = PlaneGrid(plan.ny, plan.ns, plan.dy, 2.0 * plan.ds, plan.y0);
  check_error(ErrorCode::Validation, [&] { mx_backprojection(mixed, kGeo, shape); });
  ReconPlanGrid narrow = plan;
  narrow.ns = 5;
  check_error(ErrorCode::Validation,
              [&] { mx_backprojection(make_planes(narrow, kGeo.K, [](int, double, double) { return 1.0; }), kGeo, shape); });
  ReconPlanGrid shifted = plan;
  shifted.y0 += 0.5 * plan.dy;
  check_error(ErrorCode::Validation,
              [&] { ubp_backprojection(make_planes(shifted, kGeo.K, [](int, double, double) { return 1.0; }), kGeo, shape); });
}

TEST_CASE("universal backprojection weights on a circle") {
  const ScanGeometry g{1.0, 1.0, 2.0, 4.0, 32, 20, 80};
  const VolumeShape shape = reconstruction_shape(g, 10, 4);
  const ReconPlanGrid plan = ReconPlanGrid::for_volume(g, shape);
  const auto planes = make_planes(plan, g.K, [](int k, double y, double s) { return s * (2.0 + y) + 0.1 * k; });
  const Volume v = ubp_backprojection(planes, g, shape);
  for (int n3 = shape.n3_min(); n3 <= shape.n3_max(); ++n3)
    for (int n2 = -shape.nx; n2 <= shape.nx; ++n2)
      for (int n1 = -shape.nx; n1 <= shape.nx; ++n1) {
        const double x1 = shape.x(n1), x2 = shape.x(n2);
        double ref = 0.0;
        if (g.inside_ellipse(x1, x2)) {
          for (int k = 0; k < g.K; ++k) {
            const double th = 2.0 * pi * k / g.K;
            const double c = std::cos(th), s = std::sin(th);
            const double dist = std::hypot(x1 - c, x2 - s);
            ref += (c * (x1 - c) + s * (x2 - s)) * (dist * (2.0 + shape.z(n3)) + 0.1 * k);
          }
          ref /= g.K;
        }
        CHECK(std::abs(v.at(n1, n2, n3) - ref) < 1e-12);
      }
}

TEST_CASE("results do not depend on the thread count") {
  const DataGrid d = make_data(kGeo, [](int k, double y, double r) { return std::sin(3.0 * r + k) * std::exp(-y * y); });
  const VolumeShape shape = reconstruction_shape(kGeo, 16, 10);
  const ReconPlanGrid plan = ReconPlanGrid::for_volume(kGeo, shape);
  std::vector<std::vector<double>> mx_runs, ubp_runs;
  for (unsigned t : {1u, 2u, 8u}) {
    set_num_threads(t);
    const auto planes = mys_all(d, plan);
    const Volume vm = mx_backprojection(planes, kGeo, shape);
    const Volume vu = ubp_backprojection(planes, kGeo, shape);
    mx_runs.emplace_back(vm.values().begin(), vm.values().end());
    ubp_runs.emplace_back(vu.values().begin(), vu.values().end());
  }
  set_num_threads(0);
  CHECK(same_bits(mx_runs[0], mx_runs[1]));
  CHECK(same_bits(mx_runs[0], mx_runs[2]));
  CHECK(same_bits(ubp_runs[0], ubp_runs[1]));
  CHECK(same_bits(ubp_runs[0], ubp_runs[2]));
}
