#include "srt/recon.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "srt/backprojection.hpp"
#include "srt/filters.hpp"
#include "srt/geometry.hpp"
#include "srt/parallel.hpp"

namespace srt::recon {
namespace {

constexpr double kInvTwoPi = 0.5 / std::numbers::pi;
constexpr int kLaplacianPad = 2;

void prepare(const DataGrid& d, const ReconRequest& req, Method expected) {
  static std::once_flag once;
  std::call_once(once, check_constants);
  require(req.method == expected, ErrorCode::Validation, "reconstruction request names a different method");
  req.validate();
  const ScanGeometry& a = d.geometry();
  const ScanGeometry& b = req.geometry;
  require(a.a1 == b.a1 && a.a2 == b.a2 && a.half_height == b.half_height && a.max_radius == b.max_radius &&
              a.K == b.K && a.L == b.L && a.M == b.M,
          ErrorCode::Validation, "data geometry does not match the reconstruction request");
  d.check_finite();
}

void scale_and_mask(Volume& v, const ScanGeometry& g, double c) {
  const VolumeShape& sh = v.shape();
  for (int n3 = sh.n3_min(); n3 <= sh.n3_max(); ++n3) {
    for (int n2 = -sh.nx; n2 <= sh.nx; ++n2) {
      for (int n1 = -sh.nx; n1 <= sh.nx; ++n1) {
        double& x = v.at(n1, n2, n3);
        x = g.inside_ellipse(sh.x(n1), sh.x(n2)) ? c * x : 0.0;
      }
    }
  }
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::Inv3d: return "inv3d";
    case Method::Ubp3d: return "ubp3d";
    case Method::Circular: return "circular";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "inv3d") return Method::Inv3d;
  if (name == "ubp3d") return Method::Ubp3d;
  if (name == "circular") return Method::Circular;
  fail(ErrorCode::Validation, "unknown method '" + std::string(name) + "' (expected inv3d, ubp3d or circular)");
}

ReconRequest ReconRequest::make(Method method, const ScanGeometry& g, int Nx, int Lz) {
  ReconRequest r;
  r.method = method;
  r.geometry = g;
  r.Nx = Nx;
  r.Lz = Lz > 0 ? Lz : g.L;
  return r;
}

void ReconRequest::validate() const {
  geometry.validate();
  require(Nx >= 4, ErrorCode::Validation, "Nx must be at least 4");
  require(Lz >= 4, ErrorCode::Validation, "Lz must be at least 4");
  require(Lz <= geometry.L, ErrorCode::Validation, "Lz must not exceed L");
  if (method == Method::Circular && !geometry.is_circular()) {
    fail(ErrorCode::Geometry, "the circular method needs a1 = a2 (got a1 = " + std::to_string(geometry.a1) +
                                  ", a2 = " + std::to_string(geometry.a2) + ")");
  }
}

VolumeShape ReconRequest::shape() const { return reconstruction_shape(geometry, Nx, Lz); }

void check_constants() {
  // circular cylinder, m = 1: |S^{m+1}| / (2 (2 pi)^{m+1}) = 1 / (2 pi)
  const double circular = geometry::unit_sphere_area(3) / (2.0 * std::pow(2.0 * std::numbers::pi, 2));
  // the elliptic formula reduces to the circular one for A = Id
  const bool ok = std::abs(circular - kInvTwoPi) <= 1e-14 &&
                  std::abs(geometry::decomposition_constant(2, 1) - 0.5 * std::numbers::pi) <= 1e-14 &&
                  std::abs(geometry::unit_sphere_area(2) - 2.0 * std::numbers::pi) <= 1e-14;
  if (!ok) fail(ErrorCode::Domain, "inversion constants disagree with the geometry module");
}

Volume reconstruct_inv3d(const DataGrid& d, const ReconRequest& req) {
  prepare(d, req, Method::Inv3d);
  const ScanGeometry& g = d.geometry();
  const VolumeShape shape = req.shape();
  VolumeShape padded = shape;
  padded.nx += kLaplacianPad;

  const DataGrid rg = filters::multiply_radius_power(d, 1);
  const auto plan = backprojection::ReconPlanGrid::for_volume(g, padded);
  const Volume bp = backprojection::mx_backprojection(backprojection::mys_all(rg, plan), g, padded, false);
  const Volume lap = filters::laplacian_Ax(bp, g.a1, g.a2);

  Volume out(shape);
  for (int n3 = shape.n3_min(); n3 <= shape.n3_max(); ++n3) {
    for (int n2 = -shape.nx; n2 <= shape.nx; ++n2) {
      for (int n1 = -shape.nx; n1 <= shape.nx; ++n1) out.at(n1, n2, n3) = lap.at(n1, n2, n3);
    }
  }
  scale_and_mask(out, g, -g.a1 * g.a2 * kInvTwoPi);
  return out;
}

Volume reconstruct_ubp(const DataGrid& d, const ReconRequest& req) {
  prepare(d, req, Method::Ubp3d);
  const ScanGeometry& g = d.geometry();
  const VolumeShape shape = req.shape();
  const DataGrid filtered = filters::ubp_filter_data(d);
  const auto plan = backprojection::ReconPlanGrid::for_volume(g, shape);
  return backprojection::ubp_backprojection(backprojection::mys_all(filtered, plan), g, shape);
}

Volume reconstruct_circular(const DataGrid& d, const ReconRequest& req) {
  prepare(d, req, Method::Circular);
  const ScanGeometry& g = d.geometry();
  const VolumeShape shape = req.shape();
  const DataGrid rg = filters::multiply_radius_power(d, 1);
  const auto plan = backprojection::ReconPlanGrid::for_volume(g, shape);
  std::vector<PlaneGrid> planes = backprojection::mys_all(rg, plan);
  parallel_for(planes.size(), [&](std::size_t k) { planes[k] = filters::diff2_plane(planes[k]); });
  Volume out = backprojection::mx_backprojection(planes, g, shape, true);
  scale_and_mask(out, g, -kInvTwoPi);
  return out;
}

Volume reconstruct(const DataGrid& d, const ReconRequest& req) {
  switch (req.method) {
    case Method::Inv3d: return reconstruct_inv3d(d, req);
    case Method::Ubp3d: return reconstruct_ubp(d, req);
    case Method::Circular: return reconstruct_circular(d, req);
  }
  fail(ErrorCode::Validation, "unknown reconstruction method");
}

}  // namespace srt::recon
