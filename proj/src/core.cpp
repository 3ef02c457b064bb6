#include "srt/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace srt {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Validation: return "validation";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Geometry: return "geometry";
    case ErrorCode::Io: return "io";
    case ErrorCode::MalformedHeader: return "malformed-header";
    case ErrorCode::Version: return "version";
    case ErrorCode::HeaderTag: return "header-tag";
    case ErrorCode::Truncated: return "truncated";
    case ErrorCode::NonFinite: return "non-finite";
  }
  return "unknown";
}

bool Error::is_io() const noexcept {
  switch (code_) {
    case ErrorCode::Io:
    case ErrorCode::MalformedHeader:
    case ErrorCode::Version:
    case ErrorCode::HeaderTag:
    case ErrorCode::Truncated:
    case ErrorCode::NonFinite:
      return true;
    default:
      return false;
  }
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void check_all_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) fail(ErrorCode::NonFinite, std::string(what) + " contains a non-finite value");
  }
}

}  // namespace

void ScanGeometry::validate() const {
  require(positive_finite(a1) && positive_finite(a2), ErrorCode::Validation, "semi-axes must be positive and finite");
  require(positive_finite(half_height), ErrorCode::Validation, "half height must be positive and finite");
  require(positive_finite(max_radius), ErrorCode::Validation, "max radius must be positive and finite");
  require(K >= 4, ErrorCode::Validation, "K must be at least 4");
  require(L >= 2, ErrorCode::Validation, "L must be at least 2");
  require(M >= 2, ErrorCode::Validation, "M must be at least 2");
}

double ScanGeometry::angle(int k) const { return 2.0 * std::numbers::pi * k / K; }

Point2 ScanGeometry::detector(int k) const {
  const double t = angle(k);
  return {a1 * std::cos(t), a2 * std::sin(t)};
}

double ScanGeometry::height(int m) const { return half_height * m / L; }

double ScanGeometry::radius(int l) const { return max_radius * l / M; }

bool ScanGeometry::inside_ellipse(double x1, double x2) const {
  const double u = x1 / a1;
  const double v = x2 / a2;
  return u * u + v * v < 1.0;
}

DataGrid::DataGrid(const ScanGeometry& geometry) : geometry_(geometry) {
  geometry_.validate();
  values_.assign(static_cast<std::size_t>(K()) * heights() * radii(), 0.0);
}

DataGrid::DataGrid(const ScanGeometry& geometry, std::vector<double> values)
    : geometry_(geometry), values_(std::move(values)) {
  geometry_.validate();
  require(values_.size() == static_cast<std::size_t>(K()) * heights() * radii(), ErrorCode::Validation,
          "data extents do not match K x (2L+1) x (M+1)");
  check_finite();
}

std::span<double> DataGrid::line(int k, int m) { return {values_.data() + index(k, m, 0), radii()}; }

std::span<const double> DataGrid::line(int k, int m) const { return {values_.data() + index(k, m, 0), radii()}; }

std::span<const double> DataGrid::detector_plane(int k) const {
  return {values_.data() + index(k, -L(), 0), heights() * radii()};
}

void DataGrid::check_finite() const { check_all_finite(values_, "data grid"); }

void VolumeShape::validate() const {
  require(nx >= 1, ErrorCode::Validation, "Nx must be at least 1");
  require(lz >= 0, ErrorCode::Validation, "Lz must be non-negative");
  require(positive_finite(dx) && positive_finite(dz), ErrorCode::Validation, "spacings must be positive and finite");
}

VolumeShape reconstruction_shape(const ScanGeometry& g, int Nx, int Lz) {
  g.validate();
  require(Nx >= 1 && Lz >= 1, ErrorCode::Validation, "Nx and Lz must be positive");
  VolumeShape shape{Nx, Lz, std::max(g.a1, g.a2) / Nx, g.half_height / Lz};
  shape.validate();
  return shape;
}

Volume::Volume(const VolumeShape& shape) : shape_(shape) {
  shape_.validate();
  values_.assign(shape_.voxels(), 0.0);
}

Volume::Volume(const VolumeShape& shape, std::vector<double> values) : shape_(shape), values_(std::move(values)) {
  shape_.validate();
  require(values_.size() == shape_.voxels(), ErrorCode::Validation, "volume extents do not match (2Nx+1)^2 (Lz+1)");
  check_finite();
}

std::span<double> Volume::slice(int n3) { return {values_.data() + index(-shape_.nx, -shape_.nx, n3), shape_.pixels()}; }

std::span<const double> Volume::slice(int n3) const {
  return {values_.data() + index(-shape_.nx, -shape_.nx, n3), shape_.pixels()};
}

void Volume::check_finite() const { check_all_finite(values_, "volume"); }

PlaneGrid::PlaneGrid(std::size_t ny_, std::size_t ns_, double dy_, double ds_, double y0_)
    : ny(ny_), ns(ns_), dy(dy_), ds(ds_), y0(y0_), values(ny_ * ns_, 0.0) {
  require(ny >= 1 && ns >= 2, ErrorCode::Validation, "plane grid needs at least one row and two s samples");
  require(positive_finite(dy) && positive_finite(ds), ErrorCode::Validation, "plane spacings must be positive");
  require(std::isfinite(y0), ErrorCode::Validation, "plane offset must be finite");
}

void PlaneGrid::check_finite() const { check_all_finite(values, "plane grid"); }

bool PlaneGrid::same_lattice(const PlaneGrid& o) const {
  return ny == o.ny && ns == o.ns && dy == o.dy && ds == o.ds && y0 == o.y0;
}

}  // namespace srt
