#pragma once

#include <string_view>

#include "srt/core.hpp"

namespace srt::recon {

enum class Method { Inv3d, Ubp3d, Circular };

const char* to_string(Method m);
/// "inv3d" | "ubp3d" | "circular"; anything else is a validation error.
Method parse_method(std::string_view name);

struct ReconRequest {
  Method method = Method::Inv3d;
  ScanGeometry geometry;
  int Nx = 50;
  /// Number of height intervals of the volume (Lz + 1 layers); the volume
  /// always spans |y| <= H/2 with dz = H/Lz. Must satisfy 4 <= Lz <= L.
  int Lz = 0;

  /// Request with Lz defaulted to L.
  static ReconRequest make(Method method, const ScanGeometry& g, int Nx, int Lz = 0);
  /// Nx, Lz >= 4, Lz <= L; Circular needs a1 = a2 (geometry error).
  void validate() const;
  VolumeShape shape() const;
};

/// f = -(a1 a2 / 2pi) Lap_A M_x^# M_{y,s}^# (r g), Laplacian evaluated on a
/// grid padded by two voxels, then cropped and masked to E_A.
Volume reconstruct_inv3d(const DataGrid& d, const ReconRequest& req);

/// Universal backprojection with the r^-1 d/dr r^-1 d/dr r radial filter and
/// normal / arclength detector weights.
Volume reconstruct_ubp(const DataGrid& d, const ReconRequest& req);

/// f = -(1/2pi) M_x^# d^2/ds^2 M_{y,s}^# (r g) for a circular cylinder.
Volume reconstruct_circular(const DataGrid& d, const ReconRequest& req);

/// Dispatches on req.method.
Volume reconstruct(const DataGrid& d, const ReconRequest& req);

/// Verifies the hard-wired pipeline constants against the geometry module;
/// runs once per process before the first reconstruction.
void check_constants();

}  // namespace srt::recon
