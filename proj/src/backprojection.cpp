#include "srt/backprojection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "srt/geometry.hpp"
#include "srt/parallel.hpp"
#include "srt/simd/kernels.hpp"

namespace srt::backprojection {
namespace {

constexpr std::size_t kPixelChunk = 64;

double box_corner_distance(const ScanGeometry& g, const VolumeShape& shape) {
  const double half = shape.x(shape.nx);
  double best = 0.0;
  for (int k = 0; k < g.K; ++k) {
    const Point2 xk = g.detector(k);
    for (double c1 : {-half, half}) {
      for (double c2 : {-half, half}) best = std::max(best, std::hypot(c1 - xk[0], c2 - xk[1]));
    }
  }
  return best;
}

// Plane row used by every volume layer; throws when a layer height is not on
// the plane lattice.
std::vector<std::size_t> layer_rows(const PlaneGrid& plane, const VolumeShape& shape) {
  std::vector<std::size_t> rows(shape.depth());
  for (std::size_t layer = 0; layer < rows.size(); ++layer) {
    const double z = shape.z(shape.n3_min() + static_cast<int>(layer));
    const double t = (z - plane.y0) / plane.dy;
    const double ti = std::round(t);
    if (std::abs(t - ti) > 1e-9 * std::max(1.0, std::abs(t)) || ti < 0.0 ||
        ti > static_cast<double>(plane.ny - 1)) {
      fail(ErrorCode::Validation, "volume height " + std::to_string(z) + " is not on the stage-1 height lattice");
    }
    rows[layer] = static_cast<std::size_t>(ti);
  }
  return rows;
}

void check_planes(const std::vector<PlaneGrid>& planes, const ScanGeometry& g, const VolumeShape& shape) {
  g.validate();
  shape.validate();
  require(planes.size() == static_cast<std::size_t>(g.K), ErrorCode::Validation,
          "one stage-1 plane per detector is required");
  for (const PlaneGrid& p : planes) {
    require(p.values.size() == p.ny * p.ns, ErrorCode::Validation, "stage-1 plane has inconsistent extents");
    require(p.same_lattice(planes.front()), ErrorCode::Validation, "stage-1 planes have mismatched lattices");
  }
  const PlaneGrid& p = planes.front();
  require(p.ns >= 2, ErrorCode::Validation, "stage-1 planes need at least two s samples");
  require(p.ds * static_cast<double>(p.ns - 1) >= box_corner_distance(g, shape) * (1.0 - 1e-12),
          ErrorCode::Validation, "stage-1 planes do not cover the reconstruction box in s");
}

// out(x, z) = sum_k w_k(x) q_k(z, |x - x_k|), k ascending for every voxel.
template <class Weight>
Volume detector_sum(const std::vector<PlaneGrid>& planes, const ScanGeometry& g, const VolumeShape& shape, bool mask,
                    Weight weight) {
  check_planes(planes, g, shape);
  const std::size_t depth = shape.depth();
  const std::size_t ns = planes.front().ns;
  const double inv_ds = 1.0 / planes.front().ds;
  const std::vector<std::size_t> rows = layer_rows(planes.front(), shape);

  // transpose to [is][layer] so each (k, pixel) update is contiguous in height
  std::vector<std::vector<double>> qt(planes.size());
  parallel_for(planes.size(), [&](std::size_t k) {
    std::vector<double>& t = qt[k];
    t.resize(ns * depth);
    for (std::size_t layer = 0; layer < depth; ++layer) {
      const auto row = planes[k].row(rows[layer]);
      for (std::size_t is = 0; is < ns; ++is) t[is * depth + layer] = row[is];
    }
  });

  std::vector<std::pair<int, int>> pixels;
  pixels.reserve(shape.pixels());
  for (int n2 = -shape.nx; n2 <= shape.nx; ++n2) {
    for (int n1 = -shape.nx; n1 <= shape.nx; ++n1) {
      if (!mask || g.inside_ellipse(shape.x(n1), shape.x(n2))) pixels.emplace_back(n1, n2);
    }
  }
  std::vector<Point2> detectors(static_cast<std::size_t>(g.K));
  for (int k = 0; k < g.K; ++k) detectors[static_cast<std::size_t>(k)] = g.detector(k);

  Volume out(shape);
  const simd::Kernels& kern = simd::active();
  const std::size_t chunks = (pixels.size() + kPixelChunk - 1) / kPixelChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = c * kPixelChunk;
    const std::size_t end = std::min(pixels.size(), begin + kPixelChunk);
    std::vector<double> acc((end - begin) * depth, 0.0);
    for (std::size_t k = 0; k < detectors.size(); ++k) {
      const double* q = qt[k].data();
      for (std::size_t p = begin; p < end; ++p) {
        const double x1 = shape.x(pixels[p].first);
        const double x2 = shape.x(pixels[p].second);
        const double e1 = x1 - detectors[k][0];
        const double e2 = x2 - detectors[k][1];
        const double dist = std::sqrt(e1 * e1 + e2 * e2);
        const double t = dist * inv_ds;
        const double fi = std::floor(t);
        if (!(fi < static_cast<double>(ns - 1))) continue;
        const auto i0 = static_cast<std::size_t>(fi);
        const double f = t - fi;
        const double w = weight(k, e1, e2);
        kern.lerp_axpy(q + i0 * depth, q + (i0 + 1) * depth, w * (1.0 - f), w * f,
                       acc.data() + (p - begin) * depth, depth);
      }
    }
    for (std::size_t p = begin; p < end; ++p) {
      for (std::size_t layer = 0; layer < depth; ++layer) {
        out.at(pixels[p].first, pixels[p].second, shape.n3_min() + static_cast<int>(layer)) =
            acc[(p - begin) * depth + layer];
      }
    }
  });
  return out;
}

}  // namespace

ReconPlanGrid ReconPlanGrid::for_volume(const ScanGeometry& g, const VolumeShape& shape) {
  g.validate();
  shape.validate();
  ReconPlanGrid plan;
  plan.ny = shape.depth();
  plan.dy = shape.dz;
  plan.y0 = shape.z(shape.n3_min());
  plan.ds = g.radius_step();
  const double smax = std::max(box_corner_distance(g, shape), 2.0 * std::max(g.a1, g.a2));
  plan.ns = static_cast<std::size_t>(std::ceil(smax / plan.ds)) + 2;
  return plan;
}

void ReconPlanGrid::validate() const {
  require(ny >= 1 && ns >= 2, ErrorCode::Validation, "stage-1 lattice needs ny >= 1 and ns >= 2");
  require(std::isfinite(dy) && dy > 0.0 && std::isfinite(ds) && ds > 0.0 && std::isfinite(y0), ErrorCode::Validation,
          "stage-1 lattice spacings must be positive");
}

PlaneGrid mys_backprojection(const DataGrid& d, int k, const ReconPlanGrid& plan) {
  plan.validate();
  const ScanGeometry& g = d.geometry();
  require(k >= 0 && k < g.K, ErrorCode::Validation, "detector index out of range");
  PlaneGrid out = plan.make_plane();
  const double r0 = g.max_radius;
  const double inv_dr = 1.0 / g.radius_step();
  const double hstep = g.height_step();
  const auto last = static_cast<std::size_t>(g.M);

  std::vector<double> s2(plan.ns);
  for (std::size_t is = 0; is < plan.ns; ++is) s2[is] = out.s(is) * out.s(is);

  const simd::Kernels& kern = simd::active();
  for (std::size_t iy = 0; iy < plan.ny; ++iy) {
    const double y = out.y(iy);
    double* row = out.row(iy).data();
    for (int m = -g.L; m <= g.L; ++m) {
      const double dy = y - g.height(m);
      if (std::abs(dy) > r0) continue;
      const double dy2 = dy * dy;
      // samples with sqrt(dy^2 + s^2) > r0 contribute nothing
      const double reach = std::sqrt(std::max(0.0, r0 * r0 - dy2)) / plan.ds;
      const std::size_t n = std::min(plan.ns, static_cast<std::size_t>(reach) + 2);
      const double w = (m == -g.L || m == g.L) ? 0.5 * hstep : hstep;
      kern.radial_gather(d.line(k, m).data(), last, inv_dr, dy2, s2.data(), n, w, row);
    }
  }
  return out;
}

std::vector<PlaneGrid> mys_all(const DataGrid& d, const ReconPlanGrid& plan) {
  std::vector<PlaneGrid> planes(static_cast<std::size_t>(d.K()));
  parallel_for(planes.size(), [&](std::size_t k) { planes[k] = mys_backprojection(d, static_cast<int>(k), plan); });
  return planes;
}

Volume mx_backprojection(const std::vector<PlaneGrid>& planes, const ScanGeometry& g, const VolumeShape& shape,
                         bool mask) {
  const double w = 2.0 * std::numbers::pi / g.K;
  return detector_sum(planes, g, shape, mask, [w](std::size_t, double, double) { return w; });
}

Volume ubp_backprojection(const std::vector<PlaneGrid>& planes, const ScanGeometry& g, const VolumeShape& shape) {
  const geometry::EllipseBoundary boundary(g);
  std::vector<Point2> scaled_normal(static_cast<std::size_t>(g.K));
  for (int k = 0; k < g.K; ++k) {
    const double theta = g.angle(k);
    const Point2 nu = boundary.normal(theta);
    // (1 / 2pi) (2pi / K) |dx/dtheta|
    const double c = boundary.arclength_element(theta) / g.K;
    scaled_normal[static_cast<std::size_t>(k)] = {c * nu[0], c * nu[1]};
  }
  return detector_sum(planes, g, shape, true, [&](std::size_t k, double e1, double e2) {
    return scaled_normal[k][0] * e1 + scaled_normal[k][1] * e2;
  });
}

}  // namespace srt::backprojection
