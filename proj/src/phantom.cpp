#include "srt/phantom.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <sstream>
#include <string>

#include "srt/parallel.hpp"

namespace srt {
namespace {

double dist3(const Point3& a, const Point3& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

void check_args(double d, double r, double rho) {
  require(std::isfinite(d) && std::isfinite(r) && std::isfinite(rho), ErrorCode::Domain,
          "ball mean arguments must be finite");
  require(d >= 0.0 && r >= 0.0, ErrorCode::Domain, "distance and radius must be non-negative");
  require(rho > 0.0, ErrorCode::Domain, "ball radius must be positive");
}

// cos of the half-opening angle of the part of the sphere inside the ball.
double cos_edge(double d, double r, double rho) {
  return std::clamp((d * d + r * r - rho * rho) / (2.0 * d * r), -1.0, 1.0);
}

// Distance from an interior point to the ellipse boundary.
double distance_to_boundary(double a1, double a2, double x1, double x2) {
  constexpr int kSamples = 4096;
  auto dist = [&](double t) { return std::hypot(a1 * std::cos(t) - x1, a2 * std::sin(t) - x2); };
  const double step = 2.0 * std::numbers::pi / kSamples;
  int best = 0;
  double best_d = dist(0.0);
  for (int i = 1; i < kSamples; ++i) {
    const double d = dist(i * step);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  // golden-section refinement within the neighbouring samples
  double lo = (best - 1) * step;
  double hi = (best + 1) * step;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; ++it) {
    const double u = hi - g * (hi - lo);
    const double v = lo + g * (hi - lo);
    if (dist(u) < dist(v)) {
      hi = v;
    } else {
      lo = u;
    }
  }
  return std::min(best_d, dist(0.5 * (lo + hi)));
}

}  // namespace

Phantom Phantom::demo() {
  return Phantom{{
      Ball{{0.3, 0.0, 0.6}, 0.25, 1.0},
      Ball{{-0.35, 0.2, 0.0}, 0.3, 1.0},
      Ball{{0.0, -0.3, -0.7}, 0.2, 1.0},
  }};
}

bool Phantom::contains(const ScanGeometry& g) const {
  for (const Ball& b : balls) {
    if (!(b.radius > 0.0) || !std::isfinite(b.amplitude)) return false;
    if (!g.inside_ellipse(b.center[0], b.center[1])) return false;
    if (distance_to_boundary(g.a1, g.a2, b.center[0], b.center[1]) <= b.radius) return false;
    if (std::abs(b.center[2]) + b.radius >= g.half_height) return false;
  }
  return true;
}

void Phantom::validate(const ScanGeometry& g) const {
  g.validate();
  require(!balls.empty(), ErrorCode::Validation, "phantom has no balls");
  require(contains(g), ErrorCode::Validation, "phantom ball leaves the open detector cylinder");
}

double Phantom::value(const Point3& p) const {
  double v = 0.0;
  for (const Ball& b : balls) {
    if (dist3(p, b.center) <= b.radius) v += b.amplitude;
  }
  return v;
}

double Phantom::spherical_mean(const Point3& c, double r) const {
  double v = 0.0;
  for (const Ball& b : balls) v += b.amplitude * phantom::cap_fraction(dist3(c, b.center), std::abs(r), b.radius);
  return v;
}

namespace phantom {

double cap_fraction(double d, double r, double rho) {
  check_args(d, r, rho);
  if (d == 0.0) return r <= rho ? 1.0 : 0.0;
  if (r == 0.0) return d <= rho ? 1.0 : 0.0;
  return 0.5 * (1.0 - cos_edge(d, r, rho));
}

double arc_fraction(double d, double r, double rho) {
  check_args(d, r, rho);
  if (d == 0.0) return r <= rho ? 1.0 : 0.0;
  if (r == 0.0) return d <= rho ? 1.0 : 0.0;
  return std::acos(cos_edge(d, r, rho)) / std::numbers::pi;
}

DataGrid forward_data(const Phantom& p, const ScanGeometry& g) {
  p.validate(g);
  DataGrid data(g);
  parallel_for(static_cast<std::size_t>(g.K), [&](std::size_t ks) {
    const int k = static_cast<int>(ks);
    const Point2 x = g.detector(k);
    for (int m = -g.L; m <= g.L; ++m) {
      const Point3 c{x[0], x[1], g.height(m)};
      auto line = data.line(k, m);
      for (int l = 0; l <= g.M; ++l) line[static_cast<std::size_t>(l)] = p.spherical_mean(c, g.radius(l));
    }
  });
  return data;
}

Volume rasterize(const Phantom& p, int Nx, int Lz, const ScanGeometry& g) {
  g.validate();
  require(Nx >= 2 && Lz >= 2, ErrorCode::Validation, "rasterize needs Nx, Lz >= 2");
  const VolumeShape shape = reconstruction_shape(g, Nx, Lz);
  Volume vol(shape);
  const double hx = 0.25 * shape.dx;
  const double hz = 0.25 * shape.dz;
  const std::size_t layers = shape.depth();
  parallel_for(layers, [&](std::size_t layer) {
    const int n3 = shape.n3_min() + static_cast<int>(layer);
    const double z = shape.z(n3);
    for (int n2 = -Nx; n2 <= Nx; ++n2) {
      for (int n1 = -Nx; n1 <= Nx; ++n1) {
        const double x1 = shape.x(n1);
        const double x2 = shape.x(n2);
        if (!g.inside_ellipse(x1, x2)) continue;
        double sum = 0.0;
        for (double o3 : {-hz, hz})
          for (double o2 : {-hx, hx})
            for (double o1 : {-hx, hx}) sum += p.value({x1 + o1, x2 + o2, z + o3});
        vol.at(n1, n2, n3) = sum / 8.0;
      }
    }
  });
  return vol;
}

Phantom parse(std::istream& in) {
  Phantom p;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind != "ball") fail(ErrorCode::Validation, "phantom line " + std::to_string(lineno) + ": unknown entry '" + kind + "'");
    Ball b;
    if (!(ls >> b.center[0] >> b.center[1] >> b.center[2] >> b.radius >> b.amplitude)) {
      fail(ErrorCode::Validation, "phantom line " + std::to_string(lineno) + ": expected 'ball cx cy cz radius amplitude'");
    }
    std::string extra;
    if (ls >> extra) fail(ErrorCode::Validation, "phantom line " + std::to_string(lineno) + ": trailing tokens");
    if (!(b.radius > 0.0) || !std::isfinite(b.radius) || !std::isfinite(b.amplitude) ||
        !std::isfinite(b.center[0]) || !std::isfinite(b.center[1]) || !std::isfinite(b.center[2])) {
      fail(ErrorCode::Validation, "phantom line " + std::to_string(lineno) + ": invalid ball parameters");
    }
    p.balls.push_back(b);
  }
  return p;
}

Phantom load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open phantom file '" + path.string() + "'");
  return parse(in);
}

void save(const Phantom& p, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out << "# ball cx cy cz radius amplitude (cz is the cylinder axis)\n" << std::setprecision(17);
  for (const Ball& b : p.balls) {
    out << "ball " << b.center[0] << ' ' << b.center[1] << ' ' << b.center[2] << ' ' << b.radius << ' ' << b.amplitude
        << '\n';
  }
  out.flush();
  if (!out) fail(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

}  // namespace phantom
}  // namespace srt
