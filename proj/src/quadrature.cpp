#include "srt/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "srt/error.hpp"
#include "srt/geometry.hpp"

namespace srt::quadrature {
namespace {

constexpr double kPi = std::numbers::pi;

// int_0^pi sin(j b) cos(k b) db
double sin_cos_moment(int j, int k) {
  if (j == k || j == -k) return 0.0;
  const double sign = ((j + k) % 2 == 0) ? 1.0 : -1.0;
  return j * (1.0 - sign) / static_cast<double>(j * j - k * k);
}

// int_0^pi sin(b)^p cos(k b) db
double sin_power_moment(int p, int k) {
  switch (p) {
    case 0: return k == 0 ? kPi : 0.0;
    case 1: return sin_cos_moment(1, k);
    case 2: return k == 0 ? 0.5 * kPi : (k == 2 ? -0.25 * kPi : 0.0);
    case 3: return 0.75 * sin_cos_moment(1, k) - 0.25 * sin_cos_moment(3, k);
    default: fail(ErrorCode::Unsupported, "polar Jacobian power " + std::to_string(p) + " is not supported");
  }
}

// int_a^b sin(t)^p dt
double sin_power_integral(int p, double a, double b) {
  switch (p) {
    case 0: return b - a;
    case 1: return std::cos(a) - std::cos(b);
    case 2: return 0.5 * (b - a) - 0.25 * (std::sin(2.0 * b) - std::sin(2.0 * a));
    case 3: {
      auto F = [](double t) { const double c = std::cos(t); return -c + c * c * c / 3.0; };
      return F(b) - F(a);
    }
    default: fail(ErrorCode::Unsupported, "polar Jacobian power " + std::to_string(p) + " is not supported");
  }
}

struct Rule1d {
  std::vector<double> node;
  std::vector<double> weight;
};

Rule1d periodic_rule(int n) {
  Rule1d rule;
  const double h = 2.0 * kPi / n;
  for (int i = 0; i < n; ++i) {
    rule.node.push_back((i + 0.5) * h);
    rule.weight.push_back(h);
  }
  return rule;
}

Rule1d polar_rule(int n, int p) {
  Rule1d rule;
  rule.weight = polar_weights(n, p);
  for (int j = 0; j < n; ++j) rule.node.push_back((j + 0.5) * kPi / n);
  return rule;
}

// Midpoint nodes on (0, pi) with weights int_cell sin^p.
Rule1d cell_rule(int n, int p) {
  Rule1d rule;
  const double h = kPi / n;
  for (int j = 0; j < n; ++j) {
    rule.node.push_back((j + 0.5) * h);
    rule.weight.push_back(sin_power_integral(p, j * h, (j + 1) * h));
  }
  return rule;
}

// Mean of f(x + s w, y') over the unit circle w.
double circle_mean(const FieldFn& f, std::span<const double> x, std::span<const double> yp, double s, const Rule1d& alpha) {
  std::array<double, 4> z{};
  const std::size_t m = yp.size();
  for (std::size_t i = 0; i < m; ++i) z[2 + i] = yp[i];
  double sum = 0.0;
  for (std::size_t i = 0; i < alpha.node.size(); ++i) {
    z[0] = x[0] + s * std::cos(alpha.node[i]);
    z[1] = x[1] + s * std::sin(alpha.node[i]);
    sum += alpha.weight[i] * f(std::span<const double>(z.data(), 2 + m));
  }
  return sum / (2.0 * kPi);
}

// C_{2,m} |r|^{-1} M_{y,s}(|s| M_x f) on the half sphere with `cells` cells per angle.
double decomposed_mean(const FieldFn& f, std::span<const double> x, std::span<const double> y, double r, int nq,
                       int cells) {
  constexpr int n = 2;
  const int m = f.dim - n;
  const Rule1d alpha = periodic_rule(nq);
  const double scale = geometry::decomposition_constant(n, m) * 2.0 / geometry::unit_sphere_area(m + 1);
  double sum = 0.0;
  if (m == 1) {
    const Rule1d b = cell_rule(cells, n - 1);
    for (int j = 0; j < cells; ++j) {
      const double yp = y[0] + r * std::cos(b.node[j]);
      const double s = r * std::sin(b.node[j]);
      sum += b.weight[j] * circle_mean(f, x, std::span<const double>(&yp, 1), s, alpha);
    }
  } else {
    const Rule1d b1 = cell_rule(cells, n - 1);
    const Rule1d b2 = cell_rule(cells, n);
    for (int j2 = 0; j2 < cells; ++j2) {
      const double sb2 = std::sin(b2.node[j2]);
      for (int j1 = 0; j1 < cells; ++j1) {
        const std::array<double, 2> yp{y[0] + r * std::cos(b1.node[j1]) * sb2, y[1] + r * std::cos(b2.node[j2])};
        const double s = r * std::sin(b1.node[j1]) * sb2;
        sum += b1.weight[j1] * b2.weight[j2] * circle_mean(f, x, yp, s, alpha);
      }
    }
  }
  return scale * sum;
}

}  // namespace

std::vector<double> polar_weights(int n, int p) {
  require(n >= 1, ErrorCode::Domain, "polar rule needs at least one node");
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double b = (j + 0.5) * kPi / n;
    double acc = sin_power_moment(p, 0);
    for (int k = 1; k < n; ++k) acc += 2.0 * sin_power_moment(p, k) * std::cos(k * b);
    w[static_cast<std::size_t>(j)] = acc / n;
  }
  return w;
}

double spherical_mean_numeric(const FieldFn& f, std::span<const double> center, double r, int nq) {
  const int d = f.dim;
  if (d > 4) fail(ErrorCode::Unsupported, "numeric spherical means are limited to dimension <= 4");
  require(d >= 2, ErrorCode::Domain, "numeric spherical means need dimension >= 2");
  require(static_cast<int>(center.size()) == d, ErrorCode::Validation, "center dimension does not match the field");
  require(nq >= 8, ErrorCode::Domain, "quadrature resolution must be at least 8");
  require(std::isfinite(r), ErrorCode::Domain, "radius must be finite");
  if (r == 0.0) return f(center);

  const Rule1d alpha = periodic_rule(nq);
  std::array<double, 4> z{};
  double sum = 0.0;
  if (d == 2) {
    for (int i = 0; i < nq; ++i) {
      z[0] = center[0] + r * std::cos(alpha.node[i]);
      z[1] = center[1] + r * std::sin(alpha.node[i]);
      sum += alpha.weight[i] * f(std::span<const double>(z.data(), 2));
    }
  } else if (d == 3) {
    const Rule1d b = polar_rule(nq, 1);
    for (int j = 0; j < nq; ++j) {
      const double sb = std::sin(b.node[j]);
      const double cb = std::cos(b.node[j]);
      double inner = 0.0;
      for (int i = 0; i < nq; ++i) {
        z[0] = center[0] + r * sb * std::cos(alpha.node[i]);
        z[1] = center[1] + r * sb * std::sin(alpha.node[i]);
        z[2] = center[2] + r * cb;
        inner += alpha.weight[i] * f(std::span<const double>(z.data(), 3));
      }
      sum += b.weight[j] * inner;
    }
  } else {
    const Rule1d b1 = polar_rule(nq, 1);
    const Rule1d b2 = polar_rule(nq, 2);
    for (int j2 = 0; j2 < nq; ++j2) {
      const double s2 = std::sin(b2.node[j2]);
      const double c2 = std::cos(b2.node[j2]);
      double middle = 0.0;
      for (int j1 = 0; j1 < nq; ++j1) {
        const double s1 = std::sin(b1.node[j1]);
        const double c1 = std::cos(b1.node[j1]);
        double inner = 0.0;
        for (int i = 0; i < nq; ++i) {
          z[0] = center[0] + r * s2 * s1 * std::cos(alpha.node[i]);
          z[1] = center[1] + r * s2 * s1 * std::sin(alpha.node[i]);
          z[2] = center[2] + r * s2 * c1;
          z[3] = center[3] + r * c2;
          inner += alpha.weight[i] * f(std::span<const double>(z.data(), 4));
        }
        middle += b1.weight[j1] * inner;
      }
      sum += b2.weight[j2] * middle;
    }
  }
  return sum / geometry::unit_sphere_area(d);
}

double factorization_residual(const FieldFn& f, std::span<const double> x, std::span<const double> y, double r,
                              int nq) {
  const int m = f.dim - 2;
  if (m < 1 || m > 2) fail(ErrorCode::Unsupported, "decomposition residual supports n = 2 with m in {1, 2}");
  require(x.size() == 2 && static_cast<int>(y.size()) == m, ErrorCode::Validation, "center dimensions do not match");
  require(nq >= 8 && nq % 2 == 0, ErrorCode::Domain, "quadrature resolution must be even and at least 8");
  if (r == 0.0 || !std::isfinite(r)) fail(ErrorCode::Domain, "decomposition residual needs a finite radius r != 0");

  std::array<double, 4> c{};
  c[0] = x[0];
  c[1] = x[1];
  for (int i = 0; i < m; ++i) c[2 + i] = y[i];
  const double lhs = spherical_mean_numeric(f, std::span<const double>(c.data(), 2 + m), r, nq);

  const double coarse = decomposed_mean(f, x, y, r, nq, nq / 2);
  const double fine = decomposed_mean(f, x, y, r, nq, nq);
  const double rhs = (4.0 * fine - coarse) / 3.0;
  return std::abs(lhs - rhs) / (std::abs(lhs) + 1e-300);
}

}  // namespace srt::quadrature
