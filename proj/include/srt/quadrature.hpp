#pragma once

#include <functional>
#include <span>
#include <vector>

namespace srt::quadrature {

/// Scalar field on R^dim.
struct FieldFn {
  int dim = 3;
  std::function<double(std::span<const double>)> eval;

  double operator()(std::span<const double> z) const { return eval(z); }
};

/// Mean of f over the sphere {center + r w : |w| = 1} in R^dim, 2 <= dim <= 4.
///
/// Product rule in standard spherical coordinates: nq offset trapezoid nodes
/// in the periodic angle and nq midpoint nodes in each polar angle. The polar
/// weights integrate the sin^j Jacobian exactly against the cosine
/// interpolant through the midpoint samples (Fejer's first rule), so the rule
/// is exact for constants and spectrally accurate for smooth f.
/// r = 0 returns f(center).
double spherical_mean_numeric(const FieldFn& f, std::span<const double> center, double r, int nq);

/// Relative residual |lhs - rhs| / (|lhs| + 1e-300) of the cylinder
/// decomposition M_{x,y} f = C_{n,m} |r|^{1-n} M_{y,s}(|s|^{n-1} M_x f) at
/// the center (x, y), for n = 2 and m = f.dim - 2 in {1, 2}.
///
/// lhs is spherical_mean_numeric in R^{n+m}. On the right, M_x is the
/// circle mean at nq nodes and M_{y,s} integrates over the half sphere
/// S^m_+ = {s >= 0} (evenness in s), with the |s|^{n-1} factor and the
/// surface element folded into cell-exact midpoint weights; two resolutions
/// (nq/2 and nq cells per angle) are Richardson-combined.
double factorization_residual(const FieldFn& f, std::span<const double> x, std::span<const double> y, double r,
                              int nq);

/// Fejer-type weights for int_0^pi sin(b)^p g(b) db at the n midpoints
/// b_j = (j + 1/2) pi / n, p in [0, 3].
std::vector<double> polar_weights(int n, int p);

}  // namespace srt::quadrature
