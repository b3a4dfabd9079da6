#include "vspectra/cubic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace vspectra {

namespace {

using cplx = std::complex<double>;

// up to two Newton steps; skipped when F' is too small relative to the
// coefficient scale (multiple-root neighborhood, where Newton degrades)
cplx polish(double p, double q, double s, cplx x) {
  const double coeff_scale = std::max({1.0, std::abs(p), std::abs(q), std::abs(s)});
  for (int it = 0; it < 2; ++it) {
    const cplx f = cubic_eval(p, q, s, x);
    const cplx df = cubic_deriv(p, q, s, x);
    if (std::abs(df) < 1e-12 * coeff_scale) break;
    const cplx dx = f / df;
    x -= dx;
    if (std::abs(dx) < 1e-15 * (1.0 + std::abs(x))) break;
  }
  return x;
}

}  // namespace

std::complex<double> cubic_eval(double p, double q, double s, cplx x) {
  return ((x + p) * x + q) * x + s;
}

std::complex<double> cubic_deriv(double p, double q, double s, cplx x) {
  (void)s;
  return (3.0 * x + 2.0 * p) * x + q;
}

std::array<std::complex<double>, 3> companion_roots(double p, double q, double s) {
  // scale x = sigma*z so the companion entries are O(1)
  const double sigma = std::max(
      {1e-300, std::abs(p), std::sqrt(std::abs(q)), std::cbrt(std::abs(s))});
  const double p1 = p / sigma;
  const double q1 = q / (sigma * sigma);
  const double s1 = s / (sigma * sigma * sigma);
  Eigen::Matrix3d C;
  C << 0, 0, -s1,
       1, 0, -q1,
       0, 1, -p1;
  Eigen::EigenSolver<Eigen::Matrix3d> es(C, /*computeEigenvectors=*/false);
  std::array<cplx, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = es.eigenvalues()(i) * sigma;
  return out;
}

CubicRoots solve_monic_cubic(double p, double q, double s) {
  CubicRoots result;

  if (s == 0.0) {
    // zero root is exact; remaining quadratic x^2 + p x + q solved in the
    // cancellation-free form
    cplx x1, x2;
    const double dq = p * p - 4.0 * q;
    if (dq >= 0.0) {
      const double root = std::sqrt(dq);
      const double big = -0.5 * (p + std::copysign(root, p));
      x1 = cplx(big, 0.0);
      x2 = cplx(big != 0.0 ? q / big : 0.0, 0.0);
    } else {
      x1 = cplx(-p / 2.0, std::sqrt(-dq) / 2.0);
      x2 = std::conj(x1);
    }
    result.roots = {polish(p, q, s, x1), polish(p, q, s, x2), cplx(0.0, 0.0)};
    if (result.roots[0].imag() != 0.0) {
      if (result.roots[0].imag() < 0.0) result.roots[0] = std::conj(result.roots[0]);
      result.roots[1] = std::conj(result.roots[0]);
    }
    return result;
  }

  // depressed form y^3 + P y + Q, x = y - p/3
  const double P = q - p * p / 3.0;
  const double Q = 2.0 * p * p * p / 27.0 - p * q / 3.0 + s;
  const double fourP3 = 4.0 * P * P * P;
  const double Q2_27 = 27.0 * Q * Q;
  const double disc = -fourP3 - Q2_27;
  const double disc_scale = std::max(std::abs(fourP3), Q2_27);

  if (disc_scale == 0.0) {
    // triple root
    const cplx x = cplx(-p / 3.0, 0.0);
    result.roots = {x, x, x};
    return result;
  }
  if (std::abs(disc) < 1e-12 * disc_scale) {
    result.roots = companion_roots(p, q, s);
    result.used_fallback = true;
    return result;
  }

  const double shift = -p / 3.0;
  if (disc > 0.0) {
    // three distinct real roots
    const double m = 2.0 * std::sqrt(-P / 3.0);
    const double arg = std::clamp(3.0 * Q / (P * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const double y = m * std::cos(theta - 2.0 * M_PI * k / 3.0);
      result.roots[k] = polish(p, q, s, cplx(y + shift, 0.0));
    }
    std::sort(result.roots.begin(), result.roots.end(),
              [](const cplx& a, const cplx& b) { return a.real() < b.real(); });
    for (auto& r : result.roots) r = cplx(r.real(), 0.0);
    return result;
  }

  // one real root and a conjugate pair; pick the cube-root branch that
  // avoids cancellation in -Q/2 -+ sqrt(Q^2/4 + P^3/27)
  const double rad = std::sqrt(Q * Q / 4.0 + P * P * P / 27.0);
  const double u3 = (Q >= 0.0) ? (-Q / 2.0 - rad) : (-Q / 2.0 + rad);
  const double u = std::cbrt(u3);
  const double v = (u != 0.0) ? -P / (3.0 * u) : 0.0;
  const double y_real = u + v;

  cplx real_root = polish(p, q, s, cplx(y_real + shift, 0.0));
  real_root = cplx(real_root.real(), 0.0);

  const double re_pair = -0.5 * y_real + shift;
  const double im_pair = 0.5 * std::sqrt(3.0) * std::abs(u - v);
  cplx plus = polish(p, q, s, cplx(re_pair, im_pair));
  if (plus.imag() < 0.0) plus = std::conj(plus);

  result.roots = {plus, std::conj(plus), real_root};
  return result;
}

}  // namespace vspectra
