#ifndef VSPECTRA_QUADRATURE_HPP
#define VSPECTRA_QUADRATURE_HPP

#include <complex>
#include <span>
#include <vector>

namespace vspectra {

/// Radial quadrature grid for L^2(R^3) integrals of radially symmetric
/// Fourier data: ||f||^2 = 4 pi Int_0^inf |fhat(r)|^2 r^2 dr. Composite
/// Simpson, applied in log-r on the inner segment (resolves the r -> 0
/// region that controls algebraic decay) and in r on the outer one.
struct RadialGrid {
  std::vector<double> r;
  std::vector<double> w;  // weights for Int f(r) dr

  // n_log, n_lin are interval counts per segment and must be even
  static RadialGrid log_linear(double r_min, double r_split, double r_max,
                               int n_log = 4096, int n_lin = 4096);
  // uniform Simpson on [lo, hi]
  static RadialGrid linear(double lo, double hi, int n = 4096);

  // every other node (Simpson at half resolution); used for the
  // quadrature-acceptance check
  RadialGrid coarsened() const;

  std::size_t size() const { return r.size(); }
};

// Int |f|^2 r^{2k+2} dr * 4*pi   (squared L^2 norm of nabla^k f)
double radial_norm_sq(const RadialGrid& grid, std::span<const std::complex<double>> f,
                      int k);

// Int f(x) dx on a sampled 1-d grid (trapezoid; used for envelope integrals)
double trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace vspectra

#endif
