#ifndef VSPECTRA_CUBIC_HPP
#define VSPECTRA_CUBIC_HPP

#include <array>
#include <complex>

namespace vspectra {

struct CubicRoots {
  std::array<std::complex<double>, 3> roots;
  bool used_fallback = false;  // companion-matrix path (near-multiple roots)
};

/// Roots of x^3 + p x^2 + q x + s with real coefficients. Closed form
/// (trigonometric / Cardano by discriminant sign) followed by one or two
/// guarded Newton steps; falls back to a companion-matrix eigendecomposition
/// when the discriminant is below 1e-12 relative to its own scale. Complex
/// roots are returned as an exact conjugate pair, +Im first.
CubicRoots solve_monic_cubic(double p, double q, double s);

/// Companion-matrix eigenvalues of the same polynomial via a dense solver,
/// after rescaling x -> sigma*z to keep the companion well conditioned.
/// Used as the degenerate fallback; also serves as an independent root
/// oracle in tests.
std::array<std::complex<double>, 3> companion_roots(double p, double q, double s);

std::complex<double> cubic_eval(double p, double q, double s, std::complex<double> x);
std::complex<double> cubic_deriv(double p, double q, double s, std::complex<double> x);

}  // namespace vspectra

#endif
