#ifndef VSPECTRA_SEMIGROUP_HPP
#define VSPECTRA_SEMIGROUP_HPP

#include <array>
#include <vector>

#include "vspectra/dispersion.hpp"
#include "vspectra/quadrature.hpp"
#include "vspectra/ratefit.hpp"

namespace vspectra {

// C-infinity step: 0 for x <= 0, 1 for x >= 1
double cinf_step(double x);

// radial cutoff: 1 for r <= 1, 0 for r >= 2, smooth mollifier between
double psi_cutoff(double r);

enum class FrequencyPart { Full, Low, High };

/// Radially symmetric Fourier-side data (rho, d, phi) on a radial grid,
/// carrying its own quadrature. L^2(R^3) norms are computed by the grid's
/// composite rule; a profile is "quadrature-accepted" when the rule and its
/// half-resolution coarsening agree to 1e-6 relative.
struct RadialProfile {
  RadialGrid grid;
  std::vector<std::array<cplx, 3>> values;
  FrequencyPart part = FrequencyPart::Full;

  double norm(int component, int k = 0) const;
  bool quadrature_accepted(double tol = 1e-6) const;

  RadialProfile low_part() const;   // multiplied by psi(r)
  RadialProfile high_part() const;  // multiplied by 1 - psi(r)
};

// cutoff-shaped generic data: component c equals amp[c]*psi(r) (support r<=2)
RadialProfile make_cutoff_profile(const RadialGrid& grid,
                                  const std::array<double, 3>& amp);

// Pade [6/6] with scaling and squaring
Mat3 matrix_exp(const Mat3& m);

/// e^{tA(r)}: spectral form sum_i e^{lambda_i t} P_i at non-degenerate
/// points, scaling-and-squaring otherwise.
Mat3 mode_exp(const SpectralPoint& point, const SymbolMatrix& sym, double t);

/// Per-mode propagator factory for one wavenumber; satisfies
/// propagator(0) = I and the semigroup property.
class ModePropagator {
public:
  ModePropagator(const DerivedCoeffs& coeffs, const ModelParams& params, double r);
  Mat3 operator()(double t) const;
  const SpectralPoint& point() const { return point_; }

private:
  SymbolMatrix sym_;
  SpectralPoint point_;
};

/// Caches the per-node spectral decomposition of a profile so the linear
/// solution can be sampled at many times cheaply.
class LinearEvolver {
public:
  LinearEvolver(RadialProfile initial, const DerivedCoeffs& coeffs,
                const ModelParams& params);

  RadialProfile at(double t) const;
  std::array<double, 3> norms(double t, int k) const;  // (rho, d, phi)

private:
  RadialProfile p0_;
  std::vector<SpectralPoint> pts_;
  // non-degenerate nodes: c_i = P_i U0, so U(t) = sum_i e^{lambda_i t} c_i
  std::vector<std::array<Eigen::Vector3cd, 3>> modes_;
  std::vector<SymbolMatrix> syms_;
};

// single application of the propagator at every node
RadialProfile evolve_linear(const RadialProfile& profile, const DerivedCoeffs& coeffs,
                            const ModelParams& params, double t);

/// Linear R^3 decay-rate check in the stable regime. Evolves a generic
/// low-frequency profile, fits power laws on t in [t_lo, t_hi] and compares
/// with the expected exponents -3/4 - k/2 (rho, phi) and -5/4 - k/2 (d).
/// The high-frequency remainder is checked against an exponential envelope.
struct DecayFitEntry {
  int component;  // 0 = rho, 1 = d, 2 = phi
  int k;
  RateFit fit;
  double expected;
  bool pass;  // |fitted - expected| <= tolerance
};

struct DecayCheck {
  std::vector<DecayFitEntry> entries;
  double high_freq_rate = 0.0;      // fitted exponential rate of the H part
  double high_freq_envelope = 0.0;  // alpha/4
  bool high_freq_pass = false;
  bool pass = false;
};

DecayCheck decay_envelope_check(const DerivedCoeffs& coeffs, const ModelParams& params,
                                const RadialProfile& profile, int k_max = 3,
                                double t_lo = 1e2, double t_hi = 1e4,
                                double tolerance = 0.05);

// ||Omega(t)|| = e^{-alpha t} ||Omega_0||, exactly
double omega_decay(double omega0_norm, double alpha, double t);

/// Incompressible part: a scalar ODE with closed-form decay.
struct OmegaState {
  double alpha;
  double norm0;
  double norm_at(double t) const { return omega_decay(norm0, alpha, t); }
};

/// Duhamel reference envelopes: time integrals of the linear decay kernels
/// against sampled nonlinear-term norms,
///   S1(t) <= Int (1+t-tau)^{-3/4-k/2} n1 + (1+t-tau)^{-5/4-k/2} n2 dtau
///   S2(t) <= Int (1+t-tau)^{-5/4-k/2} n1 + (1+t-tau)^{-7/4-k/2} n2 dtau.
struct DuhamelEnvelope {
  double s1_bound;
  double s2_bound;
};

DuhamelEnvelope duhamel_envelope(std::span<const double> tau,
                                 std::span<const double> n1_norm,
                                 std::span<const double> n2_norm, double t, int k);

// Int_0^t (1+t-tau)^{-s1} (1+tau)^{-s2} dtau by quadrature
double convolution_bound(double s1, double s2, double t, int samples = 4001);

}  // namespace vspectra

#endif
