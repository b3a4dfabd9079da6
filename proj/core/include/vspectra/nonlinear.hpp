#ifndef VSPECTRA_NONLINEAR_HPP
#define VSPECTRA_NONLINEAR_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "vspectra/dispersion.hpp"
#include "vspectra/fft.hpp"

namespace vspectra {

/// rho + rho_bar dropped below the vacuum guard (0.01 rho_bar); the step is
/// aborted because the pressure term degenerates before vacuum.
class VacuumError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// NaN/Inf detected after a step.
class StepError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Periodic lattice: n points per axis (power of two), box length L,
/// wavenumbers 2 pi m / L with m in [-n/2, n/2).
struct TorusGrid {
  int dim = 1;
  int n = 0;
  double L = 0.0;

  static TorusGrid make(int dim, int n, double L);
  // box sized so lattice mode `harmonic` sits exactly at xi0
  static TorusGrid resonant_1d(int n, double xi0, int harmonic = 16);

  std::size_t total() const;
  int mode(std::size_t flat, int axis) const;
  double wavenumber(int m) const;
  double k_mag(std::size_t flat) const;
  int mode_sq(std::size_t flat) const;  // m1^2 + m2^2 + m3^2
  bool dealias_keep(std::size_t flat) const;
  double k_max() const;
  // some lattice wavenumber magnitude within tol of xi0
  bool resonant_with(double xi0, double tol) const;
};

/// Periodic state in spectral form: coefficients of (rho, v, phi). Fields
/// are real, so spectra are Hermitian-symmetric; the field mean rides on
/// the m = 0 coefficient.
struct TorusField {
  TorusGrid grid;
  std::vector<cplx> rho_h, phi_h;
  std::array<std::vector<cplx>, 3> v_h;  // first grid.dim components used

  static TorusField zero(const TorusGrid& grid);

  double rho_norm(int k_order = 0) const;
  double phi_norm(int k_order = 0) const;
  double v_norm(int k_order = 0) const;  // all components
  double mean_rho() const;
  double hermitian_defect() const;  // max |f(-m) - conj f(m)| over fields
  // max over modes of | ||v||^2 - (|d|^2 + ||w||^2) | (exact orthogonal split)
  double split_defect() const;
};

struct StepperConfig {
  enum class Scheme { IfMidpoint, ImexEuler };
  double dt = 1e-2;
  Scheme scheme = Scheme::IfMidpoint;
  bool dealias = true;
  double cfl_limit = 0.5;
};

/// Pseudospectral stepper for the transformed system
///   rho_t + a div v = N1
///   v_t + a grad rho + alpha v - b grad phi = N2
///   phi_t - mu lap phi + nu phi - gamma rho = 0
/// with N1 = -(rho_bar/a) div(rho v) and
/// N2 = -(a/rho_bar)(v.grad)v - (rho_bar/a)(P'(rho+rho_bar)/(rho+rho_bar)
///      - P'(rho_bar)/rho_bar) grad rho.
/// The linear part is advanced exactly per mode: the compressible triple
/// (rho, d, phi) with d = i khat.v through e^{dt A(|k|)}, the transverse
/// remainder through e^{-alpha dt}; nonlinear terms are formed in real
/// space, differentiated spectrally, dealiased by the 2/3 mask, and
/// integrated by explicit midpoint on the integrating-factor variables.
class TorusSolver {
public:
  TorusSolver(const TorusGrid& grid, const ModelParams& params,
              const DerivedCoeffs& coeffs, const StepperConfig& config);

  void step(TorusField& state);

  void nonlinear_terms(const TorusField& state, std::vector<cplx>& n1,
                       std::array<std::vector<cplx>, 3>& n2) const;

  const TorusGrid& torus() const { return grid_; }
  double dt() const { return config_.dt; }

  // exact linear propagation of a state by t (the semigroup reference the
  // stepper must reproduce in the linear limit)
  static TorusField linear_reference(const TorusField& initial,
                                     const ModelParams& params,
                                     const DerivedCoeffs& coeffs, double t);

private:
  void apply_propagator(bool half, std::vector<cplx>& rho,
                        std::array<std::vector<cplx>, 3>& v,
                        std::vector<cplx>& phi) const;

  TorusGrid grid_;
  ModelParams params_;
  DerivedCoeffs coeffs_;
  StepperConfig config_;
  Fft fft_;

  std::vector<int> mode_sq_;                  // per flat index
  std::array<std::vector<double>, 3> khat_;   // unit wavevector per flat index
  std::vector<char> keep_;                    // dealias mask
  std::vector<std::array<Mat3, 2>> props_;    // {E(dt), E(dt/2)} per distinct |k|
  std::vector<std::uint32_t> prop_index_;     // flat index -> props_ slot
  double e_alpha_full_ = 0.0, e_alpha_half_ = 0.0;

  // work arrays
  mutable std::vector<cplx> wa_, wb_, wc_;
  mutable std::array<std::vector<cplx>, 3> wv_, wd_;
};

struct EscapeOptions {
  int n = 1024;
  int harmonic = 16;
  double dt = 0.0;       // 0 -> 0.5 * cfl_limit / (a k_max)
  double t_max = 0.0;    // 0 -> 1.5 * predicted T + 10/Theta
  int sample_stride = 10;
};

struct EscapeRun {
  double delta = 0.0;
  bool crossed = false;
  double T_measured = 0.0;
  std::vector<double> times;
  std::vector<double> rho_norm;
};

/// delta-sweep Hadamard-escape measurement: each run starts from
/// delta x (resonant lattice bump with the eigenvector component ratios)
/// and integrates until ||rho|| >= epsilon0. The escape times obey
/// T ~ ln(1/delta)/Theta.
struct EscapeExperiment {
  double epsilon0 = 0.0;
  double Theta = 0.0;
  double k_star = 0.0;        // resonant lattice wavenumber
  double lambda_star = 0.0;   // Re lambda at k_star
  double slope = 0.0;         // regression of T vs ln(1/delta)
  double expected_slope = 0.0;  // 1/Theta
  bool conclusive = false;      // every run crossed
  std::vector<EscapeRun> runs;
};

EscapeExperiment run_escape_experiment(const ModelParams& params,
                                       const DerivedCoeffs& coeffs,
                                       const GrowthSummary& growth,
                                       const std::vector<double>& deltas,
                                       double epsilon0, EscapeOptions opts = {});

struct DecayOptions {
  int dim = 1;
  int n = 256;
  double L = 4.0 * M_PI;
  double dt = 0.0;  // 0 -> 0.5 * cfl_limit / (a k_max)
  int sample_stride = 20;
  int max_excited_mode = 3;
};

/// Stable-regime torus run: seeded multi-mode perturbation, norm time
/// series for k = 0..3, the time-weighted diagnostic M(t), and the decay
/// rate compared against the least-damped lattice mode. Lattice spectra
/// are discrete, so torus decay is exponential; the algebraic R^3 rates
/// are checked by the linear radial machinery instead.
struct DecayExperiment {
  std::vector<double> times;
  std::array<std::array<std::vector<double>, 4>, 3> norms;  // [field][k], 0=rho,1=v,2=phi
  std::vector<double> M_series;
  double fitted_rate = 0.0;
  double fit_r2 = 0.0;
  double expected_rate = 0.0;  // -max over lattice modes of max Re lambda
  bool rate_pass = false;      // within 5%
};

DecayExperiment run_decay_experiment(const ModelParams& params,
                                     const DerivedCoeffs& coeffs, double amplitude,
                                     double t_max, std::uint64_t seed,
                                     DecayOptions opts = {});

// -max over nonzero dealias-kept lattice modes of max_i Re lambda_i
double least_damped_lattice_rate(const TorusGrid& grid, const ModelParams& params,
                                 const DerivedCoeffs& coeffs);

}  // namespace vspectra

#endif
