#ifndef VSPECTRA_DISPERSION_HPP
#define VSPECTRA_DISPERSION_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "vspectra/model.hpp"

namespace vspectra {

using Mat3 = Eigen::Matrix3cd;
using cplx = std::complex<double>;

/// Fourier symbol of the compressible block at radial wavenumber r = |xi|:
///
///       (   0    -a r     0          )
///   A = (  a r   -alpha  -b r        )
///       (  gamma  0      -(nu+mu r^2))
///
/// The symbol depends on xi only through r, so the constructor takes r
/// directly.
struct SymbolMatrix {
  double r;
  double a, b, alpha, nu, mu, gamma;

  SymbolMatrix(const DerivedCoeffs& c, const ModelParams& p, double radius);

  Mat3 matrix() const;

  // characteristic polynomial F(r, lambda) = lambda^3 + p2 lambda^2 + p1 lambda + p0
  double p2() const { return mu * r * r + alpha + nu; }
  double p1() const { return (a * a + alpha * mu) * r * r + alpha * nu; }
  double p0() const {
    return a * a * mu * r * r * r * r + a * (a * nu - b * gamma) * r * r;
  }
};

SymbolMatrix symbol(const DerivedCoeffs& coeffs, const ModelParams& params, double r);

/// Eigenvalues and spectral projectors of A(r) at one wavenumber. The
/// eigenvalue order is canonical: a conjugate pair comes first (+Im, -Im)
/// followed by the real root; an all-real triple is sorted ascending.
/// Projectors are only stored at non-degenerate points (their formula
/// divides by eigenvalue gaps).
struct SpectralPoint {
  double r = 0.0;
  std::array<cplx, 3> lambda{};
  std::array<Mat3, 3> projector{};
  bool degenerate = false;
  double min_gap = 0.0;
  bool used_fallback = false;

  double max_re() const;
};

SpectralPoint eigen_solve(const SymbolMatrix& m, double gap_tol = 1e-7);

// grid scan, parallel over nodes, position-deterministic
std::vector<SpectralPoint> scan_spectrum(const DerivedCoeffs& coeffs,
                                         const ModelParams& params,
                                         const std::vector<double>& grid,
                                         double gap_tol = 1e-7);

/// Eigenvalue branches over a wavenumber grid. `tracks` are matched for
/// continuity by optimal 3-assignment between consecutive nodes. Because
/// the branch numbering of the asymptotic expansions is regime-local
/// (real branches merge into a conjugate pair at intermediate r), labels
/// are resolved separately at the two grid endpoints: label_low maps the
/// low-frequency naming onto tracks, label_high the high-frequency one.
struct SpectralBranch {
  std::vector<double> grid;
  std::vector<SpectralPoint> points;
  std::array<std::vector<cplx>, 3> tracks;
  std::array<int, 3> label_low{};   // label_low[l] = track carrying label l+1 at grid.front()
  std::array<int, 3> label_high{};  // same at grid.back()

  const std::vector<cplx>& by_low_label(int label) const {
    return tracks[static_cast<std::size_t>(label_low[check_label(label)])];
  }
  const std::vector<cplx>& by_high_label(int label) const {
    return tracks[static_cast<std::size_t>(label_high[check_label(label)])];
  }

private:
  static int check_label(int label) {
    if (label < 1 || label > 3) throw std::domain_error("branch label must be 1..3");
    return label - 1;
  }
};

SpectralBranch build_branches(const DerivedCoeffs& coeffs, const ModelParams& params,
                              const std::vector<double>& grid);

/// Low-frequency Taylor coefficients of the three branches. For
/// alpha != nu the r^2 coefficients are
///   lambda1: (a^2(alpha-nu)+ab gamma)/(alpha(alpha-nu))
///   lambda2: -(mu nu(alpha-nu)+ab gamma)/(nu(alpha-nu))
///   lambda3: -a(a nu - b gamma)/(alpha nu)
/// and for alpha == nu the pair is -alpha +- i sqrt(ab gamma/alpha) r with a
/// shared real r^2 coefficient (a(a alpha - b gamma)/alpha^2 - mu)/2 while
///   lambda3: -a(a alpha - b gamma)/alpha^2.
struct ExpansionFit {
  int branch_label;      // 1..3
  std::string quantity;  // e.g. "re_r2_coeff", "im_r_coeff"
  double fitted;
  double expected;
  double rel_error;      // |fitted-expected|/|expected|, absolute when expected==0
};

struct LowFreqReport {
  bool alpha_eq_nu = false;
  bool window_shrunk = false;
  double r_max_used = 0.0;
  std::vector<ExpansionFit> fits;
};

LowFreqReport verify_low_freq_expansion(const SpectralBranch& branch,
                                        const DerivedCoeffs& coeffs,
                                        const ModelParams& params);

/// High-frequency residual decay: lambda_{1,2} - (+-iar - alpha/2) = O(1/r),
/// lambda_3 - (-mu r^2 - nu) = O(1/r^2); reported as fitted log-log slopes.
struct HighFreqReport {
  double slope_pair;       // expected -1
  double slope_parabola;   // expected -2
  double re_pair_last;     // Re lambda_1 at grid end (-> -alpha/2)
  double parabola_ratio_last;  // lambda_3/r^2 at grid end (-> -mu)
};

HighFreqReport verify_high_freq_expansion(const SpectralBranch& branch,
                                          const DerivedCoeffs& coeffs,
                                          const ModelParams& params);

/// sup over r>0 and branches of Re lambda. In the unstable regime the
/// supremum is attained at an interior wavenumber xi0 with Theta > 0; in
/// the stable regime the supremum over any band [r_min, r_max] with
/// r_min > 0 is strictly negative and approached as r -> 0.
struct GrowthSummary {
  Stability regime = Stability::Stable;
  double Theta = 0.0;
  double xi0 = 0.0;
  bool attained = false;
  int branch_index = 0;  // per-point label attaining the max
};

struct SearchWindow {
  double r_min = 1e-4;
  double r_max = 0.0;  // 0 -> 10 * default_eta2
  int coarse_n = 4096;
  double refine_tol = 1e-10;  // relative in r
};

/// Thrown when the coarse maximum lands on a window endpoint in the
/// unstable regime (the interior maximizer is outside the window).
class WindowError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

GrowthSummary find_growth_max(const DerivedCoeffs& coeffs, const ModelParams& params,
                              SearchWindow window = {});

/// Middle-band estimates: in the stable regime the spectral bound
/// vartheta = -max_band max_i Re lambda_i > 0; in the unstable regime the
/// band maximum stays below Theta. Also reports the projector-norm
/// constant over the band.
struct BandBound {
  Stability regime = Stability::Stable;
  double band_max = 0.0;
  double vartheta = 0.0;       // stable regime: -band_max
  double proj_norm_max = 0.0;  // max-entry norm over non-degenerate points
  int degenerate_points = 0;
  bool within_theta = true;    // unstable: band_max <= Theta + 1e-10
  double theta = 0.0;          // unstable: Theta used for the comparison
};

BandBound middle_band_bound(const DerivedCoeffs& coeffs, const ModelParams& params,
                            double eta1, double eta2, int samples = 2048);

double default_eta1(const DerivedCoeffs& coeffs, const ModelParams& params);
double default_eta2(const DerivedCoeffs& coeffs, const ModelParams& params);

std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace vspectra

#endif
