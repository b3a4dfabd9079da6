#include "vspectra/instability.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "vspectra/semigroup.hpp"

namespace vspectra {

namespace {

// Psi: 1 on |r-xi0| <= zeta, 0 on |r-xi0| >= 2 zeta, C-infinity between
double bump_shape(double r, double xi0, double zeta) {
  return cinf_step(2.0 - std::abs(r - xi0) / zeta);
}

// attaining eigenvalue at r (the branch is simple and strictly dominant in
// a neighborhood of xi0, so the pointwise max-Re root is lambda0)
cplx lambda0_at(const DerivedCoeffs& coeffs, const ModelParams& params, double r) {
  const SpectralPoint pt = eigen_solve(symbol(coeffs, params, r));
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (pt.lambda[static_cast<std::size_t>(i)].real() >
        pt.lambda[static_cast<std::size_t>(best)].real())
      best = i;
  return pt.lambda[static_cast<std::size_t>(best)];
}

}  // namespace

BumpData build_bump(const GrowthSummary& growth, const DerivedCoeffs& coeffs,
                    const ModelParams& params, double theta_bar,
                    int support_intervals, double zeta_cap) {
  if (growth.regime != Stability::Unstable || !(growth.Theta > 0.0))
    throw std::domain_error("build_bump: requires the unstable regime");
  if (!(theta_bar > 0.0 && theta_bar < growth.Theta / 2.0))
    throw std::domain_error("build_bump: theta_bar must lie in (0, Theta/2)");

  const double Theta = growth.Theta;
  const double xi0 = growth.xi0;
  const double threshold = Theta - theta_bar;

  // certify Re lambda0 >= Theta - theta_bar on the same node family the
  // bump is later built on, so the selected window passes its own scan
  auto window_ok = [&](double zeta) {
    const RadialGrid probe =
        RadialGrid::linear(xi0 - 2.0 * zeta, xi0 + 2.0 * zeta, support_intervals);
    for (double r : probe.r)
      if (lambda0_at(coeffs, params, r).real() < threshold) return false;
    return true;
  };

  // largest zeta <= xi0/4 whose 2*zeta window is certified, by bisection
  double zeta = xi0 / 4.0;
  if (zeta_cap > 0.0) zeta = std::min(zeta, zeta_cap);
  if (!window_ok(zeta)) {
    double lo = 0.0, hi = zeta;
    for (int it = 0; it < 48; ++it) {
      const double mid = 0.5 * (lo + hi);
      (window_ok(mid) ? lo : hi) = mid;
    }
    zeta = lo;
  }
  if (!(zeta > 0.0)) throw std::runtime_error("build_bump: empty certified window");

  BumpData bump;
  bump.Theta = Theta;
  bump.xi0 = xi0;
  bump.theta_bar = theta_bar;

  const double denom_floor = 1e-8 * (params.nu + params.mu * xi0 * xi0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    bump.zeta_bar = zeta;
    bump.grid = RadialGrid::linear(xi0 - 2.0 * zeta, xi0 + 2.0 * zeta,
                                   support_intervals);
    const std::size_t n = bump.grid.size();
    bump.lambda0.resize(n);
    bump.values.resize(n);

    bool denom_ok = true;
    bool certified = true;
    std::vector<cplx> psi(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = bump.grid.r[i];
      const cplx l0 = lambda0_at(coeffs, params, r);
      bump.lambda0[i] = l0;
      psi[i] = bump_shape(r, xi0, zeta);
      if (l0.real() < threshold - 1e-12 * std::max(1.0, Theta)) certified = false;
      if (std::abs(l0 + params.nu + params.mu * r * r) < denom_floor) denom_ok = false;
    }
    if (!denom_ok || !certified) {
      zeta *= 0.995;
      continue;
    }

    const double psi_norm = std::sqrt(radial_norm_sq(bump.grid, psi, 0));
    bump.d_lower_bound = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double r = bump.grid.r[i];
      const cplx l0 = bump.lambda0[i];
      const cplx p = psi[i] / psi_norm;
      bump.values[i][0] = p;
      bump.values[i][1] = -l0 * p / (coeffs.a * r);
      bump.values[i][2] =
          params.gamma * p / (l0 + params.nu + params.mu * r * r);
      bump.d_lower_bound =
          std::min(bump.d_lower_bound, std::abs(l0 / (coeffs.a * r)));
    }
    for (int c = 0; c < 3; ++c) {
      std::vector<cplx> f(n);
      for (std::size_t i = 0; i < n; ++i) f[i] = bump.values[i][static_cast<std::size_t>(c)];
      bump.initial_norm[static_cast<std::size_t>(c)] =
          std::sqrt(radial_norm_sq(bump.grid, f, 0));
      if (!(bump.initial_norm[static_cast<std::size_t>(c)] > 0.0))
        throw std::runtime_error("build_bump: vanishing initial component norm");
    }
    return bump;
  }
  throw std::runtime_error("build_bump: could not certify a support window");
}

SandwichReport sandwich_check(const BumpData& bump, const DerivedCoeffs& coeffs,
                              const ModelParams& params,
                              const std::vector<double>& times, double tol) {
  SandwichReport rep;
  rep.times = times;
  rep.worst_lower = std::numeric_limits<double>::infinity();
  rep.worst_upper = 0.0;

  const std::size_t n = bump.grid.size();

  // cross-check the single-branch law against the full 3x3 propagator at a
  // few interior nodes (the bump data is an exact eigenvector of A(r))
  {
    const double t_ref = times.empty() ? 1.0 : times.back() / 10.0;
    for (int s = 1; s <= 10; ++s) {
      const std::size_t i = s * (n - 1) / 11;
      const ModePropagator prop(coeffs, params, bump.grid.r[i]);
      const Eigen::Vector3cd u0(bump.values[i][0], bump.values[i][1],
                                bump.values[i][2]);
      const Eigen::Vector3cd full = prop(t_ref) * u0;
      const Eigen::Vector3cd single = std::exp(bump.lambda0[i] * t_ref) * u0;
      const double scale = std::max(1.0, full.cwiseAbs().maxCoeff());
      rep.cross_check_error =
          std::max(rep.cross_check_error, (full - single).cwiseAbs().maxCoeff() / scale);
    }
  }

  const double lower_rate = bump.Theta - bump.theta_bar;
  std::vector<cplx> f(n);
  for (double t : times) {
    for (int c = 0; c < 3; ++c) {
      for (std::size_t i = 0; i < n; ++i)
        f[i] = std::exp(bump.lambda0[i] * t) * bump.values[i][static_cast<std::size_t>(c)];
      const double norm_t = std::sqrt(radial_norm_sq(bump.grid, f, 0));
      const double n0 = bump.initial_norm[static_cast<std::size_t>(c)];
      const double lower = std::exp(lower_rate * t) * n0;
      const double upper = std::exp(bump.Theta * t) * n0;
      const double lo_ratio = norm_t / lower;
      const double up_ratio = norm_t / upper;
      if (lo_ratio < rep.worst_lower) {
        rep.worst_lower = lo_ratio;
        rep.worst_t = t;
        rep.worst_component = c;
      }
      if (up_ratio > rep.worst_upper) {
        rep.worst_upper = up_ratio;
        if (up_ratio > 1.0 + tol) {
          rep.worst_t = t;
          rep.worst_component = c;
        }
      }
    }
  }
  rep.pass = rep.worst_lower >= 1.0 - tol && rep.worst_upper <= 1.0 + tol &&
             rep.cross_check_error < 1e-8;
  return rep;
}

EscapePrediction predict_escape(double Theta, double epsilon0, double delta) {
  if (!(Theta > 0.0)) throw std::domain_error("predict_escape: Theta must be > 0");
  if (!(epsilon0 > 0.0)) throw std::domain_error("predict_escape: epsilon0 must be > 0");
  if (!(delta > 0.0 && delta < 2.0 * epsilon0))
    throw std::domain_error("predict_escape: need 0 < delta < 2*epsilon0");
  return {delta, epsilon0, std::log(2.0 * epsilon0 / delta) / Theta};
}

}  // namespace vspectra
