#include "vspectra/semigroup.hpp"

#include <cmath>
#include <stdexcept>

#include "vspectra/parallel.hpp"

namespace vspectra {

double cinf_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double f0 = std::exp(-1.0 / x);
  const double f1 = std::exp(-1.0 / (1.0 - x));
  return f0 / (f0 + f1);
}

double psi_cutoff(double r) { return cinf_step(2.0 - r); }

double RadialProfile::norm(int component, int k) const {
  std::vector<cplx> f(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    f[i] = values[i][static_cast<std::size_t>(component)];
  return std::sqrt(radial_norm_sq(grid, f, k));
}

bool RadialProfile::quadrature_accepted(double tol) const {
  const RadialGrid coarse = grid.coarsened();
  for (int c = 0; c < 3; ++c) {
    std::vector<cplx> fine(values.size()), half(coarse.size());
    for (std::size_t i = 0; i < values.size(); ++i)
      fine[i] = values[i][static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < coarse.size(); ++i) half[i] = fine[2 * i];
    const double nf = radial_norm_sq(grid, fine, 0);
    const double nc = radial_norm_sq(coarse, half, 0);
    if (std::abs(nf - nc) > tol * std::max({nf, nc, 1e-300})) return false;
  }
  return true;
}

RadialProfile RadialProfile::low_part() const {
  RadialProfile out = *this;
  out.part = FrequencyPart::Low;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = psi_cutoff(grid.r[i]);
    for (auto& v : out.values[i]) v *= w;
  }
  return out;
}

RadialProfile RadialProfile::high_part() const {
  RadialProfile out = *this;
  out.part = FrequencyPart::High;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = 1.0 - psi_cutoff(grid.r[i]);
    for (auto& v : out.values[i]) v *= w;
  }
  return out;
}

RadialProfile make_cutoff_profile(const RadialGrid& grid,
                                  const std::array<double, 3>& amp) {
  RadialProfile p;
  p.grid = grid;
  p.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = psi_cutoff(grid.r[i]);
    for (int c = 0; c < 3; ++c)
      p.values[i][static_cast<std::size_t>(c)] =
          amp[static_cast<std::size_t>(c)] * w;
  }
  return p;
}

Mat3 matrix_exp(const Mat3& m) {
  // Pade [6/6] with scaling and squaring
  static const double c[7] = {1.0,        1.0 / 2.0,    5.0 / 44.0, 1.0 / 66.0,
                              1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
  const double norm = m.cwiseAbs().maxCoeff() * 3.0;
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Mat3 a = m / std::pow(2.0, s);

  Mat3 apow = Mat3::Identity();
  Mat3 num = Mat3::Zero(), den = Mat3::Zero();
  for (int k = 0; k <= 6; ++k) {
    num += c[k] * apow;
    den += (k % 2 ? -c[k] : c[k]) * apow;
    if (k < 6) apow = apow * a;
  }
  Mat3 e = den.partialPivLu().solve(num);
  for (int i = 0; i < s; ++i) e = e * e;
  return e;
}

Mat3 mode_exp(const SpectralPoint& point, const SymbolMatrix& sym, double t) {
  if (!(t >= 0.0)) throw std::domain_error("mode_exp: t must be >= 0");
  if (point.degenerate) return matrix_exp(sym.matrix() * t);
  Mat3 e = Mat3::Zero();
  for (int i = 0; i < 3; ++i)
    e += std::exp(point.lambda[static_cast<std::size_t>(i)] * t) *
         point.projector[static_cast<std::size_t>(i)];
  return e;
}

ModePropagator::ModePropagator(const DerivedCoeffs& coeffs, const ModelParams& params,
                               double r)
    : sym_(coeffs, params, r), point_(eigen_solve(sym_)) {}

Mat3 ModePropagator::operator()(double t) const { return mode_exp(point_, sym_, t); }

LinearEvolver::LinearEvolver(RadialProfile initial, const DerivedCoeffs& coeffs,
                             const ModelParams& params)
    : p0_(std::move(initial)) {
  if (!p0_.quadrature_accepted())
    throw std::invalid_argument("linear evolver: profile failed the quadrature check");
  const std::size_t n = p0_.grid.size();
  pts_.resize(n);
  modes_.resize(n);
  syms_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) syms_.push_back(symbol(coeffs, params, p0_.grid.r[i]));
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      pts_[i] = eigen_solve(syms_[i]);
      if (pts_[i].degenerate) continue;
      const Eigen::Vector3cd u0(p0_.values[i][0], p0_.values[i][1], p0_.values[i][2]);
      for (int m = 0; m < 3; ++m)
        modes_[i][static_cast<std::size_t>(m)] =
            pts_[i].projector[static_cast<std::size_t>(m)] * u0;
    }
  });
}

RadialProfile LinearEvolver::at(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("linear evolver: t must be >= 0");
  RadialProfile out = p0_;
  parallel_for(p0_.grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Eigen::Vector3cd u;
      if (pts_[i].degenerate) {
        const Eigen::Vector3cd u0(p0_.values[i][0], p0_.values[i][1], p0_.values[i][2]);
        u = matrix_exp(syms_[i].matrix() * t) * u0;
      } else {
        u = Eigen::Vector3cd::Zero();
        for (int m = 0; m < 3; ++m)
          u += std::exp(pts_[i].lambda[static_cast<std::size_t>(m)] * t) *
               modes_[i][static_cast<std::size_t>(m)];
      }
      out.values[i] = {u(0), u(1), u(2)};
    }
  });
  return out;
}

std::array<double, 3> LinearEvolver::norms(double t, int k) const {
  const RadialProfile p = at(t);
  return {p.norm(0, k), p.norm(1, k), p.norm(2, k)};
}

RadialProfile evolve_linear(const RadialProfile& profile, const DerivedCoeffs& coeffs,
                            const ModelParams& params, double t) {
  return LinearEvolver(profile, coeffs, params).at(t);
}

DecayCheck decay_envelope_check(const DerivedCoeffs& coeffs, const ModelParams& params,
                                const RadialProfile& profile, int k_max, double t_lo,
                                double t_hi, double tolerance) {
  if (classify_stability(coeffs, params.nu) != Stability::Stable)
    throw std::domain_error("decay_envelope_check: requires the stable regime");
  if (std::abs(profile.values.front()[0]) == 0.0)
    throw std::domain_error(
        "decay_envelope_check: rho component must not vanish at r -> 0 "
        "(slowest mode unexcited; rerun with generic data)");

  const LinearEvolver evolver(profile.low_part(), coeffs, params);

  // 40 log-spaced samples per decade
  const int n_t =
      static_cast<int>(std::round(40.0 * std::log10(t_hi / t_lo))) + 1;
  std::vector<double> ts(static_cast<std::size_t>(n_t));
  for (int i = 0; i < n_t; ++i)
    ts[static_cast<std::size_t>(i)] =
        t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (n_t - 1));

  DecayCheck out;
  for (int k = 0; k <= k_max; ++k) {
    std::array<std::vector<double>, 3> series;
    for (auto& s : series) s.resize(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto n = evolver.norms(ts[i], k);
      for (int c = 0; c < 3; ++c)
        series[static_cast<std::size_t>(c)][i] = n[static_cast<std::size_t>(c)];
    }
    for (int c = 0; c < 3; ++c) {
      DecayFitEntry e;
      e.component = c;
      e.k = k;
      e.fit = fit_power(ts, series[static_cast<std::size_t>(c)], {t_lo, t_hi});
      e.expected = (c == 1 ? -1.25 : -0.75) - 0.5 * k;
      e.pass = std::abs(e.fit.exponent - e.expected) <= tolerance;
      out.entries.push_back(e);
    }
  }

  // high-frequency remainder against the e^{-alpha t/4} envelope shape
  {
    const LinearEvolver high(profile.high_part(), coeffs, params);
    std::vector<double> th, nh;
    const double t_end = 12.0 / params.alpha;
    for (int i = 0; i <= 48; ++i) {
      const double t = t_end * i / 48.0;
      const auto n = high.norms(t, 0);
      th.push_back(t);
      nh.push_back(std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]));
    }
    const RateFit f = fit_exponential(th, nh, {0.0, t_end});
    out.high_freq_rate = f.rate;
    out.high_freq_envelope = params.alpha / 4.0;
    out.high_freq_pass = f.rate >= out.high_freq_envelope;
  }

  out.pass = out.high_freq_pass;
  for (const auto& e : out.entries) out.pass = out.pass && e.pass;
  return out;
}

double omega_decay(double omega0_norm, double alpha, double t) {
  if (!(t >= 0.0)) throw std::domain_error("omega_decay: t must be >= 0");
  return std::exp(-alpha * t) * omega0_norm;
}

DuhamelEnvelope duhamel_envelope(std::span<const double> tau,
                                 std::span<const double> n1_norm,
                                 std::span<const double> n2_norm, double t, int k) {
  if (tau.size() != n1_norm.size() || tau.size() != n2_norm.size())
    throw std::invalid_argument("duhamel_envelope: series length mismatch");
  std::vector<double> x, y1, y2;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] > t) break;
    const double lag = 1.0 + t - tau[i];
    x.push_back(tau[i]);
    y1.push_back(std::pow(lag, -0.75 - 0.5 * k) * n1_norm[i] +
                 std::pow(lag, -1.25 - 0.5 * k) * n2_norm[i]);
    y2.push_back(std::pow(lag, -1.25 - 0.5 * k) * n1_norm[i] +
                 std::pow(lag, -1.75 - 0.5 * k) * n2_norm[i]);
  }
  if (x.size() < 2) return {0.0, 0.0};
  return {trapezoid(x, y1), trapezoid(x, y2)};
}

double convolution_bound(double s1, double s2, double t, int samples) {
  std::vector<double> x(static_cast<std::size_t>(samples)),
      y(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double tau = t * i / (samples - 1);
    x[static_cast<std::size_t>(i)] = tau;
    y[static_cast<std::size_t>(i)] =
        std::pow(1.0 + t - tau, -s1) * std::pow(1.0 + tau, -s2);
  }
  return trapezoid(x, y);
}

}  // namespace vspectra
