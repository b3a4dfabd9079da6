#include "vspectra/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "vspectra/semigroup.hpp"

namespace vspectra {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

const cplx kI(0.0, 1.0);

}  // namespace

TorusGrid TorusGrid::make(int dim, int n, double L) {
  if (dim != 1 && dim != 3) throw std::invalid_argument("torus: dim must be 1 or 3");
  if (!power_of_two(n)) throw std::invalid_argument("torus: n must be a power of two");
  if (!(L > 0.0)) throw std::invalid_argument("torus: L must be > 0");
  return {dim, n, L};
}

TorusGrid TorusGrid::resonant_1d(int n, double xi0, int harmonic) {
  if (!(xi0 > 0.0)) throw std::invalid_argument("torus: xi0 must be > 0");
  if (harmonic < 1 || harmonic >= n / 3)
    throw std::invalid_argument("torus: harmonic must be in [1, n/3)");
  return make(1, n, 2.0 * M_PI * harmonic / xi0);
}

std::size_t TorusGrid::total() const {
  std::size_t t = 1;
  for (int d = 0; d < dim; ++d) t *= static_cast<std::size_t>(n);
  return t;
}

int TorusGrid::mode(std::size_t flat, int axis) const {
  std::size_t idx = flat;
  for (int d = dim - 1; d > axis; --d) idx /= static_cast<std::size_t>(n);
  const int raw = static_cast<int>(idx % static_cast<std::size_t>(n));
  return raw < n / 2 ? raw : raw - n;
}

double TorusGrid::wavenumber(int m) const { return 2.0 * M_PI * m / L; }

int TorusGrid::mode_sq(std::size_t flat) const {
  int s = 0;
  for (int d = 0; d < dim; ++d) {
    const int m = mode(flat, d);
    s += m * m;
  }
  return s;
}

double TorusGrid::k_mag(std::size_t flat) const {
  return 2.0 * M_PI * std::sqrt(static_cast<double>(mode_sq(flat))) / L;
}

bool TorusGrid::dealias_keep(std::size_t flat) const {
  for (int d = 0; d < dim; ++d)
    if (std::abs(mode(flat, d)) > n / 3) return false;
  return true;
}

double TorusGrid::k_max() const {
  return 2.0 * M_PI * (n / 2) * std::sqrt(static_cast<double>(dim)) / L;
}

bool TorusGrid::resonant_with(double xi0, double tol) const {
  for (std::size_t i = 0; i < total(); ++i) {
    if (mode_sq(i) == 0) continue;
    if (std::abs(k_mag(i) - xi0) <= tol) return true;
  }
  return false;
}

TorusField TorusField::zero(const TorusGrid& grid) {
  TorusField f;
  f.grid = grid;
  const std::size_t t = grid.total();
  f.rho_h.assign(t, cplx(0.0));
  f.phi_h.assign(t, cplx(0.0));
  for (int d = 0; d < grid.dim; ++d) f.v_h[static_cast<std::size_t>(d)].assign(t, cplx(0.0));
  return f;
}

namespace {

double spectral_norm(const TorusGrid& grid, const std::vector<cplx>& f, int k_order) {
  double s = 0.0;
  const double vol = std::pow(grid.L, grid.dim);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double kmag = grid.k_mag(i);
    s += std::pow(kmag, 2 * k_order) * std::norm(f[i]);
  }
  return std::sqrt(vol * s);
}

std::size_t conj_index(const TorusGrid& grid, std::size_t flat) {
  std::size_t out = 0;
  for (int d = 0; d < grid.dim; ++d) {
    std::size_t idx = flat;
    for (int dd = grid.dim - 1; dd > d; --dd) idx /= static_cast<std::size_t>(grid.n);
    const std::size_t raw = idx % static_cast<std::size_t>(grid.n);
    const std::size_t neg =
        raw == 0 ? 0 : static_cast<std::size_t>(grid.n) - raw;
    out = out * static_cast<std::size_t>(grid.n) + neg;
  }
  return out;
}

}  // namespace

double TorusField::rho_norm(int k_order) const { return spectral_norm(grid, rho_h, k_order); }
double TorusField::phi_norm(int k_order) const { return spectral_norm(grid, phi_h, k_order); }

double TorusField::v_norm(int k_order) const {
  double s = 0.0;
  for (int d = 0; d < grid.dim; ++d) {
    const double nd = spectral_norm(grid, v_h[static_cast<std::size_t>(d)], k_order);
    s += nd * nd;
  }
  return std::sqrt(s);
}

double TorusField::mean_rho() const { return rho_h[0].real(); }

double TorusField::hermitian_defect() const {
  double defect = 0.0;
  auto check = [&](const std::vector<cplx>& f) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::size_t j = conj_index(grid, i);
      defect = std::max(defect, std::abs(f[i] - std::conj(f[j])));
    }
  };
  check(rho_h);
  check(phi_h);
  for (int d = 0; d < grid.dim; ++d) check(v_h[static_cast<std::size_t>(d)]);
  return defect;
}

double TorusField::split_defect() const {
  double defect = 0.0;
  for (std::size_t i = 0; i < rho_h.size(); ++i) {
    if (grid.mode_sq(i) == 0) continue;
    double kh[3] = {0, 0, 0};
    double km = 0.0;
    for (int d = 0; d < grid.dim; ++d) {
      kh[d] = grid.wavenumber(grid.mode(i, d));
      km += kh[d] * kh[d];
    }
    km = std::sqrt(km);
    for (int d = 0; d < grid.dim; ++d) kh[d] /= km;
    cplx dcomp(0.0);
    for (int d = 0; d < grid.dim; ++d)
      dcomp += kI * kh[d] * v_h[static_cast<std::size_t>(d)][i];
    double v2 = 0.0, w2 = 0.0;
    for (int d = 0; d < grid.dim; ++d) {
      const cplx v = v_h[static_cast<std::size_t>(d)][i];
      const cplx w = v + kI * dcomp * kh[d];
      v2 += std::norm(v);
      w2 += std::norm(w);
    }
    defect = std::max(defect, std::abs(v2 - (std::norm(dcomp) + w2)));
  }
  return defect;
}

TorusSolver::TorusSolver(const TorusGrid& grid, const ModelParams& params,
                         const DerivedCoeffs& coeffs, const StepperConfig& config)
    : grid_(grid), params_(params), coeffs_(coeffs), config_(config),
      fft_(grid.dim, grid.n) {
  if (!(config_.dt > 0.0)) throw std::invalid_argument("stepper: dt must be > 0");
  if (config_.dt * coeffs_.a * grid_.k_max() > config_.cfl_limit)
    throw std::invalid_argument("stepper: CFL violated: dt*a*k_max > limit");

  const std::size_t t = grid_.total();
  mode_sq_.resize(t);
  keep_.resize(t);
  prop_index_.resize(t);
  for (int d = 0; d < 3; ++d) khat_[static_cast<std::size_t>(d)].assign(t, 0.0);
  std::unordered_map<int, std::uint32_t> slot_of;
  for (std::size_t i = 0; i < t; ++i) {
    mode_sq_[i] = grid_.mode_sq(i);
    keep_[i] = grid_.dealias_keep(i) ? 1 : 0;
    if (mode_sq_[i] != 0) {
      double km = 0.0;
      double kv[3] = {0, 0, 0};
      for (int d = 0; d < grid_.dim; ++d) {
        kv[d] = grid_.wavenumber(grid_.mode(i, d));
        km += kv[d] * kv[d];
      }
      km = std::sqrt(km);
      for (int d = 0; d < grid_.dim; ++d)
        khat_[static_cast<std::size_t>(d)][i] = kv[d] / km;
    }
    auto [it, inserted] =
        slot_of.emplace(mode_sq_[i], static_cast<std::uint32_t>(props_.size()));
    if (inserted) {
      const double r = 2.0 * M_PI * std::sqrt(static_cast<double>(mode_sq_[i])) / grid_.L;
      const ModePropagator p(coeffs_, params_, r);
      props_.push_back({p(config_.dt), p(config_.dt / 2.0)});
    }
    prop_index_[i] = it->second;
  }
  e_alpha_full_ = std::exp(-params_.alpha * config_.dt);
  e_alpha_half_ = std::exp(-params_.alpha * config_.dt / 2.0);

  wa_.resize(t);
  wb_.resize(t);
  wc_.resize(t);
  for (auto& w : wv_) w.resize(t);
  for (auto& w : wd_) w.resize(t);
}

void TorusSolver::apply_propagator(bool half, std::vector<cplx>& rho,
                                   std::array<std::vector<cplx>, 3>& v,
                                   std::vector<cplx>& phi) const {
  const double ew = half ? e_alpha_half_ : e_alpha_full_;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const Mat3& E = props_[prop_index_[i]][half ? 1 : 0];
    cplx d(0.0);
    cplx w[3] = {cplx(0.0), cplx(0.0), cplx(0.0)};
    if (mode_sq_[i] == 0) {
      for (int c = 0; c < grid_.dim; ++c) w[c] = v[static_cast<std::size_t>(c)][i];
    } else {
      for (int c = 0; c < grid_.dim; ++c)
        d += kI * khat_[static_cast<std::size_t>(c)][i] *
             v[static_cast<std::size_t>(c)][i];
      for (int c = 0; c < grid_.dim; ++c)
        w[c] = v[static_cast<std::size_t>(c)][i] +
               kI * d * khat_[static_cast<std::size_t>(c)][i];
    }
    const Eigen::Vector3cd u = E * Eigen::Vector3cd(rho[i], d, phi[i]);
    rho[i] = u(0);
    phi[i] = u(2);
    for (int c = 0; c < grid_.dim; ++c) {
      v[static_cast<std::size_t>(c)][i] =
          -kI * u(1) * khat_[static_cast<std::size_t>(c)][i] + ew * w[c];
    }
  }
}

void TorusSolver::nonlinear_terms(const TorusField& state, std::vector<cplx>& n1,
                                  std::array<std::vector<cplx>, 3>& n2) const {
  const std::size_t t = grid_.total();
  const double c1 = params_.rho_bar / coeffs_.a;         // rho_bar/sqrt(P')
  const double c2 = coeffs_.a / params_.rho_bar;         // sqrt(P')/rho_bar
  const double pp_bar = params_.pressure.derivative(params_.rho_bar);

  wa_ = state.rho_h;
  fft_.to_real(wa_);
  for (int c = 0; c < grid_.dim; ++c) {
    wv_[static_cast<std::size_t>(c)] = state.v_h[static_cast<std::size_t>(c)];
    fft_.to_real(wv_[static_cast<std::size_t>(c)]);
  }

  const double vacuum_floor = 0.01 * params_.rho_bar;
  for (std::size_t i = 0; i < t; ++i) {
    if (wa_[i].real() + params_.rho_bar <= vacuum_floor)
      throw VacuumError("vacuum: rho + rho_bar fell below 0.01*rho_bar");
  }

  n1.assign(t, cplx(0.0));
  for (auto& c : n2) c.assign(t, cplx(0.0));

  // N1 = -c1 div(rho v), products in real space, divergence spectral
  for (int c = 0; c < grid_.dim; ++c) {
    for (std::size_t i = 0; i < t; ++i)
      wc_[i] = cplx(wa_[i].real() * wv_[static_cast<std::size_t>(c)][i].real(), 0.0);
    fft_.to_spectral(wc_);
    for (std::size_t i = 0; i < t; ++i) {
      const double kc = grid_.wavenumber(grid_.mode(i, c));
      n1[i] += -c1 * kI * kc * wc_[i];
    }
  }

  // N2_i = -c2 (v.grad)v_i - c1 (P'(rho+rho_bar)/(rho+rho_bar) - P'/rho_bar) d_i rho
  for (int ci = 0; ci < grid_.dim; ++ci) {
    std::vector<cplx>& acc = wd_[0];
    std::fill(acc.begin(), acc.end(), cplx(0.0));
    for (int cj = 0; cj < grid_.dim; ++cj) {
      for (std::size_t i = 0; i < t; ++i) {
        const double kj = grid_.wavenumber(grid_.mode(i, cj));
        wc_[i] = kI * kj * state.v_h[static_cast<std::size_t>(ci)][i];
      }
      fft_.to_real(wc_);
      for (std::size_t i = 0; i < t; ++i)
        acc[i] += cplx(wv_[static_cast<std::size_t>(cj)][i].real() * wc_[i].real(), 0.0);
    }
    for (std::size_t i = 0; i < t; ++i) {
      const double ki = grid_.wavenumber(grid_.mode(i, ci));
      wc_[i] = kI * ki * state.rho_h[i];
    }
    fft_.to_real(wc_);
    for (std::size_t i = 0; i < t; ++i) {
      const double rho_tot = wa_[i].real() + params_.rho_bar;
      const double h = params_.pressure.derivative(rho_tot) / rho_tot -
                       pp_bar / params_.rho_bar;
      const double val = -c2 * acc[i].real() - c1 * h * wc_[i].real();
      wb_[i] = cplx(val, 0.0);
    }
    fft_.to_spectral(wb_);
    n2[static_cast<std::size_t>(ci)] = wb_;
  }

  if (config_.dealias) {
    for (std::size_t i = 0; i < t; ++i) {
      if (keep_[i]) continue;
      n1[i] = cplx(0.0);
      for (int c = 0; c < grid_.dim; ++c) n2[static_cast<std::size_t>(c)][i] = cplx(0.0);
    }
  }
}

void TorusSolver::step(TorusField& state) {
  const std::size_t t = grid_.total();
  const double dt = config_.dt;

  std::vector<cplx> n1;
  std::array<std::vector<cplx>, 3> n2;
  nonlinear_terms(state, n1, n2);

  if (config_.scheme == StepperConfig::Scheme::ImexEuler) {
    for (std::size_t i = 0; i < t; ++i) {
      state.rho_h[i] += dt * n1[i];
      for (int c = 0; c < grid_.dim; ++c)
        state.v_h[static_cast<std::size_t>(c)][i] +=
            dt * n2[static_cast<std::size_t>(c)][i];
    }
    apply_propagator(false, state.rho_h, state.v_h, state.phi_h);
  } else {
    // integrating-factor explicit midpoint:
    //   U_half = E(dt/2)(U + dt/2 F(U))
    //   U_next = E(dt) U + dt E(dt/2) F(U_half)
    TorusField mid = state;
    for (std::size_t i = 0; i < t; ++i) {
      mid.rho_h[i] += 0.5 * dt * n1[i];
      for (int c = 0; c < grid_.dim; ++c)
        mid.v_h[static_cast<std::size_t>(c)][i] +=
            0.5 * dt * n2[static_cast<std::size_t>(c)][i];
    }
    apply_propagator(true, mid.rho_h, mid.v_h, mid.phi_h);

    std::vector<cplx> m1;
    std::array<std::vector<cplx>, 3> m2;
    nonlinear_terms(mid, m1, m2);
    std::vector<cplx> zero_phi(t, cplx(0.0));
    apply_propagator(true, m1, m2, zero_phi);

    apply_propagator(false, state.rho_h, state.v_h, state.phi_h);
    for (std::size_t i = 0; i < t; ++i) {
      state.rho_h[i] += dt * m1[i];
      state.phi_h[i] += dt * zero_phi[i];
      for (int c = 0; c < grid_.dim; ++c)
        state.v_h[static_cast<std::size_t>(c)][i] +=
            dt * m2[static_cast<std::size_t>(c)][i];
    }
  }

  for (std::size_t i = 0; i < t; ++i) {
    if (!std::isfinite(state.rho_h[i].real()) || !std::isfinite(state.rho_h[i].imag()))
      throw StepError("step: non-finite value detected");
  }
}

TorusField TorusSolver::linear_reference(const TorusField& initial,
                                         const ModelParams& params,
                                         const DerivedCoeffs& coeffs, double t) {
  TorusField out = initial;
  const TorusGrid& g = initial.grid;
  std::unordered_map<int, Mat3> cache;
  const double ew = std::exp(-params.alpha * t);
  for (std::size_t i = 0; i < g.total(); ++i) {
    const int msq = g.mode_sq(i);
    if (!cache.count(msq)) {
      const double r = 2.0 * M_PI * std::sqrt(static_cast<double>(msq)) / g.L;
      cache.emplace(msq, ModePropagator(coeffs, params, r)(t));
    }
    const Mat3& E = cache.at(msq);
    cplx d(0.0);
    cplx w[3] = {cplx(0.0), cplx(0.0), cplx(0.0)};
    double kh[3] = {0, 0, 0};
    if (msq == 0) {
      for (int c = 0; c < g.dim; ++c) w[c] = initial.v_h[static_cast<std::size_t>(c)][i];
    } else {
      double km = 0.0;
      for (int c = 0; c < g.dim; ++c) {
        kh[c] = g.wavenumber(g.mode(i, c));
        km += kh[c] * kh[c];
      }
      km = std::sqrt(km);
      for (int c = 0; c < g.dim; ++c) kh[c] /= km;
      for (int c = 0; c < g.dim; ++c)
        d += kI * kh[c] * initial.v_h[static_cast<std::size_t>(c)][i];
      for (int c = 0; c < g.dim; ++c)
        w[c] = initial.v_h[static_cast<std::size_t>(c)][i] + kI * d * kh[c];
    }
    const Eigen::Vector3cd u = E * Eigen::Vector3cd(initial.rho_h[i], d, initial.phi_h[i]);
    out.rho_h[i] = u(0);
    out.phi_h[i] = u(2);
    for (int c = 0; c < g.dim; ++c)
      out.v_h[static_cast<std::size_t>(c)][i] = -kI * u(1) * kh[c] + ew * w[c];
  }
  return out;
}

double least_damped_lattice_rate(const TorusGrid& grid, const ModelParams& params,
                                 const DerivedCoeffs& coeffs) {
  std::vector<int> seen;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.total(); ++i) {
    const int msq = grid.mode_sq(i);
    if (msq == 0 || !grid.dealias_keep(i)) continue;
    if (std::find(seen.begin(), seen.end(), msq) != seen.end()) continue;
    seen.push_back(msq);
    const double r = 2.0 * M_PI * std::sqrt(static_cast<double>(msq)) / grid.L;
    worst = std::max(worst, eigen_solve(symbol(coeffs, params, r)).max_re());
  }
  return -worst;
}

EscapeExperiment run_escape_experiment(const ModelParams& params,
                                       const DerivedCoeffs& coeffs,
                                       const GrowthSummary& growth,
                                       const std::vector<double>& deltas,
                                       double epsilon0, EscapeOptions opts) {
  if (growth.regime != Stability::Unstable || !(growth.Theta > 0.0))
    throw std::domain_error("escape experiment: requires the unstable regime");
  if (deltas.empty()) throw std::domain_error("escape experiment: empty delta sweep");
  for (double d : deltas) {
    if (!(d > 0.0) || d * std::exp(3.0) > epsilon0)
      throw std::domain_error(
          "escape experiment: delta too large for a linear phase of >= 3/Theta");
  }

  EscapeExperiment exp;
  exp.epsilon0 = epsilon0;
  exp.Theta = growth.Theta;
  exp.expected_slope = 1.0 / growth.Theta;

  const TorusGrid grid = TorusGrid::resonant_1d(opts.n, growth.xi0, opts.harmonic);
  if (!grid.resonant_with(growth.xi0, 1e-9 * growth.xi0))
    throw std::runtime_error("escape experiment: grid lost the resonant mode");
  exp.k_star = growth.xi0;

  const SpectralPoint at = eigen_solve(symbol(coeffs, params, exp.k_star));
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (at.lambda[static_cast<std::size_t>(i)].real() >
        at.lambda[static_cast<std::size_t>(best)].real())
      best = i;
  const cplx lam = at.lambda[static_cast<std::size_t>(best)];
  if (std::abs(lam.imag()) > 1e-10 * std::max(1.0, std::abs(lam)))
    throw std::runtime_error(
        "escape experiment: attaining eigenvalue is not real at the resonant mode");
  exp.lambda_star = lam.real();

  StepperConfig cfg;
  cfg.dt = opts.dt > 0.0 ? opts.dt
                         : 0.5 * cfg.cfl_limit / (coeffs.a * grid.k_max());
  TorusSolver solver(grid, params, coeffs, cfg);

  const double t_max = opts.t_max > 0.0
                           ? opts.t_max
                           : 1.5 * std::log(2.0 * epsilon0 / *std::min_element(
                                                deltas.begin(), deltas.end())) /
                                     growth.Theta +
                                 10.0 / growth.Theta;

  const double dratio = -exp.lambda_star / (coeffs.a * exp.k_star);
  const double pratio =
      params.gamma /
      (exp.lambda_star + params.nu + params.mu * exp.k_star * exp.k_star);
  const std::size_t jp = static_cast<std::size_t>(opts.harmonic);
  const std::size_t jm = static_cast<std::size_t>(grid.n - opts.harmonic);

  for (double delta : deltas) {
    EscapeRun run;
    run.delta = delta;
    TorusField state = TorusField::zero(grid);
    const double amp = 0.5 * delta * std::sqrt(2.0 / grid.L);
    state.rho_h[jp] = state.rho_h[jm] = cplx(amp, 0.0);
    state.v_h[0][jp] = -kI * cplx(dratio * amp, 0.0);
    state.v_h[0][jm] = kI * cplx(dratio * amp, 0.0);
    state.phi_h[jp] = state.phi_h[jm] = cplx(pratio * amp, 0.0);

    double t = 0.0;
    double prev_norm = state.rho_norm();
    run.times.push_back(0.0);
    run.rho_norm.push_back(prev_norm);
    long step_idx = 0;
    while (t < t_max) {
      solver.step(state);
      t += cfg.dt;
      ++step_idx;
      const double nrm = state.rho_norm();
      if (step_idx % opts.sample_stride == 0) {
        run.times.push_back(t);
        run.rho_norm.push_back(nrm);
      }
      if (nrm >= epsilon0) {
        // log-linear interpolation of the crossing inside the last step
        run.T_measured =
            t - cfg.dt + cfg.dt * std::log(epsilon0 / prev_norm) / std::log(nrm / prev_norm);
        run.crossed = true;
        run.times.push_back(t);
        run.rho_norm.push_back(nrm);
        break;
      }
      prev_norm = nrm;
    }
    exp.runs.push_back(std::move(run));
  }

  std::vector<double> x, y;
  for (const auto& run : exp.runs) {
    if (!run.crossed) continue;
    x.push_back(std::log(1.0 / run.delta));
    y.push_back(run.T_measured);
  }
  exp.conclusive = x.size() == exp.runs.size() && x.size() >= 2;
  if (x.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      mx += x[i];
      my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxx += (x[i] - mx) * (x[i] - mx);
      sxy += (x[i] - mx) * (y[i] - my);
    }
    exp.slope = sxy / sxx;
  }
  return exp;
}

DecayExperiment run_decay_experiment(const ModelParams& params,
                                     const DerivedCoeffs& coeffs, double amplitude,
                                     double t_max, std::uint64_t seed,
                                     DecayOptions opts) {
  if (classify_stability(coeffs, params.nu) != Stability::Stable)
    throw std::domain_error("decay experiment: requires the stable regime");
  if (!(amplitude > 0.0)) throw std::domain_error("decay experiment: amplitude must be > 0");
  if (!(t_max > 6.0 / params.alpha))
    throw std::domain_error(
        "decay experiment: t_max must exceed the 5/alpha transient plus a fit window");

  const TorusGrid grid = TorusGrid::make(opts.dim, opts.n, opts.L);
  StepperConfig cfg;
  cfg.dt = opts.dt > 0.0 ? opts.dt
                         : 0.5 * cfg.cfl_limit / (coeffs.a * grid.k_max());
  TorusSolver solver(grid, params, coeffs, cfg);

  // seeded multi-mode excitation on the first few harmonics of each axis
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  TorusField state = TorusField::zero(grid);
  auto excite = [&](std::vector<cplx>& f, std::size_t idx_p, std::size_t idx_m) {
    const cplx c = 0.5 * std::exp(kI * phase(rng));
    f[idx_p] += c;
    f[idx_m] += std::conj(c);
  };
  for (int m = 1; m <= opts.max_excited_mode; ++m) {
    for (int axis = 0; axis < grid.dim; ++axis) {
      std::size_t stride = 1;
      for (int d = grid.dim - 1; d > axis; --d) stride *= static_cast<std::size_t>(grid.n);
      const std::size_t idx_p = static_cast<std::size_t>(m) * stride;
      const std::size_t idx_m =
          static_cast<std::size_t>(grid.n - m) * stride;
      excite(state.rho_h, idx_p, idx_m);
      excite(state.phi_h, idx_p, idx_m);
      for (int c = 0; c < grid.dim; ++c)
        excite(state.v_h[static_cast<std::size_t>(c)], idx_p, idx_m);
    }
  }
  const double scale = amplitude / state.rho_norm();
  for (auto& z : state.rho_h) z *= scale;
  for (auto& z : state.phi_h) z *= scale;
  for (int c = 0; c < grid.dim; ++c)
    for (auto& z : state.v_h[static_cast<std::size_t>(c)]) z *= scale;

  DecayExperiment out;
  auto sample = [&](double t) {
    out.times.push_back(t);
    for (int k = 0; k <= 3; ++k) {
      out.norms[0][static_cast<std::size_t>(k)].push_back(state.rho_norm(k));
      out.norms[1][static_cast<std::size_t>(k)].push_back(state.v_norm(k));
      out.norms[2][static_cast<std::size_t>(k)].push_back(state.phi_norm(k));
    }
  };
  sample(0.0);

  double t = 0.0;
  long step_idx = 0;
  const double guard = 10.0 * amplitude;
  while (t < t_max) {
    solver.step(state);
    t += cfg.dt;
    ++step_idx;
    if (step_idx % opts.sample_stride == 0) sample(t);
    if (state.rho_norm() > guard)
      throw std::runtime_error(
          "decay experiment: growth detected in the stable regime");
  }

  std::array<std::vector<double>, 4> rho_phi, v;
  for (int k = 0; k <= 3; ++k) {
    const auto& r = out.norms[0][static_cast<std::size_t>(k)];
    const auto& p = out.norms[2][static_cast<std::size_t>(k)];
    auto& rp = rho_phi[static_cast<std::size_t>(k)];
    rp.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      rp[i] = std::sqrt(r[i] * r[i] + p[i] * p[i]);
    v[static_cast<std::size_t>(k)] = out.norms[1][static_cast<std::size_t>(k)];
  }
  out.M_series = weighted_sup_series(out.times, rho_phi, v);

  const double transient = 5.0 / params.alpha;
  const RateFit fit =
      fit_exponential(out.times, out.norms[0][0], {transient, t_max});
  out.fitted_rate = fit.rate;
  out.fit_r2 = fit.r_squared;
  out.expected_rate = least_damped_lattice_rate(grid, params, coeffs);
  out.rate_pass =
      std::abs(out.fitted_rate - out.expected_rate) <= 0.05 * out.expected_rate;
  return out;
}

}  // namespace vspectra
