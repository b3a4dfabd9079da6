#include "vspectra/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vspectra/cubic.hpp"
#include "vspectra/parallel.hpp"

namespace vspectra {

SymbolMatrix::SymbolMatrix(const DerivedCoeffs& c, const ModelParams& p, double radius)
    : r(radius), a(c.a), b(c.b), alpha(p.alpha), nu(p.nu), mu(p.mu), gamma(p.gamma) {
  if (!(radius >= 0.0)) throw std::domain_error("symbol: wavenumber must be >= 0");
}

Mat3 SymbolMatrix::matrix() const {
  Mat3 m;
  m << cplx(0.0), cplx(-a * r), cplx(0.0),
       cplx(a * r), cplx(-alpha), cplx(-b * r),
       cplx(gamma), cplx(0.0), cplx(-(nu + mu * r * r));
  return m;
}

SymbolMatrix symbol(const DerivedCoeffs& coeffs, const ModelParams& params, double r) {
  return SymbolMatrix(coeffs, params, r);
}

double SpectralPoint::max_re() const {
  return std::max({lambda[0].real(), lambda[1].real(), lambda[2].real()});
}

namespace {

// Large-r path. With c0 = -(mu r^2 + nu), the characteristic polynomial
// recentered at c0 has exactly cancelled coefficients:
//   F(c0)      = -a b gamma r^2
//   F'(c0)     = mu^2 r^4 + (2 mu nu + a^2 - alpha mu) r^2 + nu^2 - alpha nu
//   F''(c0)/2  = 2 c0 + alpha
// so the parabolic root c0 + eps and, by deflation, the acoustic pair are
// obtained at full relative precision where the direct cubic would lose the
// O(1/r^2) residual to cancellation.
bool solve_large_r(const SymbolMatrix& m, std::array<cplx, 3>& out) {
  const double r2 = m.r * m.r;
  const double c0 = -(m.mu * r2 + m.nu);
  const double g0 = -m.a * m.b * m.gamma * r2;
  const double g1 = m.mu * m.mu * r2 * r2 +
                    (2.0 * m.mu * m.nu + m.a * m.a - m.alpha * m.mu) * r2 +
                    m.nu * m.nu - m.alpha * m.nu;
  const double g2 = 2.0 * c0 + m.alpha;
  if (!(g1 > 0.0)) return false;

  double eps = -g0 / g1;
  for (int it = 0; it < 3; ++it) {
    const double f = ((eps + g2) * eps + g1) * eps + g0;
    const double df = (3.0 * eps + 2.0 * g2) * eps + g1;
    if (df == 0.0) return false;
    eps -= f / df;
  }
  if (!(std::abs(eps) < 0.05 * std::abs(c0))) return false;

  const double lam3 = c0 + eps;
  // remaining quadratic: sum = -p2 - lam3 = -(alpha + eps), product = -p0/lam3
  const double sum = -(m.alpha + eps);
  const double prod = -m.p0() / lam3;
  const double quarter = sum * sum / 4.0 - prod;
  if (quarter >= 0.0) return false;  // pair not complex: defer to generic path
  const double im = std::sqrt(-quarter);
  out[0] = cplx(sum / 2.0, im);
  out[1] = cplx(sum / 2.0, -im);
  out[2] = cplx(lam3, 0.0);
  return true;
}

// canonical order: conjugate pair (+Im, -Im) then real; all-real ascending
void canonical_order(std::array<cplx, 3>& roots) {
  int complex_idx = -1;
  for (int i = 0; i < 3; ++i)
    if (roots[i].imag() != 0.0) complex_idx = i;
  if (complex_idx < 0) {
    std::sort(roots.begin(), roots.end(),
              [](const cplx& x, const cplx& y) { return x.real() < y.real(); });
    return;
  }
  cplx real_root;
  cplx pair;
  for (int i = 0; i < 3; ++i) {
    if (roots[i].imag() == 0.0) real_root = roots[i];
    else if (roots[i].imag() > 0.0) pair = roots[i];
  }
  roots = {pair, std::conj(pair), real_root};
}

double max_entry_norm(const Mat3& m) {
  double v = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v = std::max(v, std::abs(m(i, j)));
  return v;
}

}  // namespace

SpectralPoint eigen_solve(const SymbolMatrix& m, double gap_tol) {
  SpectralPoint pt;
  pt.r = m.r;

  const double r2 = m.r * m.r;
  const bool big_r = m.mu * r2 > 50.0 * (m.alpha + m.nu + m.a * m.r + 1.0);
  bool solved = false;
  if (big_r) solved = solve_large_r(m, pt.lambda);
  if (!solved) {
    const CubicRoots cr = solve_monic_cubic(m.p2(), m.p1(), m.p0());
    pt.lambda = cr.roots;
    pt.used_fallback = cr.used_fallback;
  }
  canonical_order(pt.lambda);

  double lam_max = 0.0;
  for (const auto& l : pt.lambda) lam_max = std::max(lam_max, std::abs(l));
  pt.min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      pt.min_gap = std::min(pt.min_gap, std::abs(pt.lambda[i] - pt.lambda[j]));
  pt.degenerate = pt.min_gap < gap_tol * std::max(1.0, lam_max);

  if (!pt.degenerate) {
    const Mat3 A = m.matrix();
    const Mat3 I = Mat3::Identity();
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      pt.projector[i] = (A - pt.lambda[j] * I) * (A - pt.lambda[k] * I) /
                        ((pt.lambda[i] - pt.lambda[j]) * (pt.lambda[i] - pt.lambda[k]));
    }
  }
  return pt;
}

std::vector<SpectralPoint> scan_spectrum(const DerivedCoeffs& coeffs,
                                         const ModelParams& params,
                                         const std::vector<double>& grid,
                                         double gap_tol) {
  std::vector<SpectralPoint> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      out[i] = eigen_solve(symbol(coeffs, params, grid[i]), gap_tol);
  });
  return out;
}

namespace {

constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                              {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

// permutation of `next` minimizing total |next[perm[k]] - prev[k]|; the
// identity wins ties so labels persist through ambiguous nodes
std::array<int, 3> best_assignment(const std::array<cplx, 3>& prev,
                                   const std::array<cplx, 3>& next) {
  double best = std::numeric_limits<double>::infinity();
  int best_p = 0;
  for (int p = 0; p < 6; ++p) {
    double cost = 0.0;
    for (int k = 0; k < 3; ++k) cost += std::abs(next[kPerms[p][k]] - prev[k]);
    if (cost < best) {
      best = cost;
      best_p = p;
    }
  }
  return {kPerms[best_p][0], kPerms[best_p][1], kPerms[best_p][2]};
}

std::array<cplx, 3> low_freq_predictions(const DerivedCoeffs& c, const ModelParams& p,
                                         double r, bool alpha_eq_nu) {
  const double a = c.a, b = c.b, al = p.alpha, nu = p.nu, mu = p.mu, ga = p.gamma;
  const double r2 = r * r;
  if (!alpha_eq_nu) {
    const double c1 = (a * a * (al - nu) + a * b * ga) / (al * (al - nu));
    const double c2 = -(mu * nu * (al - nu) + a * b * ga) / (nu * (al - nu));
    const double c3 = -a * (a * nu - b * ga) / (al * nu);
    return {cplx(-al + c1 * r2), cplx(-nu + c2 * r2), cplx(c3 * r2)};
  }
  const double im = std::sqrt(a * b * ga / al) * r;
  const double re2 = 0.5 * (a * (a * al - b * ga) / (al * al) - mu) * r2;
  const double c3 = -a * (a * al - b * ga) / (al * al);
  return {cplx(-al + re2, im), cplx(-al + re2, -im), cplx(c3 * r2)};
}

std::array<cplx, 3> high_freq_predictions(const DerivedCoeffs& c, const ModelParams& p,
                                          double r) {
  return {cplx(-p.alpha / 2.0, c.a * r), cplx(-p.alpha / 2.0, -c.a * r),
          cplx(-p.mu * r * r - p.nu, 0.0)};
}

// label assignment: labels[l] = index into values closest (jointly) to
// prediction l
std::array<int, 3> assign_labels(const std::array<cplx, 3>& values,
                                 const std::array<cplx, 3>& predictions) {
  double best = std::numeric_limits<double>::infinity();
  int best_p = 0;
  for (int p = 0; p < 6; ++p) {
    double cost = 0.0;
    for (int l = 0; l < 3; ++l) cost += std::abs(values[kPerms[p][l]] - predictions[l]);
    if (cost < best) {
      best = cost;
      best_p = p;
    }
  }
  return {kPerms[best_p][0], kPerms[best_p][1], kPerms[best_p][2]};
}

bool alpha_nu_equal(const ModelParams& p) {
  return std::abs(p.alpha - p.nu) <= 1e-8 * std::max(p.alpha, p.nu);
}

}  // namespace

SpectralBranch build_branches(const DerivedCoeffs& coeffs, const ModelParams& params,
                              const std::vector<double>& grid) {
  if (grid.empty()) throw std::domain_error("build_branches: empty grid");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw std::domain_error("build_branches: grid must be strictly increasing");
  if (!(grid.front() >= 0.0))
    throw std::domain_error("build_branches: grid must be nonnegative");

  SpectralBranch br;
  br.grid = grid;
  br.points = scan_spectrum(coeffs, params, grid);
  for (auto& t : br.tracks) t.reserve(grid.size());

  std::array<cplx, 3> prev = br.points.front().lambda;
  for (int k = 0; k < 3; ++k) br.tracks[k].push_back(prev[k]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const auto perm = best_assignment(prev, br.points[i].lambda);
    for (int k = 0; k < 3; ++k) {
      prev[k] = br.points[i].lambda[perm[k]];
      br.tracks[k].push_back(prev[k]);
    }
  }

  std::array<cplx, 3> first{}, last{};
  for (int k = 0; k < 3; ++k) {
    first[k] = br.tracks[k].front();
    last[k] = br.tracks[k].back();
  }
  br.label_low = assign_labels(
      first, low_freq_predictions(coeffs, params, grid.front(), alpha_nu_equal(params)));
  br.label_high = assign_labels(last, high_freq_predictions(coeffs, params, grid.back()));
  return br;
}

namespace {

// least squares through the origin: y ~ slope * x
double fit_through_origin(const std::vector<double>& x, const std::vector<double>& y) {
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return sxy / sxx;
}

double rel_or_abs_error(double fitted, double expected) {
  if (expected == 0.0) return std::abs(fitted);
  return std::abs(fitted - expected) / std::abs(expected);
}

}  // namespace

LowFreqReport verify_low_freq_expansion(const SpectralBranch& branch,
                                        const DerivedCoeffs& coeffs,
                                        const ModelParams& params) {
  const double a = coeffs.a, b = coeffs.b;
  const double al = params.alpha, nu = params.nu, mu = params.mu, ga = params.gamma;
  const double r_limit =
      0.01 * std::min({1.0, al, nu}) / std::max({1.0, a, b});
  if (branch.grid.size() < 4 || branch.grid.back() > r_limit)
    throw std::domain_error("verify_low_freq_expansion: grid must satisfy r <= " +
                            std::to_string(r_limit));

  LowFreqReport rep;
  rep.alpha_eq_nu = alpha_nu_equal(params);

  // trim any degenerate tail so the fit only sees clean points
  std::size_t n = branch.grid.size();
  while (n > 4 && branch.points[n - 1].degenerate) {
    --n;
    rep.window_shrunk = true;
  }
  rep.r_max_used = branch.grid[n - 1];

  std::vector<double> x2(n);
  for (std::size_t i = 0; i < n; ++i) x2[i] = branch.grid[i] * branch.grid[i];

  auto fit_re = [&](int label, double lambda0) {
    const auto& seq = branch.by_low_label(label);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = seq[i].real() - lambda0;
    return fit_through_origin(x2, y);
  };

  if (!rep.alpha_eq_nu) {
    const double e1 = (a * a * (al - nu) + a * b * ga) / (al * (al - nu));
    const double e2 = -(mu * nu * (al - nu) + a * b * ga) / (nu * (al - nu));
    const double e3 = -a * (a * nu - b * ga) / (al * nu);
    const double f1 = fit_re(1, -al), f2 = fit_re(2, -nu), f3 = fit_re(3, 0.0);
    rep.fits.push_back({1, "re_r2_coeff", f1, e1, rel_or_abs_error(f1, e1)});
    rep.fits.push_back({2, "re_r2_coeff", f2, e2, rel_or_abs_error(f2, e2)});
    rep.fits.push_back({3, "re_r2_coeff", f3, e3, rel_or_abs_error(f3, e3)});
    return rep;
  }

  // alpha == nu: oscillatory pair, imaginary part linear in r
  const double e_im = std::sqrt(a * b * ga / al);
  const double e_re = 0.5 * (a * (a * al - b * ga) / (al * al) - mu);
  const double e3 = -a * (a * al - b * ga) / (al * al);
  std::vector<double> x1(branch.grid.begin(), branch.grid.begin() + n);
  const auto& pair_seq = branch.by_low_label(1);
  std::vector<double> yim(n), yre(n);
  for (std::size_t i = 0; i < n; ++i) {
    yim[i] = std::abs(pair_seq[i].imag());
    yre[i] = pair_seq[i].real() + al;
  }
  const double f_im = fit_through_origin(x1, yim);
  const double f_re = fit_through_origin(x2, yre);
  const double f3 = fit_re(3, 0.0);
  rep.fits.push_back({1, "im_r_coeff", f_im, e_im, rel_or_abs_error(f_im, e_im)});
  rep.fits.push_back({1, "re_r2_coeff", f_re, e_re, rel_or_abs_error(f_re, e_re)});
  rep.fits.push_back({3, "re_r2_coeff", f3, e3, rel_or_abs_error(f3, e3)});
  return rep;
}

HighFreqReport verify_high_freq_expansion(const SpectralBranch& branch,
                                          const DerivedCoeffs& coeffs,
                                          const ModelParams& params) {
  const double r_min =
      100.0 * std::max({1.0, coeffs.a, params.alpha, params.nu, 1.0 / params.mu});
  if (branch.grid.size() < 4 || branch.grid.front() < r_min)
    throw std::domain_error("verify_high_freq_expansion: grid must satisfy r >= " +
                            std::to_string(r_min));

  const std::size_t n = branch.grid.size();
  const auto& pair_seq = branch.by_high_label(1);
  const auto& par_seq = branch.by_high_label(3);

  std::vector<double> lx, ly_pair, ly_par;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = branch.grid[i];
    const cplx pair_pred(-params.alpha / 2.0, coeffs.a * r);
    const cplx pred_sign = pair_seq[i].imag() >= 0.0 ? pair_pred : std::conj(pair_pred);
    const double e_pair = std::abs(pair_seq[i] - pred_sign);
    const double e_par = std::abs(par_seq[i] - cplx(-params.mu * r * r - params.nu));
    if (e_pair > 0.0 && e_par > 0.0) {
      lx.push_back(std::log(r));
      ly_pair.push_back(std::log(e_pair));
      ly_par.push_back(std::log(e_par));
    }
  }
  auto slope = [](const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      mx += x[i];
      my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      sxx += (x[i] - mx) * (x[i] - mx);
      sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / sxx;
  };

  HighFreqReport rep;
  rep.slope_pair = slope(lx, ly_pair);
  rep.slope_parabola = slope(lx, ly_par);
  rep.re_pair_last = pair_seq.back().real();
  const double rb = branch.grid.back();
  rep.parabola_ratio_last = par_seq.back().real() / (rb * rb);
  return rep;
}

double default_eta1(const DerivedCoeffs& coeffs, const ModelParams& params) {
  return 0.01 * std::min({1.0, params.alpha, params.nu}) /
         std::max({1.0, coeffs.a, coeffs.b});
}

double default_eta2(const DerivedCoeffs& coeffs, const ModelParams& params) {
  return 100.0 * std::max({1.0, coeffs.a, params.alpha, params.nu,
                           std::sqrt(params.nu / params.mu)});
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2)
    throw std::domain_error("log_grid: need 0 < lo < hi and n >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] =
        std::exp(llo + (lhi - llo) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

GrowthSummary find_growth_max(const DerivedCoeffs& coeffs, const ModelParams& params,
                              SearchWindow window) {
  if (window.r_max <= 0.0) window.r_max = 10.0 * default_eta2(coeffs, params);
  if (!(0.0 < window.r_min && window.r_min < window.r_max))
    throw std::domain_error("find_growth_max: need 0 < r_min < r_max");

  const Stability regime = classify_stability(coeffs, params.nu);
  const auto grid = log_grid(window.r_min, window.r_max, window.coarse_n);

  std::vector<double> g(grid.size());
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      g[i] = eigen_solve(symbol(coeffs, params, grid[i])).max_re();
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < g.size(); ++i)
    if (g[i] > g[best]) best = i;

  GrowthSummary out;
  out.regime = regime;

  if (regime == Stability::Unstable &&
      (best == 0 || best + 1 == g.size())) {
    throw WindowError(
        "find_growth_max: maximum attained at window endpoint r=" +
        std::to_string(grid[best]) +
        "; widen [r_min, r_max] to bracket the interior maximizer");
  }

  if (regime != Stability::Unstable) {
    out.Theta = g[best];
    out.xi0 = grid[best];
    out.attained = false;
    return out;
  }

  // golden-section refinement of max_i Re lambda_i on the bracketing interval
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = grid[best - 1], hi = grid[best + 1];
  auto eval = [&](double r) {
    return eigen_solve(symbol(coeffs, params, r)).max_re();
  };
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = eval(c), fd = eval(d);
  while (hi - lo > window.refine_tol * std::max(1.0, std::abs(lo))) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = eval(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = eval(d);
    }
  }
  out.xi0 = 0.5 * (lo + hi);
  const SpectralPoint at = eigen_solve(symbol(coeffs, params, out.xi0));
  out.Theta = at.max_re();
  out.attained = out.Theta > 0.0;
  for (int i = 0; i < 3; ++i)
    if (at.lambda[i].real() == out.Theta) out.branch_index = i + 1;
  return out;
}

BandBound middle_band_bound(const DerivedCoeffs& coeffs, const ModelParams& params,
                            double eta1, double eta2, int samples) {
  if (!(0.0 < eta1 && eta1 < eta2))
    throw std::domain_error("middle_band_bound: need 0 < eta1 < eta2");

  BandBound out;
  out.regime = classify_stability(coeffs, params.nu);
  const auto grid = log_grid(eta1, eta2, samples);
  const auto pts = scan_spectrum(coeffs, params, grid);

  out.band_max = -std::numeric_limits<double>::infinity();
  for (const auto& pt : pts) {
    out.band_max = std::max(out.band_max, pt.max_re());
    if (pt.degenerate) {
      ++out.degenerate_points;
      continue;
    }
    for (const auto& proj : pt.projector)
      out.proj_norm_max = std::max(out.proj_norm_max, max_entry_norm(proj));
  }

  if (out.regime == Stability::Unstable) {
    out.theta = find_growth_max(coeffs, params).Theta;
    out.within_theta = out.band_max <= out.theta + 1e-10;
  } else {
    out.vartheta = -out.band_max;
  }
  return out;
}

}  // namespace vspectra
