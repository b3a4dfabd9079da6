#include "vspectra/ratefit.hpp"

#include <cmath>
#include <stdexcept>

namespace vspectra {

namespace {

struct LineFit {
  double slope;
  double intercept;
  double r_squared;
  double residual_max;
};

LineFit line_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  f.residual_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += e * e;
    f.residual_max = std::max(f.residual_max, std::abs(e));
  }
  f.r_squared = (syy > 0.0) ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;
  return f;
}

void collect_window(std::span<const double> t, std::span<const double> value,
                    FitWindow window, bool log_abscissa_shift,
                    std::vector<double>& x, std::vector<double>& y) {
  if (t.size() != value.size())
    throw std::invalid_argument("ratefit: series length mismatch");
  if (!(window.t_lo < window.t_hi))
    throw std::domain_error("ratefit: empty fit window");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < window.t_lo || t[i] > window.t_hi) continue;
    if (!(value[i] > 0.0))
      throw std::domain_error("ratefit: nonpositive value in fit window");
    x.push_back(log_abscissa_shift ? std::log1p(t[i]) : t[i]);
    y.push_back(std::log(value[i]));
  }
  if (x.size() < 10)
    throw std::domain_error("ratefit: need >= 10 points in the fit window");
}

}  // namespace

RateFit fit_power(std::span<const double> t, std::span<const double> value,
                  FitWindow window) {
  std::vector<double> x, y;
  collect_window(t, value, window, true, x, y);
  const LineFit lf = line_fit(x, y);
  RateFit out;
  out.model = RateFit::Model::Power;
  out.exponent = lf.slope;
  out.amplitude = std::exp(lf.intercept);
  out.r_squared = lf.r_squared;
  out.residual_max = lf.residual_max;
  out.t_lo = window.t_lo;
  out.t_hi = window.t_hi;
  return out;
}

RateFit fit_exponential(std::span<const double> t, std::span<const double> value,
                        FitWindow window) {
  std::vector<double> x, y;
  collect_window(t, value, window, false, x, y);
  const LineFit lf = line_fit(x, y);
  RateFit out;
  out.model = RateFit::Model::Exponential;
  out.rate = -lf.slope;
  out.amplitude = std::exp(lf.intercept);
  out.r_squared = lf.r_squared;
  out.residual_max = lf.residual_max;
  out.t_lo = window.t_lo;
  out.t_hi = window.t_hi;
  return out;
}

std::vector<double> weighted_sup_series(std::span<const double> t,
                                        const std::array<std::vector<double>, 4>& rho_phi,
                                        const std::array<std::vector<double>, 4>& v) {
  for (int k = 0; k < 4; ++k) {
    if (rho_phi[static_cast<std::size_t>(k)].size() != t.size() ||
        v[static_cast<std::size_t>(k)].size() != t.size())
      throw std::domain_error("weighted_sup: missing or mismatched series");
  }
  std::vector<double> out(t.size());
  double running = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double w = 1.0 + t[i];
    double s = 0.0;
    for (int k = 0; k <= 3; ++k)
      s += std::pow(w, 0.75 + 0.5 * k) * rho_phi[static_cast<std::size_t>(k)][i];
    for (int k = 0; k <= 2; ++k)
      s += std::pow(w, 1.25 + 0.5 * k) * v[static_cast<std::size_t>(k)][i];
    s += std::pow(w, 2.25) * v[3][i];
    running = std::max(running, s);
    out[i] = running;
  }
  return out;
}

double weighted_sup(std::span<const double> t,
                    const std::array<std::vector<double>, 4>& rho_phi,
                    const std::array<std::vector<double>, 4>& v) {
  return weighted_sup_series(t, rho_phi, v).back();
}

}  // namespace vspectra
