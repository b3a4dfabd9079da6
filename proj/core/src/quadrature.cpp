#include "vspectra/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "vspectra/parallel.hpp"

namespace vspectra {

namespace {

// Simpson weights for n intervals (n even) of width h
std::vector<double> simpson_weights(int n, double h) {
  std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
  w.front() = w.back() = h / 3.0;
  for (int i = 1; i < n; ++i)
    w[static_cast<std::size_t>(i)] = (i % 2 ? 4.0 : 2.0) * h / 3.0;
  return w;
}

}  // namespace

RadialGrid RadialGrid::log_linear(double r_min, double r_split, double r_max,
                                  int n_log, int n_lin) {
  if (!(0.0 < r_min && r_min < r_split && r_split < r_max))
    throw std::domain_error("radial grid: need 0 < r_min < r_split < r_max");
  if (n_log < 2 || n_lin < 2 || n_log % 2 || n_lin % 2)
    throw std::domain_error("radial grid: interval counts must be even and >= 2");

  RadialGrid g;
  g.r.reserve(static_cast<std::size_t>(n_log + n_lin) + 1);
  g.w.assign(static_cast<std::size_t>(n_log + n_lin) + 1, 0.0);

  // inner segment: substitute r = e^u; Int f dr = Int f(e^u) e^u du
  const double ulo = std::log(r_min), uhi = std::log(r_split);
  const double hu = (uhi - ulo) / n_log;
  const auto wu = simpson_weights(n_log, hu);
  for (int i = 0; i <= n_log; ++i) {
    const double r = std::exp(ulo + hu * i);
    g.r.push_back(r);
    g.w[static_cast<std::size_t>(i)] += wu[static_cast<std::size_t>(i)] * r;
  }
  g.r.back() = r_split;

  const double hr = (r_max - r_split) / n_lin;
  const auto wr = simpson_weights(n_lin, hr);
  g.w[static_cast<std::size_t>(n_log)] += wr.front();
  for (int i = 1; i <= n_lin; ++i) {
    g.r.push_back(r_split + hr * i);
    g.w[static_cast<std::size_t>(n_log + i)] += wr[static_cast<std::size_t>(i)];
  }
  g.r.back() = r_max;
  return g;
}

RadialGrid RadialGrid::linear(double lo, double hi, int n) {
  if (!(0.0 <= lo && lo < hi)) throw std::domain_error("radial grid: need 0 <= lo < hi");
  if (n < 2 || n % 2) throw std::domain_error("radial grid: intervals must be even");
  RadialGrid g;
  const double h = (hi - lo) / n;
  g.w = simpson_weights(n, h);
  g.r.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) g.r.push_back(lo + h * i);
  g.r.back() = hi;
  return g;
}

RadialGrid RadialGrid::coarsened() const {
  // Recompute Simpson weights on the even-indexed nodes. Works for both
  // segments because coarsening preserves the even interval counts and
  // the log/linear node placement.
  if (r.size() < 5 || r.size() % 2 == 0)
    throw std::domain_error("radial grid: cannot coarsen");
  RadialGrid g;
  const std::size_t n = r.size() / 2;
  g.r.reserve(n + 1);
  for (std::size_t i = 0; i < r.size(); i += 2) g.r.push_back(r[i]);
  g.w.assign(g.r.size(), 0.0);
  // rebuild weights segment-wise: detect the log->linear break as the node
  // where spacing switches from geometric to arithmetic; simpler and robust:
  // integrate with locally exact Simpson on consecutive node triples
  for (std::size_t i = 0; i + 2 < g.r.size(); i += 2) {
    const double h0 = g.r[i + 1] - g.r[i];
    const double h1 = g.r[i + 2] - g.r[i + 1];
    // nonuniform Simpson (exact for quadratics on arbitrary triples)
    const double H = h0 + h1;
    g.w[i] += H * (2.0 * h0 - h1) / (6.0 * h0);
    g.w[i + 1] += H * H * H / (6.0 * h0 * h1);
    g.w[i + 2] += H * (2.0 * h1 - h0) / (6.0 * h1);
  }
  return g;
}

double radial_norm_sq(const RadialGrid& grid, std::span<const std::complex<double>> f,
                      int k) {
  if (f.size() != grid.r.size())
    throw std::invalid_argument("radial_norm_sq: profile/grid size mismatch");
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    terms[i] = grid.w[i] * std::pow(grid.r[i], 2 * k + 2) * std::norm(f[i]);
  return 4.0 * M_PI * pairwise_sum(terms);
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("trapezoid: need matching arrays, >= 2 points");
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    s += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  return s;
}

}  // namespace vspectra
