#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "vspectra/ratefit.hpp"

using namespace vspectra;

namespace {

std::vector<double> log_times(double lo, double hi, int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    t[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return t;
}

}  // namespace

TEST_CASE("fit_power recovers exact power laws") {
  const auto t = log_times(1.0, 1e4, 200);
  std::vector<double> v(t.size());

  for (auto [p, amp] : {std::pair{-0.75, 1.0}, std::pair{-1.25, 3.0}}) {
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = amp * std::pow(1.0 + t[i], p);
    const RateFit f = fit_power(t, v, {t.front(), t.back()});
    CHECK(f.exponent == doctest::Approx(p).epsilon(1e-12));
    CHECK(f.amplitude == doctest::Approx(amp).epsilon(1e-12));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.residual_max < 1e-12);
  }
}

TEST_CASE("fit_power on a two-term decay stays near the slow exponent") {
  const auto t = log_times(1e2, 1e4, 120);
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    v[i] = std::pow(1.0 + t[i], -0.75) + std::pow(1.0 + t[i], -1.75);
  const RateFit f = fit_power(t, v, {1e2, 1e4});
  CHECK(f.exponent > -0.80);
  CHECK(f.exponent < -0.75);
}

TEST_CASE("fit_exponential recovers exact exponentials") {
  std::vector<double> t(60);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = 0.5 * static_cast<double>(i);
  std::vector<double> v(t.size());
  for (auto [c, amp] : {std::pair{2.0, 1.0}, std::pair{0.3, 5.0}}) {
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = amp * std::exp(-c * t[i]);
    const RateFit f = fit_exponential(t, v, {t.front(), t.back()});
    CHECK(f.rate == doctest::Approx(c).epsilon(1e-12));
    CHECK(f.amplitude == doctest::Approx(amp).epsilon(1e-12));
  }
}

TEST_CASE("fit_exponential isolates the slow rate of a bi-exponential") {
  std::vector<double> t, v;
  for (double x = 10.0; x <= 40.0; x += 0.5) {
    t.push_back(x);
    v.push_back(std::exp(-0.3 * x) + std::exp(-3.0 * x));
  }
  const RateFit f = fit_exponential(t, v, {10.0, 40.0});
  CHECK(f.rate == doctest::Approx(0.3).epsilon(0.01));
}

TEST_CASE("fits are invariant under positive rescaling up to amplitude") {
  const auto t = log_times(1.0, 100.0, 50);
  std::vector<double> v(t.size()), w(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    v[i] = std::pow(1.0 + t[i], -1.1);
    w[i] = 7.25 * v[i];
  }
  const RateFit a = fit_power(t, v, {1.0, 100.0});
  const RateFit b = fit_power(t, w, {1.0, 100.0});
  CHECK(a.exponent == doctest::Approx(b.exponent).epsilon(1e-12));
  CHECK(b.amplitude == doctest::Approx(7.25 * a.amplitude).epsilon(1e-12));
}

TEST_CASE("fit input validation") {
  const auto t = log_times(1.0, 100.0, 50);
  std::vector<double> v(t.size(), 1.0);
  v[10] = -1.0;
  CHECK_THROWS_AS(fit_power(t, v, {1.0, 100.0}), std::domain_error);
  std::vector<double> t2{1.0, 2.0, 3.0}, v2{1.0, 1.0, 1.0};
  CHECK_THROWS_AS(fit_power(t2, v2, {1.0, 3.0}), std::domain_error);
  CHECK_THROWS_AS(fit_exponential(t, std::vector<double>(t.size(), 1.0), {5.0, 5.0}),
                  std::domain_error);
}

TEST_CASE("weighted_sup") {
  std::vector<double> t;
  for (double x = 0.0; x <= 50.0; x += 0.5) t.push_back(x);
  std::array<std::vector<double>, 4> rho_phi, v;

  SUBCASE("identically zero series give M = 0") {
    for (auto& s : rho_phi) s.assign(t.size(), 0.0);
    for (auto& s : v) s.assign(t.size(), 0.0);
    CHECK(weighted_sup(t, rho_phi, v) == 0.0);
  }

  SUBCASE("exact envelopes with unit constants make M constant = 8 terms") {
    for (int k = 0; k <= 3; ++k) {
      auto& rp = rho_phi[static_cast<std::size_t>(k)];
      auto& vv = v[static_cast<std::size_t>(k)];
      rp.resize(t.size());
      vv.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) {
        rp[i] = std::pow(1.0 + t[i], -0.75 - 0.5 * k);
        vv[i] = k <= 2 ? std::pow(1.0 + t[i], -1.25 - 0.5 * k)
                       : std::pow(1.0 + t[i], -2.25);
      }
    }
    const auto series = weighted_sup_series(t, rho_phi, v);
    for (double m : series) CHECK(m == doctest::Approx(8.0).epsilon(1e-9));
  }

  SUBCASE("running supremum is nondecreasing") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& s : rho_phi) {
      s.resize(t.size());
      for (auto& x : s) x = u(rng);
    }
    for (auto& s : v) {
      s.resize(t.size());
      for (auto& x : s) x = u(rng);
    }
    const auto series = weighted_sup_series(t, rho_phi, v);
    for (std::size_t i = 1; i < series.size(); ++i) CHECK(series[i] >= series[i - 1]);
  }

  SUBCASE("missing series rejected") {
    for (auto& s : rho_phi) s.assign(t.size(), 1.0);
    for (auto& s : v) s.assign(t.size(), 1.0);
    v[2].clear();
    CHECK_THROWS_AS(weighted_sup(t, rho_phi, v), std::domain_error);
  }
}
