#include <random>

#include "doctest.h"
#include "test_helpers.hpp"
#include "vspectra/semigroup.hpp"

using namespace vspectra;
using namespace vspectra::testing;

namespace {

double max_entry(const Mat3& m) {
  double v = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v = std::max(v, std::abs(m(i, j)));
  return v;
}

// 30-term Taylor series with argument halving until the norm is small
Mat3 taylor_exp(Mat3 m) {
  int halvings = 0;
  while (max_entry(m) > 0.25 && halvings < 60) {
    m /= 2.0;
    ++halvings;
  }
  Mat3 sum = Mat3::Identity();
  Mat3 term = Mat3::Identity();
  for (int k = 1; k <= 30; ++k) {
    term = term * m / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < halvings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace

TEST_CASE("cutoff function psi") {
  CHECK(psi_cutoff(0.0) == 1.0);
  CHECK(psi_cutoff(1.0) == 1.0);
  CHECK(psi_cutoff(2.0) == 0.0);
  CHECK(psi_cutoff(3.0) == 0.0);
  double prev = 1.0;
  for (double r = 1.0; r <= 2.0; r += 0.01) {
    const double v = psi_cutoff(r);
    CHECK(v <= prev + 1e-15);  // monotone transition
    CHECK(v >= 0.0);
    prev = v;
  }
}

TEST_CASE("matrix_exp against the Taylor-series oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = cplx(u(rng), u(rng));
    if (trial % 3 == 0) m *= 20.0;  // exercise the squaring path
    const Mat3 e = matrix_exp(m);
    const Mat3 ref = taylor_exp(m);
    CHECK(max_entry(e - ref) < 1e-11 * std::max(1.0, max_entry(ref)));
  }
}

TEST_CASE("mode_exp basics") {
  const ModelParams p = stable_params();
  const DerivedCoeffs c = derive_coeffs(p);

  SUBCASE("t=0 is the identity") {
    for (double r : {0.0, 0.7, 12.0}) {
      const ModePropagator prop(c, p, r);
      CHECK(max_entry(prop(0.0) - Mat3::Identity()) < 1e-12);
    }
  }
  SUBCASE("r=0, t=1 action matches the series oracle") {
    const SymbolMatrix sym = symbol(c, p, 0.0);
    const ModePropagator prop(c, p, 0.0);
    CHECK(max_entry(prop(1.0) - taylor_exp(sym.matrix())) < 1e-12);
    // row 1 is exactly (1, 0, 0): the density mode is frozen at r=0
    CHECK(prop(1.0)(0, 0) == cplx(1.0));
    CHECK(prop(1.0)(0, 1) == cplx(0.0));
    CHECK(prop(1.0)(0, 2) == cplx(0.0));
  }
  SUBCASE("semigroup property") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ur(0.01, 30.0);
    for (int i = 0; i < 20; ++i) {
      const ModePropagator prop(c, p, ur(rng));
      const Mat3 whole = prop(1.0);
      const Mat3 split = prop(0.3) * prop(0.7);
      CHECK(max_entry(whole - split) < 1e-8 * std::max(1.0, max_entry(whole)));
    }
  }
  SUBCASE("spectral form agrees with scaling-and-squaring") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> ur(0.01, 20.0), ut(0.0, 10.0);
    for (int i = 0; i < 100; ++i) {
      const double r = ur(rng);
      const double t = ut(rng);
      const SymbolMatrix sym = symbol(c, p, r);
      const SpectralPoint spectral = eigen_solve(sym);
      SpectralPoint forced = spectral;
      forced.degenerate = true;  // route through the Pade path
      const Mat3 a = mode_exp(spectral, sym, t);
      const Mat3 b = mode_exp(forced, sym, t);
      CHECK(max_entry(a - b) < 1e-8 * std::max(1.0, max_entry(a)));
    }
  }
  SUBCASE("negative time rejected") {
    const ModePropagator prop(c, p, 1.0);
    CHECK_THROWS_AS(prop(-0.5), std::domain_error);
  }
}

TEST_CASE("radial profiles: cutoff construction, split, quadrature check") {
  const RadialGrid g = RadialGrid::log_linear(1e-6, 1.0, 2.0, 1024, 1024);
  const RadialProfile p = make_cutoff_profile(g, {1.0, 0.5, 0.3});
  CHECK(p.quadrature_accepted());
  CHECK(p.norm(0) > 0.0);
  const RadialProfile lo = p.low_part();
  const RadialProfile hi = p.high_part();
  for (std::size_t i = 0; i < g.size(); i += 97) {
    const cplx sum = lo.values[i][0] + hi.values[i][0];
    CHECK(std::abs(sum - p.values[i][0]) < 1e-14);
  }

  SUBCASE("ragged data fails the quadrature check") {
    RadialProfile noisy = p;
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& v : noisy.values) v[0] = u(rng);
    CHECK_FALSE(noisy.quadrature_accepted());
  }
}

TEST_CASE("evolve_linear: zero data and linearity") {
  const ModelParams p = stable_params();
  const DerivedCoeffs c = derive_coeffs(p);
  const RadialGrid g = RadialGrid::log_linear(1e-6, 1.0, 2.0, 512, 512);

  RadialProfile zero = make_cutoff_profile(g, {0.0, 0.0, 0.0});
  const RadialProfile z5 = evolve_linear(zero, c, p, 5.0);
  CHECK(z5.norm(0) == 0.0);
  CHECK(z5.norm(1) == 0.0);
  CHECK(z5.norm(2) == 0.0);

  const RadialProfile base = make_cutoff_profile(g, {1.0, 0.5, 0.3});
  RadialProfile scaled = base;
  for (auto& v : scaled.values)
    for (auto& z : v) z *= 3.0;
  const RadialProfile e1 = evolve_linear(base, c, p, 2.0);
  const RadialProfile e3 = evolve_linear(scaled, c, p, 2.0);
  for (int comp = 0; comp < 3; ++comp)
    CHECK(e3.norm(comp) == doctest::Approx(3.0 * e1.norm(comp)).epsilon(1e-12));
}

TEST_CASE("band-supported data decays at least at the band rate") {
  const ModelParams p = stable_params();
  const DerivedCoeffs c = derive_coeffs(p);
  // bump supported in [1, 2]
  const RadialGrid g = RadialGrid::linear(1.0, 2.0, 1024);
  RadialProfile bump;
  bump.grid = g;
  bump.values.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double s = cinf_step(1.0 - std::abs(2.0 * (g.r[i] - 1.5)));
    bump.values[i] = {s, 0.5 * s, 0.25 * s};
  }
  const BandBound band = middle_band_bound(c, p, 1.0, 2.0, 512);
  REQUIRE(band.vartheta > 0.0);

  const LinearEvolver ev(bump, c, p);
  std::vector<double> ts, total;
  for (int i = 0; i <= 24; ++i) {
    const double t = 1.0 + i * 0.5;
    const auto n = ev.norms(t, 0);
    ts.push_back(t);
    total.push_back(std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]));
  }
  const RateFit fit = fit_exponential(ts, total, {ts.front(), ts.back()});
  CHECK(fit.rate >= 0.95 * band.vartheta);
}

TEST_CASE("omega decay is the exact scalar law") {
  CHECK(omega_decay(1.0, 2.0, 0.0) == 1.0);
  CHECK(omega_decay(1.0, 2.0, 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  const double f1 = omega_decay(1.0, 0.7, 3.0);
  const double f2 = omega_decay(1.0, 0.7, 6.0);
  CHECK(f2 == doctest::Approx(f1 * f1).epsilon(1e-14));
  CHECK_THROWS_AS(omega_decay(1.0, 2.0, -1.0), std::domain_error);

  const OmegaState omega{0.5, 2.0};
  CHECK(omega.norm_at(0.0) == 2.0);
  CHECK(omega.norm_at(4.0) == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-15));
}

TEST_CASE("duhamel envelopes") {
  SUBCASE("constant source against the closed-form kernel integral") {
    const double t = 100.0;
    std::vector<double> tau(2001), n1(2001, 1.0), n2(2001, 0.0);
    for (std::size_t i = 0; i < tau.size(); ++i)
      tau[i] = t * static_cast<double>(i) / (tau.size() - 1);
    const DuhamelEnvelope env = duhamel_envelope(tau, n1, n2, t, 0);
    // Int_0^t (1+t-s)^{-3/4} ds = 4((1+t)^{1/4} - 1)
    const double expected = 4.0 * (std::pow(1.0 + t, 0.25) - 1.0);
    CHECK(env.s1_bound == doctest::Approx(expected).epsilon(1e-3));
  }
  SUBCASE("zero source gives a zero envelope") {
    std::vector<double> tau{0.0, 1.0, 2.0}, z(3, 0.0);
    const DuhamelEnvelope env = duhamel_envelope(tau, z, z, 2.0, 1);
    CHECK(env.s1_bound == 0.0);
    CHECK(env.s2_bound == 0.0);
  }
  SUBCASE("s1=9/4, s2=2 convolution stays below C(1+t)^{-2}") {
    for (double t : {10.0, 100.0, 1000.0}) {
      const double v = convolution_bound(2.25, 2.0, t);
      CHECK(v * std::pow(1.0 + t, 2.0) < 4.0);
    }
  }
}

TEST_CASE("decay_envelope_check rejects bad inputs") {
  const ModelParams pu = unstable_params();
  const DerivedCoeffs cu = derive_coeffs(pu);
  const RadialGrid g = RadialGrid::log_linear(1e-6, 1.0, 2.0, 256, 256);
  const RadialProfile prof = make_cutoff_profile(g, {1.0, 0.5, 0.3});
  CHECK_THROWS_AS(decay_envelope_check(cu, pu, prof), std::domain_error);

  const ModelParams ps = stable_params();
  const DerivedCoeffs cs = derive_coeffs(ps);
  const RadialProfile hollow = make_cutoff_profile(g, {0.0, 0.5, 0.3});
  CHECK_THROWS_AS(decay_envelope_check(cs, ps, hollow), std::domain_error);
}
