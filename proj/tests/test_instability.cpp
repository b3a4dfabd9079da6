#include "doctest.h"
#include "test_helpers.hpp"
#include "vspectra/instability.hpp"
#include "vspectra/semigroup.hpp"

using namespace vspectra;
using namespace vspectra::testing;

namespace {

struct Fixture {
  ModelParams params = unstable_params();
  DerivedCoeffs coeffs = derive_coeffs(params);
  GrowthSummary growth = find_growth_max(coeffs, params);
};

}  // namespace

TEST_CASE("build_bump satisfies its construction invariants") {
  Fixture fx;
  const double theta_bar = fx.growth.Theta / 4.0;
  const BumpData bump = build_bump(fx.growth, fx.coeffs, fx.params, theta_bar);

  // frozen from the pre-build dense-scan bisection for theta_bar = Theta/4
  CHECK(bump.zeta_bar == doctest::Approx(0.149286).epsilon(2e-3));
  CHECK(bump.zeta_bar <= fx.growth.xi0 / 4.0);

  // Re lambda0 at the bump center equals Theta (grid midpoint sits at xi0)
  const std::size_t mid = bump.grid.size() / 2;
  CHECK(bump.grid.r[mid] == doctest::Approx(fx.growth.xi0).epsilon(1e-12));
  CHECK(bump.lambda0[mid].real() == doctest::Approx(fx.growth.Theta).epsilon(1e-9));

  // certified growth on the whole support
  for (const auto& l0 : bump.lambda0)
    CHECK(l0.real() >= fx.growth.Theta - theta_bar - 1e-10);

  // Psi support and normalization
  CHECK(std::abs(bump.values.front()[0]) == 0.0);
  CHECK(std::abs(bump.values.back()[0]) == 0.0);
  CHECK(bump.initial_norm[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (double n : bump.initial_norm) CHECK(n > 0.0);

  // ||d0|| bounds: the support infimum (always valid) and the stronger
  // xi0-enlarged bound, both satisfied for the default set
  CHECK(bump.initial_norm[1] >= bump.d_lower_bound - 1e-12);
  CHECK(bump.initial_norm[1] >=
        fx.growth.Theta / (fx.coeffs.a * (fx.growth.xi0 + 2.0 * bump.zeta_bar)));
}

TEST_CASE("build_bump is monotone in theta_bar") {
  Fixture fx;
  double prev = 0.0;
  for (double frac : {0.1, 0.25, 0.4}) {
    const BumpData b = build_bump(fx.growth, fx.coeffs, fx.params, frac * fx.growth.Theta);
    CHECK(b.zeta_bar >= prev);
    prev = b.zeta_bar;
  }
}

TEST_CASE("build_bump rejects bad inputs") {
  Fixture fx;
  CHECK_THROWS_AS(build_bump(fx.growth, fx.coeffs, fx.params, 0.0), std::domain_error);
  // Theta/2 itself is outside the open interval
  CHECK_THROWS_AS(build_bump(fx.growth, fx.coeffs, fx.params, fx.growth.Theta / 2.0),
                  std::domain_error);

  const ModelParams ps = stable_params();
  const DerivedCoeffs cs = derive_coeffs(ps);
  const GrowthSummary gs = find_growth_max(cs, ps, {1e-3, 1e3, 512, 1e-10});
  CHECK_THROWS_AS(build_bump(gs, cs, ps, 0.01), std::domain_error);
}

TEST_CASE("sandwich holds at t=0 and through the horizon") {
  Fixture fx;
  const double theta_bar = fx.growth.Theta / 4.0;
  const BumpData bump = build_bump(fx.growth, fx.coeffs, fx.params, theta_bar);

  std::vector<double> times;
  for (int i = 0; i <= 20; ++i) times.push_back(20.0 / fx.growth.Theta * i / 20.0);
  const SandwichReport rep = sandwich_check(bump, fx.coeffs, fx.params, times);
  CHECK(rep.pass);
  CHECK(rep.worst_lower >= 1.0 - 1e-6);
  CHECK(rep.worst_upper <= 1.0 + 1e-6);
  CHECK(rep.cross_check_error < 1e-10);

  SUBCASE("midpoint Theta*t = 5 sits inside the sandwich") {
    const double t = 5.0 / fx.growth.Theta;
    const SandwichReport one = sandwich_check(bump, fx.coeffs, fx.params, {0.0, t});
    CHECK(one.pass);
  }
}

TEST_CASE("sandwich passes across a theta_bar grid in (0, Theta/2)") {
  Fixture fx;
  std::vector<double> times;
  for (int i = 0; i <= 10; ++i) times.push_back(15.0 / fx.growth.Theta * i / 10.0);
  for (double frac : {0.05, 0.15, 0.25, 0.35, 0.45}) {
    const BumpData bump =
        build_bump(fx.growth, fx.coeffs, fx.params, frac * fx.growth.Theta);
    CHECK(sandwich_check(bump, fx.coeffs, fx.params, times).pass);
  }
}

TEST_CASE("upper bound tightens as the bump narrows") {
  Fixture fx;
  const double theta_bar = fx.growth.Theta / 4.0;
  const double t = 10.0 / fx.growth.Theta;
  double prev_ratio = 0.0;
  for (double cap : {0.12, 0.06, 0.03}) {
    const BumpData bump =
        build_bump(fx.growth, fx.coeffs, fx.params, theta_bar, 2048, cap);
    const SandwichReport rep = sandwich_check(bump, fx.coeffs, fx.params, {t});
    CHECK(rep.worst_upper > prev_ratio);
    prev_ratio = rep.worst_upper;
  }
  CHECK(prev_ratio > 0.9);  // narrowest bump grows nearly like e^{Theta t}
}

TEST_CASE("predict_escape") {
  CHECK(predict_escape(0.5, 0.01, 2.0 * 0.01 / M_E).T_delta ==
        doctest::Approx(1.0 / 0.5).epsilon(1e-12));
  CHECK(predict_escape(0.5, 0.01, 1e-5).T_delta ==
        doctest::Approx(2.0 * std::log(2000.0)).epsilon(1e-12));

  SUBCASE("halving delta adds ln2/Theta") {
    const double Theta = 0.37;
    const double t1 = predict_escape(Theta, 0.05, 1e-4).T_delta;
    const double t2 = predict_escape(Theta, 0.05, 5e-5).T_delta;
    CHECK(t2 - t1 == doctest::Approx(std::log(2.0) / Theta).epsilon(1e-12));
  }
  SUBCASE("strictly decreasing in delta") {
    double prev = 1e300;
    for (double d : {1e-6, 1e-5, 1e-4, 1e-3}) {
      const double t = predict_escape(0.2, 0.05, d).T_delta;
      CHECK(t < prev);
      prev = t;
    }
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(predict_escape(0.5, 0.01, 0.02), std::domain_error);
    CHECK_THROWS_AS(predict_escape(0.5, 0.01, 0.0), std::domain_error);
    CHECK_THROWS_AS(predict_escape(-1.0, 0.01, 1e-4), std::domain_error);
  }
}
