#include <algorithm>
#include <random>

#include "doctest.h"
#include "vspectra/cubic.hpp"

using namespace vspectra;
using cplx = std::complex<double>;

namespace {

// greedy-free exact matching for three elements: try all permutations
double match_distance(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b) {
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  double best = 1e300;
  for (const auto& p : perms) {
    double cost = 0.0;
    for (int i = 0; i < 3; ++i) cost = std::max(cost, std::abs(a[i] - b[p[i]]));
    best = std::min(best, cost);
  }
  return best;
}

}  // namespace

TEST_CASE("three distinct real roots") {
  // (x-1)(x-2)(x-3)
  const CubicRoots r = solve_monic_cubic(-6.0, 11.0, -6.0);
  CHECK_FALSE(r.used_fallback);
  CHECK(match_distance(r.roots, {cplx(1), cplx(2), cplx(3)}) < 1e-13);
  for (const auto& x : r.roots) CHECK(x.imag() == 0.0);
}

TEST_CASE("zero constant term gives an exact zero root") {
  // x(x^2 + 1): roots 0, +-i
  const CubicRoots r = solve_monic_cubic(0.0, 1.0, 0.0);
  CHECK(r.roots[2] == cplx(0.0, 0.0));
  CHECK(r.roots[0] == std::conj(r.roots[1]));
  CHECK(std::abs(r.roots[0] - cplx(0.0, 1.0)) < 1e-15);
}

TEST_CASE("complex pair is an exact conjugate pair, +Im first") {
  // (x+1)(x^2+2x+5): roots -1, -1 +- 2i
  const CubicRoots r = solve_monic_cubic(3.0, 7.0, 5.0);
  CHECK(r.roots[0].imag() > 0.0);
  CHECK(r.roots[0] == std::conj(r.roots[1]));
  CHECK(std::abs(r.roots[0] - cplx(-1.0, 2.0)) < 1e-13);
  CHECK(std::abs(r.roots[2] - cplx(-1.0, 0.0)) < 1e-13);
}

TEST_CASE("triple root") {
  // (x+1)^3
  const CubicRoots r = solve_monic_cubic(3.0, 3.0, 1.0);
  for (const auto& x : r.roots) CHECK(std::abs(x - cplx(-1.0)) < 1e-5);
}

TEST_CASE("near-double root falls back to the companion matrix") {
  // (x-1)^2 (x-2) perturbed into the fallback band
  const double e = 1e-8;
  // (x-1-e)(x-1+e)(x-2) = x^3 - 4x^2 + (5-e^2) x - 2(1-e^2)
  const CubicRoots r = solve_monic_cubic(-4.0, 5.0 - e * e, -2.0 * (1.0 - e * e));
  CHECK(r.used_fallback);
  CHECK(match_distance(r.roots, {cplx(1.0 - e), cplx(1.0 + e), cplx(2.0)}) < 1e-6);
}

TEST_CASE("random cubics match the companion-matrix oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 2000; ++i) {
    const double p = u(rng), q = u(rng), s = u(rng);
    const CubicRoots mine = solve_monic_cubic(p, q, s);
    const auto oracle = companion_roots(p, q, s);
    double scale = 1.0;
    for (const auto& x : oracle) scale = std::max(scale, std::abs(x));
    CHECK(match_distance(mine.roots, oracle) < 1e-8 * scale);
  }
}

TEST_CASE("residuals vanish after polishing") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double p = u(rng), q = u(rng), s = u(rng);
    const CubicRoots r = solve_monic_cubic(p, q, s);
    if (r.used_fallback) continue;
    for (const auto& x : r.roots)
      CHECK(std::abs(cubic_eval(p, q, s, x)) < 1e-12 * std::max(1.0, std::abs(s)) * 100);
  }
}
