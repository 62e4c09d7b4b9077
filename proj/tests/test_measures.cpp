#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "clusterchain/correlators.hpp"
#include "clusterchain/measures.hpp"

using namespace clusterchain;
using std::numbers::pi;

namespace {

XStateRDM bell() { return {0.5, 0.5, 0.0, 0.5, 0.0, 2}; }

// Random PSD X state: |x|^2 <= uv and |z| <= w with arbitrary phases.
XStateRDM random_x_state(std::mt19937_64& rng, bool aligned) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::exponential_distribution<double> ex(1.0);
  const double a = ex(rng), b = ex(rng), c = ex(rng), total = a + b + 2 * c;
  XStateRDM r;
  r.u = a / total;
  r.v = b / total;
  r.w = c / total;
  const double px = 2 * pi * u01(rng);
  const double pz = aligned ? px : 2 * pi * u01(rng);
  r.x = std::polar(std::sqrt(r.u * r.v) * u01(rng), px);
  r.z = std::polar(r.w * u01(rng), pz);
  r.separation = 2;
  return r;
}

}  // namespace

TEST_CASE("concurrence") {
  CHECK(concurrence(bell()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(concurrence({0.3, 0.2, 0.25, 0.0, 0.0, 2}) == 0.0);
  for (double jy : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.5}) CHECK(report({1, jy, 0, 100}).c13 == 0.0);

  XStateRDM bad = bell();
  bad.x = NAN;
  CHECK_THROWS_AS(concurrence(bad), ParameterError);
}

TEST_CASE("closed-form concurrence equals the Wootters construction") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const auto r = random_x_state(rng, false);
    CHECK(std::abs(concurrence(r) - concurrence_wootters(r.matrix())) < 1e-10);
    const auto s = x_state_spectrum(r);
    double sum = 0.0;
    for (double e : s.jointEigs) {
      CHECK(e >= -1e-10);
      sum += e;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 0; k < 3; ++k) CHECK(s.concLambdas[k] >= s.concLambdas[k + 1]);
  }
}

TEST_CASE("entropy") {
  CHECK(entropy(std::vector<double>{1.0, 0.0}) == 0.0);
  CHECK(entropy(std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0));
  CHECK(entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0));
  CHECK(entropy(std::vector<double>{1.0 + 1e-12, -1e-12}) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(von_neumann_entropy(Eigen::Matrix4cd::Identity() / 4.0) == doctest::Approx(2.0));
}

TEST_CASE("mutual information") {
  const auto half = SingleSiteRDM::from_occupation(0.5);
  CHECK(mutual_information(bell(), half, half) == doctest::Approx(2.0).epsilon(1e-14));
  const auto up = SingleSiteRDM::from_occupation(1.0);
  CHECK(mutual_information({1, 0, 0, 0.0, 0.0, 2}, up, up) == 0.0);
  CHECK_THROWS_AS(mutual_information(bell(), up, up), ConsistencyError);

  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    const auto r = random_x_state(rng, false);
    const auto m = SingleSiteRDM::from_occupation(r.u + r.w);
    CHECK(std::abs(mutual_information(r, m, m) - mutual_information(r.matrix())) < 1e-10);
  }
}

TEST_CASE("conditional entropy") {
  const XStateRDM product{1, 0, 0, 0.0, 0.0, 2};
  for (double t : {0.0, 0.4, pi / 2, 2.9})
    for (double f : {0.0, 1.0, 4.0}) CHECK(conditional_entropy(product, {t, f}) == 0.0);
  // Maximally mixed pair: every measurement leaves one bit of uncertainty.
  const XStateRDM mixed{0.25, 0.25, 0.25, 0.0, 0.0, 2};
  CHECK(conditional_entropy(mixed, {0.7, 0.3}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(conditional_entropy(bell(), {pi / 2, 0.0}) == doctest::Approx(0.0).epsilon(1e-14));

  // H(zeta) is the conditional entropy at (pi/2, 0) when x and z carry equal phases,
  // and at the azimuth (arg z - arg x) / 2 in general.
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_x_state(rng, true);
    CHECK(std::abs(binary_entropy(zeta(a)) - conditional_entropy(a, {pi / 2, 0.0})) < 1e-10);
    const auto g = random_x_state(rng, false);
    const double phi = 0.5 * (std::arg(g.z) - std::arg(g.x));
    CHECK(std::abs(binary_entropy(zeta(g)) - conditional_entropy(g, {pi / 2, phi})) < 1e-10);
    CHECK(std::abs(conditional_entropy_best_phi(g, pi / 2) - binary_entropy(zeta(g))) < 1e-10);
  }
}

TEST_CASE("zeta") {
  XStateRDM r{0.5, 0.5, 0.0, 0.5, 0.0, 2};
  CHECK(zeta(r) == 1.0);
  r.x = 0.5 + 2e-10;  // rounding-level overshoot is clamped
  CHECK(zeta(r) == 1.0);
  r.x = 0.6;
  CHECK_THROWS_AS(zeta(r), ConsistencyError);
}

TEST_CASE("discord modes") {
  const auto up = SingleSiteRDM::from_occupation(1.0);
  const XStateRDM product{1, 0, 0, 0.0, 0.0, 2};
  for (auto mode : {DiscordMode::FixedBasis, DiscordMode::Optimized, DiscordMode::GridMinimize})
    CHECK(std::abs(discord(product, up, mode)) < 1e-12);
  const auto half = SingleSiteRDM::from_occupation(0.5);
  CHECK(discord(bell(), half) == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const auto r = random_x_state(rng, false);
    const auto m = SingleSiteRDM::from_occupation(r.u + r.w);
    const double fixed = discord(r, m, DiscordMode::FixedBasis);
    const double opt = discord(r, m, DiscordMode::Optimized);
    const double grid = discord(r, m, DiscordMode::GridMinimize);
    CHECK(opt <= fixed + 1e-12);
    CHECK(grid <= fixed + 1e-9);
    CHECK(std::abs(opt - grid) < 1e-8);
    CHECK(opt >= -1e-9);
    CHECK(std::abs(grid - discord(r.matrix())) < 1e-12);
    CHECK(opt <= mutual_information(r, m, m) + 1e-9);
  }
}

TEST_CASE("optimised basis reproduces the minimum") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto r = random_x_state(rng, false);
    const auto best = minimize_conditional_entropy(r);
    CHECK(std::abs(conditional_entropy(r, best.basis) - best.value) < 1e-10);
  }
}

TEST_CASE("discord of the cluster model") {
  for (double jy : {-2.0, -1.0, -0.2, 0.4, 1.0, 2.5}) CHECK(std::abs(report({1, jy, 0, 100}).d13) < 1e-9);
  for (double h : {2.2, 2.8, -3.0}) CHECK(std::abs(report({1, 1, h, 100}).d13) < 1e-12);
}

TEST_CASE("global entanglement") {
  CHECK(global_entanglement(0.5) == 1.0);
  CHECK(global_entanglement(0.0) == 0.0);
  CHECK(global_entanglement(1.0) == 0.0);
  CHECK_THROWS_AS(global_entanglement(1.2), ParameterError);
}

TEST_CASE("report") {
  auto r = report({1, 1, 3, 100});
  CHECK(r.mz == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(r.c12) < 1e-14);
  CHECK(std::abs(r.c13) < 1e-15);
  CHECK(std::abs(r.i12) < 1e-12);
  CHECK(std::abs(r.i13) < 1e-12);
  CHECK(std::abs(r.d13) < 1e-12);
  CHECK(std::abs(r.eglobal) < 1e-14);

  r = report({1, 0, 0, 100});
  CHECK(r.c12 == 0.0);
  CHECK(r.c13 == 0.0);
  CHECK(r.eglobal == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("measure bounds on cluster-model points") {
  for (int i = 0; i <= 30; ++i)
    for (int j = 0; j <= 30; ++j) {
      const ModelParams p{1, -3 + 0.2 * i, -3 + 0.2 * j, 40};
      if (p.jx == 0 && p.jy == 0 && p.h == 0) continue;
      const auto r = report(p);
      for (double c : {r.c12, r.c13}) {
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
      }
      CHECK(r.i13 >= -1e-9);
      CHECK(r.d13 >= -1e-9);
      CHECK(r.i13 >= std::max(0.0, r.d13) - 1e-9);
      CHECK(r.eglobal >= 0.0);
      CHECK(r.eglobal <= 1.0);
    }
}
