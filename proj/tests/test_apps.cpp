#include <cmath>
#include <random>

#include "doctest.h"
#include "incmgf/apps.hpp"
#include "incmgf/errors.hpp"
#include "incmgf/imgf.hpp"
#include "incmgf/oracles.hpp"

using namespace incmgf;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

double rayleigh_opsc(double rate, double gb, double ge) {
  const double alpha = std::exp2(rate) - 1.0;
  return 1.0 - std::exp(-alpha / gb) * gb / (gb + std::exp2(rate) * ge);
}

}  // namespace

TEST_CASE("OPSC Rayleigh closed form") {
  SecrecyScenario sc{FadingModel::rayleigh(10.0), FadingModel::rayleigh(1.0), 0.1, 1};
  // The closed form evaluates to 0.10326168.
  CHECK(std::abs(opsc(sc) - 0.1032617) < 1e-6);
  for (double r : {0.0, 0.5, 2.0}) {
    for (double gb : {0.5, 10.0, 300.0}) {
      sc = {FadingModel::rayleigh(gb), FadingModel::rayleigh(2.0), r, 1};
      CAPTURE(r);
      CAPTURE(gb);
      CHECK(std::abs(opsc(sc) - rayleigh_opsc(r, gb, 2.0)) < 1e-12);
    }
  }
  sc = {FadingModel::rayleigh(3.0), FadingModel::rayleigh(3.0), 0.0, 1};
  CHECK(opsc(sc) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("OPSC against Monte Carlo for a shadowed legitimate link") {
  SecrecyScenario sc{FadingModel::kappa_mu_shadowed(1.5, 2.0, 2.0, 100.0), FadingModel::rayleigh(db_to_linear(15.0)),
                     0.1, 1};
  McConfig mc;
  mc.n_samples = 2'000'000;
  mc.seed = 99;
  const auto est = mc_opsc(sc, mc);
  CHECK(std::abs(opsc(sc) - est.estimate) < 3.0 * est.std_error);
}

TEST_CASE("OPSC with a shadowed multi-antenna eavesdropper against Monte Carlo") {
  const FadingModel bobs[] = {FadingModel::eta_mu(0.3, 1.25, 20.0), FadingModel::kappa_mu(3.0, 0.7, 20.0)};
  for (const auto& bob : bobs) {
    for (int n : {1, 2}) {
      SecrecyScenario sc{bob, FadingModel::kappa_mu_shadowed(2.0, 2.0, 1.0, 1.5), 0.4, n};
      McConfig mc;
      mc.n_samples = 1'000'000;
      mc.seed = 5;
      const auto est = mc_opsc(sc, mc);
      CAPTURE(kind_name(bob.kind));
      CAPTURE(n);
      CHECK(std::abs(opsc(sc) - est.estimate) < 3.5 * est.std_error);
    }
  }
}

TEST_CASE("OPSC monotonicity ladders") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const auto bob = FadingModel::kappa_mu_shadowed(0.2 + 8.0 * u(gen), 0.5 + 4.0 * u(gen), 0.5 + 6.0 * u(gen), 5.0);
    const auto eve = FadingModel::kappa_mu_shadowed(0.2 + 4.0 * u(gen), 1.0 + std::floor(3.0 * u(gen)),
                                                    1.0 + std::floor(3.0 * u(gen)), 1.0);
    CAPTURE(trial);
    double prev = -1.0;
    for (double r : {0.0, 0.2, 0.5, 1.0, 2.0}) {
      const double v = opsc({bob, eve, r, 1});
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
    prev = 2.0;
    for (double gb : {0.5, 2.0, 8.0, 32.0}) {
      auto b = bob;
      b.mean_snr = gb;
      const double v = opsc({b, eve, 0.3, 1});
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
    prev = -1.0;
    for (double ge : {0.1, 1.0, 10.0}) {
      auto e = eve;
      e.mean_snr = ge;
      const double v = opsc({bob, e, 0.3, 1});
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("vanishing eavesdropper leaves the legitimate CDF") {
  const auto bob = FadingModel::kappa_mu_shadowed(1.5, 2.0, 0.5, 3.0);
  const double r = 0.8;
  SecrecyScenario sc{bob, FadingModel::rayleigh(1e-9), r, 1};
  CHECK(std::abs(opsc(sc) - cdf(bob, secrecy_alpha(r))) < 1e-6);
  sc.rate_rs = 0.0;
  CHECK(spsc(sc) < 1e-6);
}

TEST_CASE("SPSC is OPSC at zero rate") {
  SecrecyScenario sc{FadingModel::kappa_mu(2.0, 1.5, 4.0), FadingModel::kappa_mu_shadowed(1.0, 2.0, 3.0, 2.0), 0.7, 2};
  SecrecyScenario zero = sc;
  zero.rate_rs = 0.0;
  CHECK(spsc(sc) == opsc(zero));
}

TEST_CASE("eps-outage capacity") {
  SecrecyScenario sc{FadingModel::kappa_mu(1.5, 2.0, 10.0), FadingModel::rayleigh(0.1), 0.0, 1};
  const double c5 = eps_outage_capacity(sc, 0.5);
  SecrecyScenario at = sc;
  at.rate_rs = c5;
  CHECK(std::abs(opsc(at) - 0.5) < 1e-6);
  double prev = 0.0;
  for (double e : {0.05, 0.2, 0.5, 0.8, 0.95}) {
    const double c = eps_outage_capacity(sc, e);
    CHECK(c >= prev);
    prev = c;
  }
  SecrecyScenario weak{FadingModel::rayleigh(0.1), FadingModel::rayleigh(10.0), 0.0, 1};
  CHECK(eps_outage_capacity(weak, 0.5) == 0.0);
  CHECK_THROWS_AS(eps_outage_capacity(sc, 0.0), DomainError);
  CHECK_THROWS_AS(eps_outage_capacity(sc, 1.0), DomainError);
}

TEST_CASE("outage under interference") {
  // Pr{g_d <= g_th (1 + g_i)} for exponential g_d, g_i.
  const double gd = 10.0, gi = 1.0, th = 0.0717735;
  const double want = 1.0 - std::exp(-th / gd) / (1.0 + th * gi / gd);
  CHECK(std::abs(outage_interference(FadingModel::rayleigh(gd), FadingModel::rayleigh(gi), th) - want) < 1e-12);
  CHECK(outage_interference(FadingModel::rayleigh(gd), FadingModel::rayleigh(gi), 1e-12) < 1e-11);

  const auto d = FadingModel::kappa_mu_shadowed(1.5, 2.0, 2.0, 10.0);
  const auto i = FadingModel::kappa_mu_shadowed(1.0, 2.0, 1.0, 2.0);
  for (double r : {0.1, 0.7, 2.0}) {
    const double g = secrecy_alpha(r);
    SecrecyScenario sc = interference_as_secrecy(d, i, g);
    sc.rate_rs = r;
    CHECK(outage_interference(d, i, g) == opsc(sc));
  }
  SecrecyScenario mc_sc{d, i, 0.0, 1};
  McConfig mc;
  mc.n_samples = 1'000'000;
  // Monte Carlo of the ratio event through the secrecy oracle.
  const double g = 1.3;
  mc_sc = interference_as_secrecy(d, i, g);
  const auto est = mc_opsc(mc_sc, mc);
  CHECK(std::abs(outage_interference(d, i, g) - est.estimate) < 3.5 * est.std_error);
  CHECK_THROWS_AS(outage_interference(d, i, 0.0), DomainError);
}

TEST_CASE("cutoff SNR solves the power constraint") {
  double prev = 0.0;
  for (double g : {1.0, 10.0, 100.0}) {
    const auto ch = FadingModel::rayleigh(g);
    const double g0 = solve_cutoff(ch);
    CAPTURE(g);
    CHECK(std::abs(cutoff_residual(ch, g0)) <= 1e-9);
    CHECK(g0 >= prev);
    prev = g0;
  }
  const auto point = FadingModel::nakagami(500.0, 10.0);
  CHECK(solve_cutoff(point) == doctest::Approx(1.0 / 1.1).epsilon(1e-3));
}

TEST_CASE("capacity with side information: two routes agree") {
  const FadingModel chans[] = {FadingModel::rayleigh(1.0), FadingModel::nakagami(2.0, 10.0),
                               FadingModel::kappa_mu(2.0, 2.0, 100.0), FadingModel::kappa_mu_shadowed(3.0, 1.5, 0.7, 5.0),
                               FadingModel::eta_mu(0.2, 0.75, 3.0)};
  for (const auto& ch : chans) {
    CAPTURE(kind_name(ch.kind));
    CapacityScenario sc{ch, solve_cutoff(ch)};
    const double a = capacity_side_info(sc);
    CHECK(a > 0.0);
    CHECK(rel(a, capacity_side_info_direct(sc)) < 1e-6);
  }
  const auto point = FadingModel::nakagami(500.0, 10.0);
  CapacityScenario sc{point, std::nullopt};
  const double g0 = solve_cutoff(point);
  CHECK(std::abs(capacity_side_info(sc) - capacity_side_info_direct(sc)) < 1e-4);
  CHECK(capacity_side_info(sc) == doctest::Approx(std::log2(10.0 / g0)).epsilon(1e-2));
  CapacityScenario low{FadingModel::rayleigh(1e-3), std::nullopt};
  CHECK(rel(capacity_side_info(low), capacity_side_info_direct(low)) < 1e-6);
  CHECK(capacity_side_info(low) < capacity_side_info({FadingModel::rayleigh(1e-2), std::nullopt}));
}

TEST_CASE("adaptive modulation average BER") {
  AdaptiveModScheme one{{0.0}, {4}};
  for (double g : {1.0, 10.0, 100.0}) {
    CHECK(rel(aber_adaptive(FadingModel::rayleigh(g), one), 0.2 / (1.0 + 1.5 * g / 15.0)) < 1e-10);
  }
  CHECK(mqam_threshold(2, 1e-3) == doctest::Approx(3.0 / 1.5 * std::log(200.0)).epsilon(1e-15));
  const auto scheme = scheme_for_target({2, 4, 6, 8}, 1e-3);
  REQUIRE(scheme.thresholds.size() == 4);
  const FadingModel chans[] = {FadingModel::kappa_mu(2.0, 2.0, db_to_linear(15.0)), FadingModel::nakagami(1.5, 30.0)};
  for (const auto& ch : chans) {
    CAPTURE(kind_name(ch.kind));
    McConfig mc;
    mc.n_samples = 2'000'000;
    const auto est = mc_aber(ch, scheme, mc);
    const double v = aber_adaptive(ch, scheme);
    CHECK(v > 0.0);
    CHECK(v <= 0.2);
    CHECK(rel(v, est.estimate) < 0.02);
  }
  // A region above all the probability mass changes nothing.
  AdaptiveModScheme far{{0.0, 1e6}, {4, 8}};
  CHECK(rel(aber_adaptive(FadingModel::rayleigh(1.0), far), aber_adaptive(FadingModel::rayleigh(1.0), one)) < 1e-12);
  CHECK_THROWS_AS(aber_adaptive(FadingModel::rayleigh(1.0), AdaptiveModScheme{{1.0, 0.5}, {2, 4}}), DomainError);
  CHECK_THROWS_AS(aber_adaptive(FadingModel::rayleigh(1.0), AdaptiveModScheme{{}, {}}), DomainError);
}

TEST_CASE("scenario validation") {
  SecrecyScenario sc{FadingModel::rayleigh(1.0), FadingModel::rayleigh(1.0), -0.1, 1};
  CHECK_THROWS_AS(opsc(sc), DomainError);
  sc.rate_rs = 0.1;
  sc.n_eve_antennas = 0;
  CHECK_THROWS_AS(opsc(sc), DomainError);
  sc.n_eve_antennas = 1;
  sc.eve = FadingModel::kappa_mu_shadowed(1.0, 1.5, 2.0, 1.0);
  CHECK_THROWS_AS(opsc(sc), DomainError);
  const auto mrc = eve_after_mrc(FadingModel::kappa_mu_shadowed(1.0, 2.0, 3.0, 1.5), 3);
  CHECK(mrc.mu == 6.0);
  CHECK(mrc.m == 9.0);
  CHECK(mrc.mean_snr == doctest::Approx(4.5));
}
