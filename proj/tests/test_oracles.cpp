#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "incmgf/errors.hpp"
#include "incmgf/oracles.hpp"
#include "incmgf/rng.hpp"

using namespace incmgf;

namespace {

struct ThreadsEnv {
  explicit ThreadsEnv(const char* v) { setenv("INCMGF_THREADS", v, 1); }
  ~ThreadsEnv() { unsetenv("INCMGF_THREADS"); }
};

}  // namespace

TEST_CASE("Philox4x32-10 known answers") {
  using B = std::array<std::uint32_t, 4>;
  CHECK(Philox::block({0, 0, 0, 0}, {0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("Philox streams are reproducible and distinct") {
  Philox a(7, 0), b(7, 0), c(7, 1), d(8, 0);
  int same_c = 0, same_d = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a();
    CHECK(x == b());
    same_c += x == c();
    same_d += x == d();
  }
  CHECK(same_c < 3);
  CHECK(same_d < 3);
  Philox u(1, 2);
  double s = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double v = u.uniform();
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);
    s += v;
  }
  CHECK(std::abs(s / 100000.0 - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / 100000.0));
}

TEST_CASE("quadrature oracle") {
  const auto ray = FadingModel::rayleigh(1.0);
  CHECK(std::abs(quad_imgf(ray, -0.5, 1.0, Tail::Lower) - 2.0 / 3.0 * (1.0 - std::exp(-1.5))) < 1e-12);
  const auto m = FadingModel::kappa_mu_shadowed(1.5, 2.0, 0.5, 3.0);
  CHECK(std::abs(quad_imgf(m, 0.0, 2.0, Tail::Lower) - cdf(m, 2.0)) < 1e-10);
  CHECK(std::abs(quad_imgf(m, -0.4, 0.0, Tail::Upper) - mgf(m, -0.4)) < 1e-10 * mgf(m, -0.4));
  CHECK(std::abs(quad_imgf(m, -0.4, 2.0, Tail::Lower) + quad_imgf(m, -0.4, 2.0, Tail::Upper) - mgf(m, -0.4)) < 1e-10);
  CHECK_THROWS_AS(quad_imgf(m, smallest_pole(m), 1.0, Tail::Upper), DomainError);
}

TEST_CASE("Monte Carlo is deterministic and independent of the thread count") {
  SecrecyScenario sc{FadingModel::kappa_mu_shadowed(1.5, 2.0, 2.0, 10.0), FadingModel::rayleigh(2.0), 0.3, 1};
  McConfig cfg;
  cfg.n_samples = 5 * kMcShardSize + 123;
  cfg.seed = 11;
  McEstimate one, four;
  {
    ThreadsEnv env("1");
    CHECK(mc_thread_count() == 1);
    one = mc_opsc(sc, cfg);
  }
  {
    ThreadsEnv env("4");
    CHECK(mc_thread_count() == 4);
    four = mc_opsc(sc, cfg);
  }
  CHECK(one.estimate == four.estimate);
  CHECK(one.std_error == four.std_error);
  CHECK(mc_opsc(sc, cfg).estimate == one.estimate);
  cfg.seed = 12;
  CHECK(mc_opsc(sc, cfg).estimate != one.estimate);
  CHECK(std::abs(one.estimate - opsc(sc)) < 4.0 * one.std_error);
}

TEST_CASE("Monte Carlo against exact values") {
  SecrecyScenario sc{FadingModel::rayleigh(10.0), FadingModel::rayleigh(1.0), 0.1, 1};
  McConfig cfg;
  cfg.n_samples = 1'000'000;
  const auto e = mc_opsc(sc, cfg);
  const double p = opsc(sc);
  CHECK(std::abs(e.estimate - p) < 3.5 * e.std_error);
  CHECK(e.std_error == doctest::Approx(std::sqrt(p * (1.0 - p) / 1e6)).epsilon(0.02));

  AdaptiveModScheme one{{0.0}, {4}};
  const auto a = mc_aber(FadingModel::rayleigh(10.0), one, cfg);
  const double want = 0.2 / (1.0 + 1.5 * 10.0 / 15.0);
  CHECK(std::abs(a.estimate - want) < 4.0 * a.std_error);
}

TEST_CASE("Monte Carlo configuration") {
  McConfig cfg;
  cfg.n_samples = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.n_samples = 10;
  cfg.confidence_sigmas = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}
