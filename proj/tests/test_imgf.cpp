#include <cmath>
#include <random>

#include "doctest.h"
#include "incmgf/errors.hpp"
#include "incmgf/imgf.hpp"
#include "incmgf/oracles.hpp"
#include "incmgf/quadrature.hpp"

using namespace incmgf;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

FadingModel random_model(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double kappa = std::exp(std::log(0.05) + u(gen) * std::log(400.0));
  const double mu = 0.3 + 6.0 * u(gen);
  const double m = 0.3 + 15.0 * u(gen);
  const double g = std::pow(10.0, -1.0 + 3.0 * u(gen));
  switch (static_cast<int>(4.0 * u(gen))) {
    case 0:
      return FadingModel::kappa_mu_shadowed(kappa, mu, m, g);
    case 1:
      return FadingModel::kappa_mu(std::min(kappa, 10.0), mu, g);
    case 2:
      return FadingModel::eta_mu(0.01 + 0.98 * u(gen), mu / 2.0, g);
    default:
      return FadingModel::rician_shadowed(kappa, m, g);
  }
}

}  // namespace

TEST_CASE("lower IMGF against quadrature of the density") {
  const FadingModel models[] = {
      FadingModel::kappa_mu_shadowed(1.5, 2.0, 0.5, 1.0), FadingModel::kappa_mu_shadowed(10.0, 6.0, 12.0, 10.0),
      FadingModel::kappa_mu_shadowed(0.5, 0.5, 2.0, 1.0), FadingModel::rician_shadowed(10.0, 0.5, 10.0),
      FadingModel::kappa_mu(10.0, 6.0, 1.0),               FadingModel::kappa_mu(0.5, 0.5, 10.0),
      FadingModel::eta_mu(0.04, 0.5, 1.0),                 FadingModel::eta_mu(0.9, 6.0, 10.0)};
  for (const auto& m : models) {
    for (double s : {-5.0, -0.1, 0.0}) {
      for (double zr : {0.1, 1.0, 20.0}) {
        const double z = zr * m.mean_snr;
        CAPTURE(kind_name(m.kind));
        CAPTURE(m.kappa);
        CAPTURE(m.mu);
        CAPTURE(s);
        CAPTURE(z);
        CHECK(rel(imgf_lower(m, s, z), quad_imgf(m, s, z, Tail::Lower)) < 1e-9);
      }
    }
  }
}

TEST_CASE("upper IMGF keeps relative accuracy deep in the tail") {
  const FadingModel models[] = {FadingModel::kappa_mu_shadowed(1.5, 2.0, 3.0, 1.0), FadingModel::kappa_mu(4.0, 2.0, 1.0),
                                FadingModel::nakagami(3.0, 1.0), FadingModel::eta_mu(0.2, 1.0, 1.0)};
  for (const auto& m : models) {
    for (double z : {5.0, 15.0, 30.0}) {
      CAPTURE(kind_name(m.kind));
      CAPTURE(z);
      const double want = quad_imgf(m, -0.5, z, Tail::Upper);
      CHECK(want < 1e-3);
      CHECK(rel(imgf_upper(m, -0.5, z), want) < 1e-8);
    }
  }
}

TEST_CASE("complementarity and CDF identity on random models") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const auto m = random_model(gen);
    const double z = m.mean_snr * std::pow(10.0, -1.5 + 3.0 * u(gen));
    const double s = -5.0 * u(gen) / m.mean_snr;
    CAPTURE(kind_name(m.kind));
    CAPTURE(m.kappa);
    CAPTURE(m.mu);
    CAPTURE(m.m);
    CAPTURE(m.eta);
    CAPTURE(m.mean_snr);
    CAPTURE(s);
    CAPTURE(z);
    const double full = mgf(m, s);
    const double lo = imgf_lower(m, s, z);
    const double hi = imgf_upper(m, s, z);
    CHECK(lo >= 0.0);
    CHECK(hi >= 0.0);
    CHECK(std::abs(lo + hi - full) <= 1e-10 * full);
    CHECK(std::abs(imgf_lower(m, 0.0, z) - cdf(m, z)) <= 1e-10);
  }
}

TEST_CASE("lower IMGF is increasing in zeta and bounded by the MGF") {
  const auto m = FadingModel::kappa_mu_shadowed(3.0, 1.5, 0.7, 2.0);
  double prev = 0.0;
  for (double z = 0.05; z < 40.0; z *= 1.5) {
    const double v = imgf_lower(m, -0.3, z);
    CHECK(v > prev);
    prev = v;
  }
  CHECK(prev <= mgf(m, -0.3) * (1.0 + 1e-14));
  CHECK(imgf_lower(m, -0.3, 0.0) == 0.0);
  CHECK(rel(imgf_lower(m, -0.3, std::numeric_limits<double>::infinity()), mgf(m, -0.3)) < 1e-15);
}

TEST_CASE("reduction chains") {
  const double s = -0.6, z = 1.3;
  SUBCASE("Rician shadowed is kappa-mu shadowed with mu = 1") {
    for (double K : {0.5, 3.0, 10.0}) {
      for (double m : {0.5, 2.0, 12.0}) {
        CHECK(rel(imgf_lower(FadingModel::rician_shadowed(K, m, 2.0), s, z),
                  imgf_lower(FadingModel::kappa_mu_shadowed(K, 1.0, m, 2.0), s, z)) < 1e-12);
      }
    }
  }
  SUBCASE("eta-mu mapping agrees with the direct eta-mu expression") {
    for (double eta : {0.04, 0.5, 0.9, 3.0}) {
      for (double mu : {0.5, 1.0, 2.5}) {
        CAPTURE(eta);
        CAPTURE(mu);
        CHECK(rel(imgf_lower(FadingModel::eta_mu(eta, mu, 2.0), s, z),
                  imgf_lower_eta_mu_direct(eta, mu, 2.0, s, z)) < 1e-10);
      }
    }
  }
  SUBCASE("kappa-mu is the large-m limit of kappa-mu shadowed") {
    for (double kappa : {0.5, 1.5}) {
      CHECK(rel(imgf_lower(FadingModel::kappa_mu_shadowed(kappa, 2.0, 1e4, 2.0), s, z),
                imgf_lower(FadingModel::kappa_mu(kappa, 2.0, 2.0), s, z)) < 1e-3);
    }
    // The gap closes like 1/m; at kappa = 10 it is still 1.2e-3 at m = 1e4.
    const double lim = imgf_lower(FadingModel::kappa_mu(10.0, 2.0, 2.0), s, z);
    const double g4 = rel(imgf_lower(FadingModel::kappa_mu_shadowed(10.0, 2.0, 1e4, 2.0), s, z), lim);
    const double g5 = rel(imgf_lower(FadingModel::kappa_mu_shadowed(10.0, 2.0, 1e5, 2.0), s, z), lim);
    CHECK(g5 < 1e-3);
    CHECK(g4 / g5 == doctest::Approx(10.0).epsilon(0.01));
  }
  SUBCASE("closed-form degenerate laws") {
    const double g = 2.0;
    const double r = 1.0 / g - s;
    CHECK(rel(imgf_lower(FadingModel::rayleigh(g), s, z), (1.0 - std::exp(-r * z)) / (g * r)) < 1e-8);
    const double mn = 2.5;
    CHECK(rel(imgf_lower(FadingModel::nakagami(mn, g), s, z),
              std::pow(1.0 - s * g / mn, -mn) * specfun::reg_lower_gamma(mn, (mn / g - s) * z)) < 1e-8);
    CHECK(rel(imgf_lower(FadingModel::one_sided_gaussian(g), s, z),
              std::erf(std::sqrt((0.5 / g - s) * z)) / std::sqrt(1.0 - 2.0 * g * s)) < 1e-8);
    const double q = 0.4, q2 = q * q;
    auto hoyt_pdf = [&](double x) {
      return (1.0 + q2) / (2.0 * q * g) * std::exp(-(1.0 + q2) * (1.0 + q2) * x / (4.0 * q2 * g)) *
             std::cyl_bessel_i(0.0, (1.0 - q2 * q2) * x / (4.0 * q2 * g));
    };
    const double hoyt = quad::integrate([&](double x) { return std::exp(s * x) * hoyt_pdf(x); }, 0.0, z).value;
    CHECK(rel(imgf_lower(FadingModel::hoyt(q, g), s, z), hoyt) < 1e-8);
    CHECK(rel(imgf_lower(FadingModel::rician(0.0, g), s, z), imgf_lower(FadingModel::rayleigh(g), s, z)) < 1e-8);
  }
}

TEST_CASE("positive s below and beyond the pole") {
  const auto m = FadingModel::kappa_mu_shadowed(2.0, 2.0, 1.5, 1.0);
  const double b = smallest_pole(m);
  for (double s : {0.5 * b, 1.5 * b, 4.0}) {
    CAPTURE(s);
    CHECK(rel(imgf_lower(m, s, 2.0), quad_imgf(m, s, 2.0, Tail::Lower)) < 1e-9);
  }
  CHECK_THROWS_AS(imgf_upper(m, 1.5 * b, 2.0), DomainError);
  const auto nk = FadingModel::nakagami(2.0, 1.0);
  CHECK(rel(imgf_lower(nk, 3.0, 1.5), quad_imgf(nk, 3.0, 1.5, Tail::Lower)) < 1e-10);
}

TEST_CASE("kappa-mu row rejects s at or beyond its Marcum argument limit") {
  const auto m = FadingModel::kappa_mu(1.5, 2.0, 1.0);
  const double a = 2.0 * 2.5;
  CHECK_NOTHROW(imgf_lower(m, 0.9 * a, 1.0));
  CHECK_THROWS_AS(imgf_lower(m, a, 1.0), DomainError);
  CHECK_THROWS_AS(imgf_lower(m, 1.1 * a, 1.0), DomainError);
  CHECK_THROWS_AS(imgf_lower(m, -1.0, -0.5), DomainError);
}

TEST_CASE("s-derivatives agree with moment quadrature") {
  const FadingModel models[] = {FadingModel::kappa_mu_shadowed(1.5, 2.0, 3.0, 2.0), FadingModel::kappa_mu(3.0, 1.5, 1.0),
                                FadingModel::eta_mu(0.3, 0.75, 1.0), FadingModel::rayleigh(5.0)};
  for (const auto& m : models) {
    for (int k : {1, 2, 5}) {
      for (Tail tail : {Tail::Lower, Tail::Upper}) {
        const double s = -0.4 / m.mean_snr, z = m.mean_snr;
        CAPTURE(kind_name(m.kind));
        CAPTURE(k);
        CAPTURE(static_cast<int>(tail));
        auto f = [&](double x) { return std::pow(x, k) * std::exp(s * x) * pdf(m, x); };
        const double want = tail == Tail::Lower ? quad::integrate(f, 0.0, z).value
                                                : quad::integrate_to_inf(f, z, m.mean_snr).value;
        CHECK(rel(imgf_deriv_s(m, s, z, k, tail), want) < 1e-9);
      }
    }
  }
}

TEST_CASE("first derivative matches a central difference") {
  const auto m = FadingModel::kappa_mu_shadowed(4.0, 1.0, 0.8, 1.0);
  const double s = -0.2, z = 1.5, h = 1e-5;
  const double fd = (imgf_lower(m, s + h, z) - imgf_lower(m, s - h, z)) / (2.0 * h);
  CHECK(rel(imgf_deriv_s(m, s, z, 1, Tail::Lower), fd) < 1e-7);
  CHECK(rel(imgf_deriv_s(m, s, z, 0, Tail::Lower), imgf_lower(m, s, z)) < 1e-14);
}

TEST_CASE("scaled derivatives survive values outside double range") {
  const auto m = FadingModel::nakagami(2.0, 1.0);
  const double tiny = imgf_deriv_s(m, -1.0, 400.0, 3, Tail::Upper);
  CHECK(tiny == 0.0);
  const double scaled = scaled_imgf_deriv_s(m, -1.0, 400.0, 3, Tail::Upper, 1200.0);
  CHECK(std::isfinite(scaled));
  CHECK(scaled > 0.0);
  const double ref = scaled_imgf_deriv_s(m, -1.0, 40.0, 3, Tail::Upper, 0.0);
  CHECK(rel(scaled_imgf_deriv_s(m, -1.0, 40.0, 3, Tail::Upper, 50.0), ref * std::exp(50.0)) < 1e-12);
  CHECK_THROWS_AS(imgf_deriv_s(m, -1.0, 1.0, kMaxDerivOrder + 1, Tail::Lower), DomainError);
  CHECK_THROWS_AS(imgf_deriv_s(m, 3.0, 1.0, 1, Tail::Lower), DomainError);
}

TEST_CASE("query dispatch and the generic Laplace route") {
  const auto m = FadingModel::kappa_mu_shadowed(1.5, 2.0, 0.5, 1.0);
  ImgfQuery q;
  q.s = -1.0;
  q.zeta = 0.7;
  CHECK(imgf(m, q) == imgf_lower(m, -1.0, 0.7));
  q.tail = Tail::Upper;
  CHECK(imgf(m, q) == imgf_upper(m, -1.0, 0.7));
  q.deriv_order = 2;
  CHECK(imgf(m, q) == imgf_deriv_s(m, -1.0, 0.7, 2, Tail::Upper));
  for (double z : {0.1, 1.0, 5.0}) CHECK(rel(imgf_generic(mgf_image(m), -1.0, z), imgf_lower(m, -1.0, z)) < 1e-6);
}
