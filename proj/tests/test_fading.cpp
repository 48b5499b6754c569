#include <cmath>
#include <numbers>

#include "doctest.h"
#include "incmgf/errors.hpp"
#include "incmgf/fading.hpp"
#include "incmgf/quadrature.hpp"

using namespace incmgf;
using namespace incmgf::quad;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::vector<FadingModel> zoo() {
  return {FadingModel::kappa_mu_shadowed(1.5, 2.0, 0.5, 3.0), FadingModel::kappa_mu_shadowed(10.0, 0.5, 12.0, 1.0),
          FadingModel::kappa_mu_shadowed(0.5, 6.0, 2.0, 10.0), FadingModel::rician_shadowed(10.0, 0.5, 2.0),
          FadingModel::kappa_mu(1.5, 0.5, 1.0),                 FadingModel::kappa_mu(10.0, 6.0, 10.0),
          FadingModel::eta_mu(0.04, 0.5, 1.0),                  FadingModel::eta_mu(3.0, 2.0, 5.0),
          FadingModel::rician(4.0, 2.0),                        FadingModel::nakagami(0.7, 3.0),
          FadingModel::hoyt(0.3, 1.0),                          FadingModel::rayleigh(4.0),
          FadingModel::one_sided_gaussian(2.0)};
}

// Integral of g(x) f(x) over [0, inf), split at the mean so that the
// integrable singularity at 0 for shape < 1 is handled by the adaptive rule.
double moment(const FadingModel& m, const std::function<double(double)>& g) {
  QuadConfig cfg;
  cfg.rel_tol = 1e-11;
  auto f = [&](double x) { return g(x) * pdf(m, x); };
  // Substitution x = u^4 removes the x^(mu - 1) endpoint singularity.
  const double head = integrate(
      [&](double u) {
        const double x = u * u * u * u;
        return 4.0 * u * u * u * f(x);
      },
      0.0, std::pow(m.mean_snr, 0.25), cfg).value;
  return head + integrate_to_inf(f, m.mean_snr, m.mean_snr, cfg).value;
}

}  // namespace

TEST_CASE("pdf integrates to one and has the requested mean") {
  for (const auto& m : zoo()) {
    CAPTURE(kind_name(m.kind));
    CAPTURE(m.mean_snr);
    CHECK(std::abs(moment(m, [](double) { return 1.0; }) - 1.0) < 1e-9);
    CHECK(rel(moment(m, [](double x) { return x; }), m.mean_snr) < 1e-9);
  }
}

TEST_CASE("MGF equals the transform of the pdf") {
  for (const auto& m : zoo()) {
    for (double s : {-2.0, -0.3}) {
      CAPTURE(kind_name(m.kind));
      CAPTURE(s);
      CHECK(rel(moment(m, [s](double x) { return std::exp(s * x); }), mgf(m, s)) < 1e-9);
    }
  }
}

TEST_CASE("closed MGFs of the simplest laws") {
  CHECK(rel(mgf(FadingModel::rayleigh(3.0), -0.5), 1.0 / (1.0 + 1.5)) < 1e-15);
  CHECK(rel(mgf(FadingModel::nakagami(2.5, 3.0), -0.5), std::pow(1.0 + 0.5 * 3.0 / 2.5, -2.5)) < 1e-14);
  const double eta = 0.3, mu = 1.5, g = 2.0, s = -0.7;
  const double want = std::pow(mu * mu * (2.0 + 1.0 / eta + eta) /
                                   (((1.0 + eta) * mu - g * s) * ((1.0 + 1.0 / eta) * mu - g * s)),
                               mu);
  CHECK(rel(mgf(FadingModel::eta_mu(eta, mu, g), s), want) < 1e-14);
  const double k = 2.0, mk = 1.5;
  const double want_km = std::pow(1.0 - s * g / (mk * (1.0 + k)), -mk) *
                         std::exp(mk * k * s * g / (mk * (1.0 + k) - s * g));
  CHECK(rel(mgf(FadingModel::kappa_mu(k, mk, g), s), want_km) < 1e-14);
}

TEST_CASE("complex MGF agrees with the real one on the real axis") {
  for (const auto& m : zoo()) {
    CAPTURE(kind_name(m.kind));
    const double s = -0.4;
    CHECK(rel(mgf(m, std::complex<double>(s, 0.0)).real(), mgf(m, s)) < 1e-13);
  }
}

TEST_CASE("special-case densities against textbook forms") {
  const double g = 1.7;
  for (double x : {0.05, 0.8, 3.0, 9.0}) {
    CAPTURE(x);
    const double q = 0.4, q2 = q * q;
    const double hoyt = (1.0 + q2) / (2.0 * q * g) * std::exp(-(1.0 + q2) * (1.0 + q2) * x / (4.0 * q2 * g)) *
                        std::cyl_bessel_i(0.0, (1.0 - q2 * q2) * x / (4.0 * q2 * g));
    CHECK(rel(pdf(FadingModel::hoyt(q, g), x), hoyt) < 1e-12);
    const double K = 3.0;
    const double rice = (1.0 + K) / g * std::exp(-K - (1.0 + K) * x / g) *
                        std::cyl_bessel_i(0.0, 2.0 * std::sqrt(K * (1.0 + K) * x / g));
    CHECK(rel(pdf(FadingModel::rician(K, g), x), rice) < 1e-12);
    const double osg = 1.0 / std::sqrt(2.0 * std::numbers::pi * g * x) * std::exp(-x / (2.0 * g));
    CHECK(rel(pdf(FadingModel::one_sided_gaussian(g), x), osg) < 1e-12);
  }
}

TEST_CASE("canonicalization is idempotent and preserves the MGF") {
  for (const auto& m : zoo()) {
    CAPTURE(kind_name(m.kind));
    const auto c = canonicalize(m);
    CHECK(c.kind == FadingKind::KappaMuShadowed);
    const auto cc = canonicalize(c);
    CHECK(cc.kappa == c.kappa);
    CHECK(cc.mu == c.mu);
    CHECK(cc.m == c.m);
    CHECK(cc.mean_snr == m.mean_snr);
    for (double s : {-1.0, 0.1 / m.mean_snr}) CHECK(rel(mgf(c, s), mgf(m, s)) < 1e-13);
  }
  // eta and 1/eta are the same law.
  CHECK(rel(mgf(FadingModel::eta_mu(0.25, 1.5, 2.0), -1.0), mgf(FadingModel::eta_mu(4.0, 1.5, 2.0), -1.0)) < 1e-14);
}

TEST_CASE("MGF factorization and smallest pole") {
  const auto m = FadingModel::kappa_mu_shadowed(1.5, 2.0, 3.0, 2.0);
  const auto f = factorize(m);
  const double a = 2.0 * 2.5 / 2.0;
  CHECK(rel(f.a, a) < 1e-15);
  CHECK(rel(f.b, a * 3.0 / (2.0 * 1.5 + 3.0)) < 1e-15);
  CHECK(smallest_pole(m) == f.b);
  for (double s : {-3.0, 0.2}) {
    CHECK(rel(mgf(m, s), f.A * std::pow(f.a - s, f.exponent_a) * std::pow(f.b - s, f.exponent_b)) < 1e-13);
  }
  CHECK_THROWS_AS(mgf(m, f.b), DomainError);
}

TEST_CASE("CDF is monotone with the right limits") {
  for (const auto& m : zoo()) {
    CAPTURE(kind_name(m.kind));
    double prev = 0.0;
    for (double r : {1e-3, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
      const double v = cdf(m, r * m.mean_snr);
      CHECK(v >= prev);
      CHECK(v <= 1.0 + 1e-14);
      prev = v;
    }
    CHECK(cdf(m, 0.0) == 0.0);
    CHECK(std::abs(cdf(m, 200.0 * m.mean_snr) - 1.0) < 1e-12);
  }
}

TEST_CASE("samples reproduce the mean and are seed-deterministic") {
  for (const auto& m : zoo()) {
    CAPTURE(kind_name(m.kind));
    const auto xs = sample(m, 5, 200000);
    double s1 = 0.0, s2 = 0.0;
    int negative = 0;
    for (double x : xs) {
      negative += x < 0.0;
      s1 += x;
      s2 += x * x;
    }
    CHECK(negative == 0);
    const double n = static_cast<double>(xs.size());
    const double mean = s1 / n;
    const double se = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::abs(mean - m.mean_snr) < 4.5 * se);
    CHECK(sample(m, 5, 100) == std::vector<double>(xs.begin(), xs.begin() + 100));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(FadingModel::kappa_mu_shadowed(-1.0, 1.0, 1.0, 1.0).validate(), DomainError);
  CHECK_THROWS_AS(FadingModel::kappa_mu_shadowed(1.0, 0.0, 1.0, 1.0).validate(), DomainError);
  CHECK_THROWS_AS(FadingModel::kappa_mu_shadowed(1.0, 1.0, 0.0, 1.0).validate(), DomainError);
  CHECK_THROWS_AS(FadingModel::rayleigh(0.0).validate(), DomainError);
  CHECK_THROWS_AS(FadingModel::eta_mu(0.0, 1.0, 1.0).validate(), DomainError);
  CHECK_THROWS_AS(FadingModel::hoyt(0.0, 1.0).validate(), DomainError);
  CHECK_THROWS_AS(FadingModel::nakagami(0.0, 1.0).validate(), DomainError);
}

TEST_CASE("JSON round trip and dB helpers") {
  for (const auto& m : zoo()) {
    CAPTURE(kind_name(m.kind));
    const auto back = model_from_json(model_to_json(m));
    CHECK(back.kind == m.kind);
    CHECK(rel(mgf(back, -0.5), mgf(m, -0.5)) < 1e-14);
  }
  const auto j = nlohmann::json::parse(R"({"kind": "kappa_mu", "kappa": 2, "mu": 1.5, "mean_snr_db": 10})");
  const auto m = model_from_json(j);
  CHECK(m.kind == FadingKind::KappaMu);
  CHECK(rel(m.mean_snr, 10.0) < 1e-15);
  CHECK(rel(db_to_linear(linear_to_db(3.7)), 3.7) < 1e-15);
  CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"kind": "rayleigh"})")), DomainError);
  CHECK_THROWS(parse_kind("weibull"));
  for (auto k : {FadingKind::KappaMuShadowed, FadingKind::RicianShadowed, FadingKind::KappaMu, FadingKind::EtaMu,
                 FadingKind::Rician, FadingKind::NakagamiM, FadingKind::Hoyt, FadingKind::Rayleigh,
                 FadingKind::OneSidedGaussian}) {
    CHECK(parse_kind(kind_name(k)) == k);
  }
}
