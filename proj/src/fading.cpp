#include "incmgf/fading.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "incmgf/errors.hpp"
#include "incmgf/imgf.hpp"
#include "incmgf/rng.hpp"
#include "incmgf/specfun.hpp"

namespace incmgf {
namespace {

using cd = std::complex<double>;
using specfun::log_gamma;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

double log_gamma_pdf(double shape, double scale, double x) {
  if (x == 0.0) {
    if (shape < 1.0) return std::numeric_limits<double>::infinity();
    if (shape > 1.0) return -std::numeric_limits<double>::infinity();
    return -std::log(scale);
  }
  return (shape - 1.0) * std::log(x) - x / scale - shape * std::log(scale) - log_gamma(shape);
}

// Canonical parameters as stored on a KappaMuShadowed model.
struct Canon {
  double kappa;
  double mu;
  double m;
  double mean;
  double a;  // mu (1 + kappa) / mean
  double rho;
};

Canon canon_of(const FadingModel& model) {
  const FadingModel c = canonicalize(model);
  Canon k{c.kappa, c.mu, c.m, c.mean_snr, c.mu * (1.0 + c.kappa) / c.mean_snr, 1.0};
  if (c.kappa > 0.0 && std::isfinite(c.m)) k.rho = c.m / (c.mu * c.kappa + c.m);
  return k;
}

double log_pdf_kms(const Canon& c, double x) {
  // exp(-a x) 1F1(m; mu; (a - b) x) times the power law, with the Kummer function kept scaled.
  const double b = c.a * c.rho;
  const double log_pref = c.mu * std::log(c.mu) + c.m * std::log(c.m) + c.mu * std::log1p(c.kappa) -
                          log_gamma(c.mu) - std::log(c.mean) - c.m * std::log(c.mu * c.kappa + c.m);
  if (x == 0.0) {
    if (c.mu < 1.0) return std::numeric_limits<double>::infinity();
    if (c.mu > 1.0) return -std::numeric_limits<double>::infinity();
    return log_pref;
  }
  const double big_x = (c.a - b) * x;
  return log_pref + (c.mu - 1.0) * std::log(x / c.mean) - b * x +
         specfun::log_kummer_1f1_scaled(c.m, c.mu, big_x);
}

double log_pdf_kappa_mu(const Canon& c, double x) {
  const double kappa = c.kappa;
  const double mu = c.mu;
  if (x == 0.0) return log_gamma_pdf(mu, 1.0 / c.a, 0.0) - mu * kappa;
  const double log_pref = std::log(mu) + 0.5 * (mu + 1.0) * std::log1p(kappa) -
                          0.5 * (mu - 1.0) * std::log(kappa) - mu * kappa - std::log(c.mean);
  const double arg = 2.0 * mu * std::sqrt(kappa * (1.0 + kappa) * x / c.mean);
  return log_pref + 0.5 * (mu - 1.0) * std::log(x / c.mean) - c.a * x + specfun::log_bessel_i(mu - 1.0, arg);
}

double log_pdf_eta_mu(double eta, double mu, double mean, double x) {
  const double h = (2.0 + 1.0 / eta + eta) / 4.0;
  const double big_h = std::abs(1.0 / eta - eta) / 4.0;
  if (big_h == 0.0 || x == 0.0) {
    if (big_h == 0.0) return log_gamma_pdf(2.0 * mu, mean / (2.0 * mu), x);
    return log_gamma_pdf(2.0 * mu, mean / (2.0 * mu), 0.0) + mu * std::log(h);
  }
  const double log_pref = std::log(2.0) + 0.5 * std::log(std::numbers::pi) + (mu + 0.5) * std::log(mu) +
                          mu * std::log(h) - log_gamma(mu) - (mu - 0.5) * std::log(big_h);
  return log_pref + (mu - 0.5) * std::log(x) - (mu + 0.5) * std::log(mean) - 2.0 * mu * h * x / mean +
         specfun::log_bessel_i(mu - 0.5, 2.0 * mu * big_h * x / mean);
}

double gamma_draw(double shape, double scale, Philox& rng) {
  std::gamma_distribution<double> dist(shape, scale);
  return dist(rng);
}

double poisson_draw(double mean, Philox& rng) {
  if (mean <= 0.0) return 0.0;
  std::poisson_distribution<std::int64_t> dist(mean);
  return static_cast<double>(dist(rng));
}

}  // namespace

FadingModel FadingModel::kappa_mu_shadowed(double kappa, double mu, double m, double mean_snr) {
  FadingModel f;
  f.kind = FadingKind::KappaMuShadowed;
  f.kappa = kappa;
  f.mu = mu;
  f.m = m;
  f.mean_snr = mean_snr;
  return f;
}

FadingModel FadingModel::rician_shadowed(double K, double m, double mean_snr) {
  FadingModel f;
  f.kind = FadingKind::RicianShadowed;
  f.K = K;
  f.m = m;
  f.mean_snr = mean_snr;
  return f;
}

FadingModel FadingModel::kappa_mu(double kappa, double mu, double mean_snr) {
  FadingModel f;
  f.kind = FadingKind::KappaMu;
  f.kappa = kappa;
  f.mu = mu;
  f.mean_snr = mean_snr;
  return f;
}

FadingModel FadingModel::eta_mu(double eta, double mu, double mean_snr) {
  FadingModel f;
  f.kind = FadingKind::EtaMu;
  f.eta = eta;
  f.mu = mu;
  f.mean_snr = mean_snr;
  return f;
}

FadingModel FadingModel::rician(double K, double mean_snr) {
  FadingModel f;
  f.kind = FadingKind::Rician;
  f.K = K;
  f.mean_snr = mean_snr;
  return f;
}

FadingModel FadingModel::nakagami(double m, double mean_snr) {
  FadingModel f;
  f.kind = FadingKind::NakagamiM;
  f.m = m;
  f.mean_snr = mean_snr;
  return f;
}

FadingModel FadingModel::hoyt(double q, double mean_snr) {
  FadingModel f;
  f.kind = FadingKind::Hoyt;
  f.q = q;
  f.mean_snr = mean_snr;
  return f;
}

FadingModel FadingModel::rayleigh(double mean_snr) {
  FadingModel f;
  f.mean_snr = mean_snr;
  return f;
}

FadingModel FadingModel::one_sided_gaussian(double mean_snr) {
  FadingModel f;
  f.kind = FadingKind::OneSidedGaussian;
  f.mean_snr = mean_snr;
  return f;
}

void FadingModel::validate() const {
  require(finite_positive(mean_snr), "mean SNR must be positive and finite");
  switch (kind) {
    case FadingKind::KappaMuShadowed:
      require(kappa >= 0.0 && std::isfinite(kappa), "kappa must be >= 0");
      require(finite_positive(mu), "mu must be > 0");
      require(m > 0.0, "m must be > 0");
      break;
    case FadingKind::RicianShadowed:
      require(K >= 0.0 && std::isfinite(K), "K must be >= 0");
      require(m > 0.0, "m must be > 0");
      break;
    case FadingKind::KappaMu:
      require(kappa >= 0.0 && std::isfinite(kappa), "kappa must be >= 0");
      require(finite_positive(mu), "mu must be > 0");
      break;
    case FadingKind::EtaMu:
      require(finite_positive(eta), "eta must be > 0");
      require(finite_positive(mu), "mu must be > 0");
      break;
    case FadingKind::Rician:
      require(K >= 0.0 && std::isfinite(K), "K must be >= 0");
      break;
    case FadingKind::NakagamiM:
      require(finite_positive(m), "Nakagami m must be > 0");
      break;
    case FadingKind::Hoyt:
      require(finite_positive(q), "Hoyt q must be > 0");
      break;
    case FadingKind::Rayleigh:
    case FadingKind::OneSidedGaussian:
      break;
  }
}

FadingModel canonicalize(const FadingModel& model) {
  model.validate();
  const double g = model.mean_snr;
  switch (model.kind) {
    case FadingKind::KappaMuShadowed:
      return FadingModel::kappa_mu_shadowed(model.kappa, model.mu, model.m, g);
    case FadingKind::RicianShadowed:
      return FadingModel::kappa_mu_shadowed(model.K, 1.0, model.m, g);
    case FadingKind::KappaMu:
      return FadingModel::kappa_mu_shadowed(model.kappa, model.mu, kNoShadowing, g);
    case FadingKind::EtaMu: {
      // eta and 1/eta describe the same law; the mapping needs eta <= 1.
      const double eta = std::min(model.eta, 1.0 / model.eta);
      return FadingModel::kappa_mu_shadowed((1.0 - eta) / (2.0 * eta), 2.0 * model.mu, model.mu, g);
    }
    case FadingKind::Rician:
      return FadingModel::kappa_mu_shadowed(model.K, 1.0, kNoShadowing, g);
    case FadingKind::NakagamiM:
      return FadingModel::kappa_mu_shadowed(0.0, model.m, kNoShadowing, g);
    case FadingKind::Hoyt:
      return canonicalize(FadingModel::eta_mu(model.q * model.q, 0.5, g));
    case FadingKind::Rayleigh:
      return FadingModel::kappa_mu_shadowed(0.0, 1.0, kNoShadowing, g);
    case FadingKind::OneSidedGaussian:
      return FadingModel::kappa_mu_shadowed(0.0, 0.5, kNoShadowing, g);
  }
  throw DomainError("unknown fading kind");
}

MgfFactorization factorize(const FadingModel& model) {
  const Canon c = canon_of(model);
  MgfFactorization f;
  f.a = c.a;
  if (!std::isfinite(c.m)) {
    if (c.kappa > 0.0) throw DomainError("factorize: the unshadowed kappa-mu MGF has no finite-m factorization");
    f.b = c.a;
    f.exponent_a = -c.mu;
    f.exponent_b = 0.0;
    f.A = std::pow(c.a, c.mu);
    return f;
  }
  f.b = c.a * c.rho;
  f.exponent_a = c.m - c.mu;
  f.exponent_b = -c.m;
  f.A = std::exp(c.mu * std::log(c.a) + c.m * std::log(c.rho));
  return f;
}

double smallest_pole(const FadingModel& model) {
  const Canon c = canon_of(model);
  return c.a * c.rho;
}

cd mgf(const FadingModel& model, cd s) {
  const Canon c = canon_of(model);
  const double b = c.a * c.rho;
  if (s.imag() == 0.0 && !(s.real() < b)) {
    std::ostringstream os;
    os << "mgf: s=" << s.real() << " is not below the pole " << b;
    throw DomainError(os.str());
  }
  const cd u = 1.0 - s / c.a;
  if (c.kappa == 0.0) return std::pow(u, -c.mu);
  if (!std::isfinite(c.m)) return std::pow(u, -c.mu) * std::exp(c.mu * c.kappa * s / (c.a - s));
  return std::pow(u, c.m - c.mu) * std::pow(1.0 - s / b, -c.m);
}

double mgf(const FadingModel& model, double s) {
  const Canon c = canon_of(model);
  const double b = c.a * c.rho;
  if (!(s < b)) {
    std::ostringstream os;
    os << "mgf: s=" << s << " is not below the pole " << b;
    throw DomainError(os.str());
  }
  const double lu = std::log1p(-s / c.a);
  if (c.kappa == 0.0) return std::exp(-c.mu * lu);
  if (!std::isfinite(c.m)) return std::exp(-c.mu * lu + c.mu * c.kappa * s / (c.a - s));
  return std::exp((c.m - c.mu) * lu - c.m * std::log1p(-s / b));
}

MgfImage mgf_image(const FadingModel& model) {
  const FadingModel c = canonicalize(model);
  MgfImage img;
  img.pole = smallest_pole(c);
  img.evaluator = [c](cd s) { return mgf(c, s); };
  return img;
}

double log_pdf(const FadingModel& model, double x) {
  if (!(x >= 0.0)) throw DomainError("pdf requires x >= 0");
  if (x == std::numeric_limits<double>::infinity()) return -std::numeric_limits<double>::infinity();
  if (model.kind == FadingKind::EtaMu || model.kind == FadingKind::Hoyt) {
    model.validate();
    const double eta = model.kind == FadingKind::Hoyt ? model.q * model.q : model.eta;
    const double mu = model.kind == FadingKind::Hoyt ? 0.5 : model.mu;
    return log_pdf_eta_mu(eta, mu, model.mean_snr, x);
  }
  const Canon c = canon_of(model);
  if (c.kappa == 0.0) return log_gamma_pdf(c.mu, c.mean / c.mu, x);
  if (!std::isfinite(c.m)) return log_pdf_kappa_mu(c, x);
  return log_pdf_kms(c, x);
}

double pdf(const FadingModel& model, double x) { return std::exp(log_pdf(model, x)); }

double cdf(const FadingModel& model, double x) {
  if (!(x >= 0.0)) throw DomainError("cdf requires x >= 0");
  return imgf_lower(model, 0.0, x);
}

double draw(const FadingModel& model, Philox& rng) {
  const double g = model.mean_snr;
  switch (model.kind) {
    case FadingKind::Rayleigh:
      return -g * std::log(rng.uniform());
    case FadingKind::NakagamiM:
      return gamma_draw(model.m, g / model.m, rng);
    case FadingKind::OneSidedGaussian:
      return gamma_draw(0.5, 2.0 * g, rng);
    case FadingKind::EtaMu:
    case FadingKind::Hoyt: {
      const double eta = model.kind == FadingKind::Hoyt ? model.q * model.q : model.eta;
      const double mu = model.kind == FadingKind::Hoyt ? 0.5 : model.mu;
      const double x = gamma_draw(mu, g / ((1.0 + eta) * mu), rng);
      const double y = gamma_draw(mu, eta * g / ((1.0 + eta) * mu), rng);
      return x + y;
    }
    case FadingKind::KappaMu:
    case FadingKind::Rician: {
      const Canon c = canon_of(model);
      const double n = poisson_draw(c.mu * c.kappa, rng);
      return gamma_draw(c.mu + n, 1.0 / c.a, rng);
    }
    case FadingKind::KappaMuShadowed:
    case FadingKind::RicianShadowed: {
      const Canon c = canon_of(model);
      if (c.kappa == 0.0) return gamma_draw(c.mu, 1.0 / c.a, rng);
      // Unit-mean shadowing of the dominant component, then a Poisson-gamma draw.
      const double xi = std::isfinite(c.m) ? gamma_draw(c.m, 1.0 / c.m, rng) : 1.0;
      const double n = poisson_draw(c.mu * c.kappa * xi, rng);
      return gamma_draw(c.mu + n, 1.0 / c.a, rng);
    }
  }
  throw DomainError("unknown fading kind");
}

std::vector<double> sample(const FadingModel& model, std::uint64_t seed, std::size_t n) {
  model.validate();
  if (n < 1) throw DomainError("sample requires n >= 1");
  Philox rng(seed, 0);
  std::vector<double> out(n);
  for (auto& v : out) v = draw(model, rng);
  return out;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

std::string kind_name(FadingKind kind) {
  switch (kind) {
    case FadingKind::KappaMuShadowed: return "kappa_mu_shadowed";
    case FadingKind::RicianShadowed: return "rician_shadowed";
    case FadingKind::KappaMu: return "kappa_mu";
    case FadingKind::EtaMu: return "eta_mu";
    case FadingKind::Rician: return "rician";
    case FadingKind::NakagamiM: return "nakagami";
    case FadingKind::Hoyt: return "hoyt";
    case FadingKind::Rayleigh: return "rayleigh";
    case FadingKind::OneSidedGaussian: return "one_sided_gaussian";
  }
  return "unknown";
}

FadingKind parse_kind(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char ch) {
    return ch == '-' ? '_' : static_cast<char>(std::tolower(ch));
  });
  static const std::pair<const char*, FadingKind> table[] = {
      {"kappa_mu_shadowed", FadingKind::KappaMuShadowed},
      {"kms", FadingKind::KappaMuShadowed},
      {"rician_shadowed", FadingKind::RicianShadowed},
      {"kappa_mu", FadingKind::KappaMu},
      {"eta_mu", FadingKind::EtaMu},
      {"rician", FadingKind::Rician},
      {"nakagami", FadingKind::NakagamiM},
      {"nakagami_m", FadingKind::NakagamiM},
      {"hoyt", FadingKind::Hoyt},
      {"rayleigh", FadingKind::Rayleigh},
      {"one_sided_gaussian", FadingKind::OneSidedGaussian},
  };
  for (const auto& [key, kind] : table) {
    if (n == key) return kind;
  }
  throw DomainError("unknown fading kind '" + name + "'");
}

FadingModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw DomainError("fading model JSON needs a \"kind\" field");
  FadingModel f;
  f.kind = parse_kind(j.at("kind").get<std::string>());
  auto num = [&](const char* key, double& dst) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity")) {
      dst = kNoShadowing;
    } else {
      dst = v.get<double>();
    }
  };
  num("kappa", f.kappa);
  num("mu", f.mu);
  num("m", f.m);
  num("eta", f.eta);
  num("K", f.K);
  num("q", f.q);
  if (j.contains("mean_snr_db")) {
    f.mean_snr = db_to_linear(j.at("mean_snr_db").get<double>());
  } else if (j.contains("mean_snr")) {
    f.mean_snr = j.at("mean_snr").get<double>();
  } else {
    throw DomainError("fading model JSON needs \"mean_snr_db\" or \"mean_snr\"");
  }
  if (f.kind == FadingKind::NakagamiM && !j.contains("m")) throw DomainError("nakagami model needs \"m\"");
  f.validate();
  return f;
}

nlohmann::json model_to_json(const FadingModel& model) {
  nlohmann::json j;
  j["kind"] = kind_name(model.kind);
  auto put_m = [&] {
    if (std::isfinite(model.m)) {
      j["m"] = model.m;
    } else {
      j["m"] = "inf";
    }
  };
  switch (model.kind) {
    case FadingKind::KappaMuShadowed:
      j["kappa"] = model.kappa;
      j["mu"] = model.mu;
      put_m();
      break;
    case FadingKind::RicianShadowed:
      j["K"] = model.K;
      put_m();
      break;
    case FadingKind::KappaMu:
      j["kappa"] = model.kappa;
      j["mu"] = model.mu;
      break;
    case FadingKind::EtaMu:
      j["eta"] = model.eta;
      j["mu"] = model.mu;
      break;
    case FadingKind::Rician:
      j["K"] = model.K;
      break;
    case FadingKind::NakagamiM:
      put_m();
      break;
    case FadingKind::Hoyt:
      j["q"] = model.q;
      break;
    case FadingKind::Rayleigh:
    case FadingKind::OneSidedGaussian:
      break;
  }
  j["mean_snr"] = model.mean_snr;
  return j;
}

}  // namespace incmgf
