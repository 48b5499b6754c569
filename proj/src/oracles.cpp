#include "incmgf/oracles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "incmgf/errors.hpp"
#include "incmgf/quadrature.hpp"
#include "incmgf/rng.hpp"

namespace incmgf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs body(shard_index, rng, count) for every shard, in parallel, and returns
// the per-shard results in shard order.
template <class Result, class Body>
std::vector<Result> run_shards(const McConfig& cfg, Body body) {
  const std::uint64_t shards = (cfg.n_samples + kMcShardSize - 1) / kMcShardSize;
  std::vector<Result> out(shards);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t i = next++; i < shards; i = next++) {
      const std::uint64_t count = std::min(kMcShardSize, cfg.n_samples - i * kMcShardSize);
      Philox rng(cfg.seed, i);
      out[i] = body(rng, count);
    }
  };
  const int threads = static_cast<int>(std::min<std::uint64_t>(mc_thread_count(), shards));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace

void McConfig::validate() const {
  if (n_samples < 1) throw DomainError("McConfig: n_samples must be >= 1");
  if (!(confidence_sigmas > 0.0)) throw DomainError("McConfig: confidence_sigmas must be > 0");
}

int mc_thread_count() {
  if (const char* env = std::getenv("INCMGF_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double quad_imgf(const FadingModel& model, double s, double zeta, Tail tail, double rel_tol) {
  if (!(zeta >= 0.0)) throw DomainError("quad_imgf requires zeta >= 0");
  const FadingModel c = canonicalize(model);
  const double b = smallest_pole(c);
  if (tail == Tail::Upper && !(s < b)) throw DomainError("quad_imgf: upper tail diverges at or beyond the pole");
  quad::QuadConfig qc;
  qc.rel_tol = rel_tol;
  qc.max_intervals = 20000;
  auto f = [&](double x) {
    const double l = s * x + log_pdf(model, x);
    return std::exp(l);
  };
  // Near the origin the density behaves like x^(mu-1); x = w^(1/mu) removes it.
  const double mu = c.mu;
  auto finite_part = [&](double lo, double hi) {
    if (hi <= lo) return 0.0;
    if (mu >= 1.0) return quad::integrate(f, lo, hi, qc).value;
    const double p = 1.0 / mu;
    auto g = [&](double w) {
      if (w <= 0.0) return 0.0;
      const double x = std::pow(w, p);
      return std::exp(s * x + log_pdf(model, x) + (p - 1.0) * std::log(w)) * p;
    };
    return quad::integrate(g, std::pow(lo, mu), std::pow(hi, mu), qc).value;
  };
  if (tail == Tail::Lower) {
    if (zeta == kInf) throw DomainError("quad_imgf: use the upper tail from 0 for the complete MGF");
    return finite_part(0.0, zeta);
  }
  // Upper tail: a finite stretch up to the bulk of the tilted density, then a mapped tail.
  const double scale = std::max(1.0, mu) / (b - s);
  const double knee = std::max(zeta, scale);
  const double head = finite_part(zeta, knee);
  const double tail_part = quad::integrate_to_inf(f, knee, scale, qc).value;
  return head + tail_part;
}

McEstimate mc_opsc(const SecrecyScenario& sc, const McConfig& cfg) {
  sc.validate();
  cfg.validate();
  const double threshold = std::exp2(sc.rate_rs);
  const auto counts = run_shards<std::uint64_t>(cfg, [&](Philox& rng, std::uint64_t n) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      const double gb = draw(sc.bob, rng);
      double ge = 0.0;
      for (int e = 0; e < sc.n_eve_antennas; ++e) ge += draw(sc.eve, rng);
      // log2((1+gb)/(1+ge)) <= R  <=>  1 + gb <= 2^R (1 + ge)
      if (1.0 + gb <= threshold * (1.0 + ge)) ++hits;
    }
    return hits;
  });
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  const double n = static_cast<double>(cfg.n_samples);
  const double p = total / n;
  return {p, std::sqrt(std::max(p * (1.0 - p), 0.25 / n) / n)};
}

McEstimate mc_aber(const FadingModel& channel, const AdaptiveModScheme& scheme, const McConfig& cfg) {
  scheme.validate();
  cfg.validate();
  struct Moments {
    double num = 0.0;
    double den = 0.0;
    double num2 = 0.0;
    double den2 = 0.0;
    double cross = 0.0;
  };
  const auto parts = run_shards<Moments>(cfg, [&](Philox& rng, std::uint64_t n) {
    Moments m;
    for (std::uint64_t i = 0; i < n; ++i) {
      const double g = draw(channel, rng);
      const auto it = std::upper_bound(scheme.thresholds.begin(), scheme.thresholds.end(), g);
      if (it == scheme.thresholds.begin()) continue;  // below the lowest switching SNR: no transmission
      const int k = scheme.bits_per_region[static_cast<std::size_t>(it - scheme.thresholds.begin()) - 1];
      const double x = k * 0.2 * std::exp(-1.5 * g / std::expm1(k * std::log(2.0)));
      const double y = k;
      m.num += x;
      m.den += y;
      m.num2 += x * x;
      m.den2 += y * y;
      m.cross += x * y;
    }
    return m;
  });
  Moments t;
  for (const auto& p : parts) {
    t.num += p.num;
    t.den += p.den;
    t.num2 += p.num2;
    t.den2 += p.den2;
    t.cross += p.cross;
  }
  if (!(t.den > 0.0)) throw RangeError("mc_aber: no sample landed in a transmitting region");
  const double n = static_cast<double>(cfg.n_samples);
  const double mx = t.num / n;
  const double my = t.den / n;
  const double r = mx / my;
  // Delta-method variance of the ratio of means.
  const double vx = t.num2 / n - mx * mx;
  const double vy = t.den2 / n - my * my;
  const double cxy = t.cross / n - mx * my;
  const double var = (vx - 2.0 * r * cxy + r * r * vy) / (my * my * n);
  return {r, std::sqrt(std::max(var, 0.0))};
}

}  // namespace incmgf
