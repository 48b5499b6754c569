#include "incmgf/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "incmgf/errors.hpp"
#include "incmgf/mixture.hpp"

namespace incmgf {
namespace {

using nlohmann::json;

json::json_pointer pointer_of(const std::string& dotted) {
  std::string p = "/";
  for (char ch : dotted) p += ch == '.' ? '/' : ch;
  return json::json_pointer(p);
}

void set_path(json& root, const std::string& dotted, const json& value) {
  const auto ptr = pointer_of(dotted);
  // A dB and a linear mean on the same model would be ambiguous.
  const std::string leaf = ptr.back();
  if (leaf == "mean_snr_db" || leaf == "mean_snr") {
    const auto parent = ptr.parent_pointer();
    if (root.contains(parent) && root[parent].is_object()) {
      root[parent].erase(leaf == "mean_snr_db" ? "mean_snr" : "mean_snr_db");
    }
  }
  root[ptr] = value;
}

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("scenario is missing \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) throw ConfigError(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

FadingModel model(const json& j, const char* key) {
  try {
    return model_from_json(field(j, key));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("model \"") + key + "\": " + e.what());
  }
}

SecrecyScenario secrecy(const json& j) {
  SecrecyScenario sc;
  sc.bob = model(j, "bob");
  sc.eve = model(j, "eve");
  sc.rate_rs = j.value("rate_rs", 0.0);
  sc.n_eve_antennas = j.value("n_eve_antennas", 1);
  return sc;
}

double gamma_th(const json& j) {
  if (j.contains("gamma_th_db")) return db_to_linear(number(j, "gamma_th_db"));
  return number(j, "gamma_th");
}

AdaptiveModScheme scheme(const json& j) {
  AdaptiveModScheme s;
  s.bits_per_region = field(j, "bits").get<std::vector<int>>();
  if (j.contains("thresholds")) {
    s.thresholds = j.at("thresholds").get<std::vector<double>>();
  } else {
    const double target = number(j, "ber_target");
    for (int k : s.bits_per_region) s.thresholds.push_back(mqam_threshold(k, target));
  }
  s.validate();
  return s;
}

Tail tail_of(const json& j) {
  const std::string t = j.value("tail", std::string("lower"));
  if (t == "lower") return Tail::Lower;
  if (t == "upper") return Tail::Upper;
  throw ConfigError("tail must be \"lower\" or \"upper\"");
}

std::string format_number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string describe_point(const SweepSpec& spec, const std::string& curve, double x) {
  std::ostringstream os;
  os << spec.metric << " at " << spec.axis.name << "=" << format_number(x, 10);
  if (!curve.empty()) os << " (curve " << curve << ")";
  return os.str();
}

std::vector<double> axis_range(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) throw ConfigError("axis needs step > 0 and stop >= start");
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> v;
  for (long i = 0; i < n; ++i) v.push_back(start + static_cast<double>(i) * step);
  return v;
}

}  // namespace

std::vector<double> AxisSpec::values() const { return axis_range(start, stop, step); }

SweepSpec sweep_spec_from_json(const json& j) {
  try {
    SweepSpec s;
    s.metric = j.at("metric").get<std::string>();
    static const char* metrics[] = {"imgf", "opsc", "spsc", "eps-capacity", "op-interference", "capacity", "aber"};
    if (std::find(std::begin(metrics), std::end(metrics), s.metric) == std::end(metrics)) {
      throw ConfigError("unknown metric \"" + s.metric + "\"");
    }
    const auto& ax = j.at("axis");
    s.axis.name = ax.at("name").get<std::string>();
    s.axis.start = ax.at("start").get<double>();
    s.axis.stop = ax.at("stop").get<double>();
    s.axis.step = ax.at("step").get<double>();
    s.axis.values();
    if (j.contains("fixed")) s.fixed = j.at("fixed");
    if (!s.fixed.is_object()) throw ConfigError("\"fixed\" must be an object");
    if (j.contains("curves")) {
      for (const auto& c : j.at("curves")) s.curves.push_back({c.at("label").get<std::string>(), c.value("set", json::object())});
    }
    if (j.contains("output")) {
      const auto& o = j.at("output");
      s.output_path = o.value("path", std::string());
      const std::string fmt = o.value("format", std::string("csv"));
      if (fmt == "csv") {
        s.format = OutputFormat::Csv;
      } else if (fmt == "json") {
        s.format = OutputFormat::Json;
      } else {
        throw ConfigError("output.format must be csv or json");
      }
    }
    if (j.contains("validate") && !j.at("validate").is_null()) {
      const auto& v = j.at("validate");
      McConfig mc;
      mc.n_samples = v.value("n_samples", mc.n_samples);
      mc.seed = v.value("seed", mc.seed);
      mc.confidence_sigmas = v.value("confidence_sigmas", mc.confidence_sigmas);
      mc.validate();
      if (s.metric == "imgf" || s.metric == "capacity" || s.metric == "eps-capacity") {
        throw ConfigError("Monte Carlo validation is not available for metric " + s.metric);
      }
      s.validate = mc;
    }
    s.precision = j.value("precision", 10);
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("sweep spec: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("sweep spec: ") + e.what());
  }
}

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"}; }

SweepSpec preset_spec(const std::string& name) {
  const json rayleigh_eve = {{"kind", "rayleigh"}, {"mean_snr_db", 15.0}};
  SweepSpec s;
  auto opsc_base = [&](const json& bob) {
    s.metric = "opsc";
    s.axis = {"bob.mean_snr_db", 0.0, 60.0, 2.0};
    s.fixed = {{"bob", bob}, {"eve", rayleigh_eve}, {"rate_rs", 0.1}, {"n_eve_antennas", 1}};
  };
  auto label = [](const std::string& a, double x, const std::string& b, double y) {
    std::ostringstream os;
    os << a << "=" << x << " " << b << "=" << y;
    return os.str();
  };
  if (name == "fig1" || name == "fig2") {
    const double kappa = name == "fig1" ? 1.5 : 10.0;
    opsc_base({{"kind", "kappa_mu_shadowed"}, {"kappa", kappa}, {"mu", 1.0}, {"m", 0.5}});
    for (double mu : {1.0, 2.0, 6.0}) {
      for (double m : {0.5, 12.0}) s.curves.push_back({label("mu", mu, "m", m), {{"bob.mu", mu}, {"bob.m", m}}});
    }
  } else if (name == "fig3") {
    opsc_base({{"kind", "rician_shadowed"}, {"K", 1.5}, {"m", 0.5}});
    for (double k : {1.5, 10.0}) {
      for (double m : {0.5, 12.0}) s.curves.push_back({label("K", k, "m", m), {{"bob.K", k}, {"bob.m", m}}});
    }
  } else if (name == "fig4") {
    opsc_base({{"kind", "kappa_mu"}, {"kappa", 1.5}, {"mu", 1.0}});
    for (double kappa : {1.5, 10.0}) {
      for (double mu : {1.0, 2.0, 6.0}) {
        s.curves.push_back({label("kappa", kappa, "mu", mu), {{"bob.kappa", kappa}, {"bob.mu", mu}}});
      }
    }
  } else if (name == "fig5") {
    opsc_base({{"kind", "eta_mu"}, {"eta", 0.04}, {"mu", 0.5}});
    for (double eta : {0.04, 0.9}) {
      for (double mu : {0.5, 1.0, 4.0}) {
        s.curves.push_back({label("eta", eta, "mu", mu), {{"bob.eta", eta}, {"bob.mu", mu}}});
      }
    }
  } else if (name == "fig6" || name == "fig7") {
    s.metric = "eps-capacity";
    s.axis = {"bob.mean_snr_db", -10.0, 30.0, 2.0};
    const json eve = {{"kind", "rayleigh"}, {"mean_snr_db", -10.0}};
    if (name == "fig6") {
      s.fixed = {{"bob", {{"kind", "kappa_mu_shadowed"}, {"kappa", 1.5}, {"mu", 1.0}, {"m", 2.0}}},
                 {"eve", eve}, {"normalize", true}, {"epsilon", 0.1}};
      for (auto [kappa, mu] : {std::pair{1.5, 1.0}, std::pair{10.0, 6.0}}) {
        for (double eps : {0.1, 0.5, 0.8}) {
          s.curves.push_back({label("kappa", kappa, "mu", mu) + " eps=" + format_number(eps, 3),
                              {{"bob.kappa", kappa}, {"bob.mu", mu}, {"epsilon", eps}}});
        }
      }
    } else {
      s.fixed = {{"bob", {{"kind", "eta_mu"}, {"eta", 0.04}, {"mu", 0.5}}}, {"eve", eve}, {"normalize", true},
                 {"epsilon", 0.1}};
      for (auto [eta, mu] : {std::pair{0.04, 0.5}, std::pair{0.9, 4.0}}) {
        for (double eps : {0.1, 0.5, 0.8}) {
          s.curves.push_back({label("eta", eta, "mu", mu) + " eps=" + format_number(eps, 3),
                              {{"bob.eta", eta}, {"bob.mu", mu}, {"epsilon", eps}}});
        }
      }
    }
  } else if (name == "fig8") {
    s.metric = "eps-capacity";
    s.axis = {"epsilon", 0.05, 0.95, 0.05};
    s.fixed = {{"bob", {{"kind", "kappa_mu"}, {"kappa", 1.5}, {"mu", 2.0}, {"mean_snr_db", 10.0}}},
               {"eve", {{"kind", "rayleigh"}, {"mean_snr_db", -10.0}}},
               {"normalize", true}};
    for (double ge : {-10.0, 0.0, 5.0}) {
      s.curves.push_back({"eve_snr_db=" + format_number(ge, 4), {{"eve.mean_snr_db", ge}}});
    }
  } else {
    throw ConfigError("unknown preset \"" + name + "\"");
  }
  return s;
}

double evaluate_metric(const std::string& metric, const json& j, const AccuracyBudget& acc) {
  if (metric == "imgf") {
    const FadingModel mdl = model(j, "model");
    return imgf(mdl, ImgfQuery{number(j, "s"), number(j, "zeta"), tail_of(j), j.value("deriv_order", 0), acc});
  }
  if (metric == "opsc") return opsc(secrecy(j), acc);
  if (metric == "spsc") return spsc(secrecy(j), acc);
  if (metric == "eps-capacity") {
    const SecrecyScenario sc = secrecy(j);
    const double c = eps_outage_capacity(sc, number(j, "epsilon"), acc);
    if (j.value("normalize", false)) return c / std::log2(1.0 + sc.bob.mean_snr);
    return c;
  }
  if (metric == "op-interference") {
    return outage_interference(model(j, "desired"), model(j, "interference"), gamma_th(j), acc);
  }
  if (metric == "capacity") {
    CapacityScenario sc{model(j, "channel"), std::nullopt};
    if (j.contains("cutoff_snr")) sc.cutoff_snr = number(j, "cutoff_snr");
    return capacity_side_info(sc, acc);
  }
  if (metric == "aber") return aber_adaptive(model(j, "channel"), scheme(j), acc);
  throw ConfigError("unknown metric \"" + metric + "\"");
}

McEstimate mc_metric(const std::string& metric, const json& j, const McConfig& cfg) {
  if (metric == "opsc") return mc_opsc(secrecy(j), cfg);
  if (metric == "spsc") {
    SecrecyScenario sc = secrecy(j);
    sc.rate_rs = 0.0;
    return mc_opsc(sc, cfg);
  }
  if (metric == "op-interference") {
    return mc_opsc(interference_as_secrecy(model(j, "desired"), model(j, "interference"), gamma_th(j)), cfg);
  }
  if (metric == "aber") return mc_aber(model(j, "channel"), scheme(j), cfg);
  throw ConfigError("Monte Carlo validation is not available for metric " + metric);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  struct Task {
    std::string curve;
    double x;
    json scenario;
  };
  std::vector<Task> tasks;
  std::vector<CurveSpec> curves = spec.curves;
  if (curves.empty()) curves.push_back({"", json::object()});
  for (const auto& c : curves) {
    for (double x : spec.axis.values()) {
      json sc = spec.fixed;
      for (const auto& [path, value] : c.set.items()) set_path(sc, path, value);
      set_path(sc, spec.axis.name, x);
      tasks.push_back({c.label, x, std::move(sc)});
    }
  }
  std::vector<SweepRow> rows(tasks.size());
  std::vector<std::string> failures(tasks.size());
  auto eval = [&](std::size_t i) {
    const Task& t = tasks[i];
    try {
      rows[i] = {t.curve, t.x, evaluate_metric(spec.metric, t.scenario), std::nullopt};
      if (spec.validate) {
        McConfig mc = *spec.validate;
        mc.seed = spec.validate->seed + i;
        rows[i].mc = mc_metric(spec.metric, t.scenario, mc);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      failures[i] = describe_point(spec, t.curve, t.x) + ": " + e.what();
    }
  };
  // Monte Carlo already spreads over the worker threads; plain grids are parallel over points.
  const int threads = spec.validate ? 1 : std::min<int>(mc_thread_count(), static_cast<int>(tasks.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) eval(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> config_failed{false};
    std::string config_message;
    auto worker = [&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) {
        try {
          eval(i);
        } catch (const ConfigError& e) {
          if (!config_failed.exchange(true)) config_message = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (config_failed) throw ConfigError(config_message);
  }
  for (const auto& f : failures) {
    if (!f.empty()) throw GridPointError(f);
  }
  return rows;
}

std::string format_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  const bool with_curve = !spec.curves.empty();
  std::ostringstream os;
  if (with_curve) os << "curve,";
  os << spec.axis.name << "," << spec.metric;
  if (spec.validate) os << ",mc_estimate,mc_std_error";
  os << "\n";
  for (const auto& r : rows) {
    if (with_curve) os << "\"" << r.curve << "\",";
    os << format_number(r.axis_value, spec.precision) << "," << format_number(r.value, spec.precision);
    if (r.mc) os << "," << format_number(r.mc->estimate, spec.precision) << "," << format_number(r.mc->std_error, 4);
    os << "\n";
  }
  return os.str();
}

json format_json(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  json out;
  out["metric"] = spec.metric;
  out["axis"] = spec.axis.name;
  out["rows"] = json::array();
  for (const auto& r : rows) {
    json row = {{"axis_value", r.axis_value}, {"value", r.value}};
    if (!spec.curves.empty()) row["curve"] = r.curve;
    if (r.mc) {
      row["mc_estimate"] = r.mc->estimate;
      row["mc_std_error"] = r.mc->std_error;
    }
    out["rows"].push_back(row);
  }
  return out;
}

void write_sweep_output(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  const std::string text = spec.format == OutputFormat::Csv ? format_csv(spec, rows) : format_json(spec, rows).dump(2) + "\n";
  if (spec.output_path.empty() || spec.output_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(spec.output_path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file " + spec.output_path);
  f << text;
}

}  // namespace incmgf
