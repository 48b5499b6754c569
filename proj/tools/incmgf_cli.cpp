// Command-line front end for the incomplete-MGF library.
//
// Exit status: 0 success, 1 failed self-check, 2 bad arguments or
// configuration, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "incmgf/errors.hpp"
#include "incmgf/sweep.hpp"

namespace {

using nlohmann::json;
using namespace incmgf;

struct ModelFlags {
  std::string kind = "rayleigh";
  std::optional<double> mean_snr_db;
  std::optional<double> mean_snr;
  std::optional<double> kappa, mu, m, eta, K, q;
  std::string json_text;

  void add(CLI::App* app) {
    app->add_option("--model", kind, "fading kind (rayleigh, nakagami, rician, rician_shadowed, kappa_mu, "
                                      "kappa_mu_shadowed, eta_mu, hoyt, one_sided_gaussian)");
    app->add_option("--mean-snr-db", mean_snr_db, "mean SNR in dB");
    app->add_option("--mean-snr", mean_snr, "mean SNR, linear");
    app->add_option("--kappa", kappa);
    app->add_option("--mu", mu);
    app->add_option("--m", m, "shadowing (or Nakagami) parameter; 'inf' for none");
    app->add_option("--eta", eta);
    app->add_option("--K", K, "Rician factor");
    app->add_option("--q", q, "Hoyt parameter");
    app->add_option("--model-json", json_text, "model as a JSON object (overrides the flags)");
  }

  json to_json() const {
    if (!json_text.empty()) return json::parse(json_text);
    json j = {{"kind", kind}};
    if (mean_snr_db) j["mean_snr_db"] = *mean_snr_db;
    if (mean_snr) j["mean_snr"] = *mean_snr;
    if (!mean_snr_db && !mean_snr) j["mean_snr_db"] = 0.0;
    auto put = [&](const char* key, const std::optional<double>& v) {
      if (v) j[key] = *v;
    };
    put("kappa", kappa);
    put("mu", mu);
    put("m", m);
    put("eta", eta);
    put("K", K);
    put("q", q);
    return j;
  }
};

// Inline JSON, or @path to read it from a file.
json read_json_arg(const std::string& text) {
  if (!text.empty() && text[0] == '@') {
    std::ifstream f(text.substr(1));
    if (!f) throw ConfigError("cannot open " + text.substr(1));
    return json::parse(f);
  }
  return json::parse(text);
}

void print_value(double v, int precision) { std::printf("%.*g\n", precision, v); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incomplete MGFs of kappa-mu shadowed fading and derived link metrics"};
  app.require_subcommand(1);
  int precision = 7;
  app.add_option("--precision", precision, "significant digits in printed values")->check(CLI::Range(1, 17));

  ModelFlags imgf_model;
  double s = 0.0;
  double zeta = 0.0;
  std::string tail = "lower";
  int deriv = 0;
  std::string method = "closed";
  auto* imgf_cmd = app.add_subcommand("imgf", "lower/upper incomplete MGF or its s-derivative");
  imgf_model.add(imgf_cmd);
  imgf_cmd->add_option("--s", s, "transform argument")->required();
  imgf_cmd->add_option("--zeta", zeta, "truncation point (linear SNR)")->required();
  imgf_cmd->add_option("--tail", tail)->check(CLI::IsMember({"lower", "upper"}));
  imgf_cmd->add_option("--deriv", deriv, "derivative order in s")->check(CLI::Range(0, kMaxDerivOrder));
  imgf_cmd->add_option("--method", method, "closed, laplace or quad")->check(CLI::IsMember({"closed", "laplace", "quad"}));

  std::string bob, eve;
  double rate = 0.1;
  int n_eve = 1;
  double epsilon = 0.5;
  bool normalize = false;
  auto add_secrecy = [&](CLI::App* cmd, bool with_rate) {
    cmd->add_option("--bob", bob, "legitimate link model JSON (or @file)")->required();
    cmd->add_option("--eve", eve, "eavesdropper link model JSON (or @file)")->required();
    cmd->add_option("--n-eve", n_eve, "eavesdropper MRC branches")->check(CLI::PositiveNumber);
    if (with_rate) cmd->add_option("--rate", rate, "secrecy rate R_S in bits/s/Hz");
  };
  auto* opsc_cmd = app.add_subcommand("opsc", "outage probability of the secrecy capacity");
  add_secrecy(opsc_cmd, true);
  auto* spsc_cmd = app.add_subcommand("spsc", "secrecy outage at R_S = 0, Pr{C_S <= 0}");
  add_secrecy(spsc_cmd, false);
  auto* eps_cmd = app.add_subcommand("eps-capacity", "epsilon-outage secrecy capacity");
  add_secrecy(eps_cmd, false);
  eps_cmd->add_option("--epsilon", epsilon)->required()->check(CLI::Range(0.0, 1.0));
  eps_cmd->add_flag("--normalize", normalize, "divide by log2(1 + mean SNR of bob)");

  std::string desired, interference;
  std::optional<double> gamma_th, gamma_th_db;
  auto* opi_cmd = app.add_subcommand("op-interference", "outage probability under one interferer");
  opi_cmd->add_option("--desired", desired, "desired link model JSON (or @file)")->required();
  opi_cmd->add_option("--interference", interference, "interferer model JSON (or @file)")->required();
  auto* gth = opi_cmd->add_option("--gamma-th", gamma_th, "SIR threshold, linear");
  opi_cmd->add_option("--gamma-th-db", gamma_th_db, "SIR threshold in dB")->excludes(gth);

  ModelFlags cap_model;
  std::optional<double> cutoff;
  std::string route = "ei";
  bool show_cutoff = false;
  auto* cap_cmd = app.add_subcommand("capacity", "capacity with transmitter side information");
  cap_model.add(cap_cmd);
  cap_cmd->add_option("--cutoff", cutoff, "cutoff SNR; solved from the power constraint when absent");
  cap_cmd->add_option("--route", route, "ei or direct")->check(CLI::IsMember({"ei", "direct"}));
  cap_cmd->add_flag("--show-cutoff", show_cutoff, "also print the cutoff SNR");

  ModelFlags aber_model;
  std::vector<int> bits = {2, 4, 6, 8};
  double ber_target = 1e-3;
  std::vector<double> thresholds;
  auto* aber_cmd = app.add_subcommand("aber", "average BER of adaptive M-QAM");
  aber_model.add(aber_cmd);
  aber_cmd->add_option("--bits", bits, "bits per region")->delimiter(',');
  aber_cmd->add_option("--ber-target", ber_target, "instantaneous BER target used for the switching SNRs");
  aber_cmd->add_option("--thresholds", thresholds, "explicit switching SNRs (linear)")->delimiter(',');

  std::string spec_path, preset, output, format;
  std::optional<std::uint64_t> validate_samples;
  std::optional<std::uint64_t> seed;
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a metric over a grid");
  auto* spec_opt = sweep_cmd->add_option("--spec", spec_path, "sweep description (JSON file)");
  sweep_cmd->add_option("--preset", preset, "built-in figure grid: fig1 ... fig8")->excludes(spec_opt);
  sweep_cmd->add_option("--output", output, "output path ('-' for stdout)");
  sweep_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--validate-samples", validate_samples, "add Monte Carlo columns with this many samples");
  sweep_cmd->add_option("--seed", seed, "Monte Carlo seed");

  std::string fault;
  auto* self_cmd = app.add_subcommand("selfcheck", "run the invariant checks");
  self_cmd->add_option("--inject-fault", fault, "deliberately break a check (table2)")->check(CLI::IsMember({"table2"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*imgf_cmd) {
      const FadingModel mdl = model_from_json(imgf_model.to_json());
      const Tail t = tail == "upper" ? Tail::Upper : Tail::Lower;
      double v;
      if (method == "closed") {
        v = imgf(mdl, ImgfQuery{s, zeta, t, deriv, {}});
      } else {
        if (deriv != 0) throw ConfigError("--deriv needs --method closed");
        if (method == "quad") {
          v = quad_imgf(mdl, s, zeta, t);
        } else {
          v = imgf_generic(mgf_image(mdl), s, zeta);
          if (t == Tail::Upper) v = mgf(mdl, s) - v;
        }
      }
      print_value(v, precision);
    } else if (*opsc_cmd || *spsc_cmd || *eps_cmd) {
      json sc = {{"bob", read_json_arg(bob)}, {"eve", read_json_arg(eve)}, {"n_eve_antennas", n_eve}};
      std::string metric = "opsc";
      if (*opsc_cmd) sc["rate_rs"] = rate;
      if (*spsc_cmd) metric = "spsc";
      if (*eps_cmd) {
        metric = "eps-capacity";
        sc["epsilon"] = epsilon;
        sc["normalize"] = normalize;
      }
      print_value(evaluate_metric(metric, sc), precision);
    } else if (*opi_cmd) {
      if (!gamma_th && !gamma_th_db) throw ConfigError("op-interference needs --gamma-th or --gamma-th-db");
      json sc = {{"desired", read_json_arg(desired)}, {"interference", read_json_arg(interference)}};
      if (gamma_th) sc["gamma_th"] = *gamma_th;
      if (gamma_th_db) sc["gamma_th_db"] = *gamma_th_db;
      print_value(evaluate_metric("op-interference", sc), precision);
    } else if (*cap_cmd) {
      CapacityScenario sc{model_from_json(cap_model.to_json()), cutoff};
      if (!sc.cutoff_snr) sc.cutoff_snr = solve_cutoff(sc.channel);
      const double c = route == "ei" ? capacity_side_info(sc) : capacity_side_info_direct(sc);
      print_value(c, precision);
      if (show_cutoff) print_value(*sc.cutoff_snr, precision);
    } else if (*aber_cmd) {
      json sc = {{"channel", aber_model.to_json()}, {"bits", bits}};
      if (thresholds.empty()) {
        sc["ber_target"] = ber_target;
      } else {
        sc["thresholds"] = thresholds;
      }
      print_value(evaluate_metric("aber", sc), precision);
    } else if (*sweep_cmd) {
      if (spec_path.empty() && preset.empty()) throw ConfigError("sweep needs --spec or --preset");
      SweepSpec spec;
      if (!preset.empty()) {
        spec = preset_spec(preset);
      } else {
        std::ifstream f(spec_path);
        if (!f) throw ConfigError("cannot open " + spec_path);
        spec = sweep_spec_from_json(json::parse(f));
      }
      if (!output.empty()) spec.output_path = output;
      if (format == "csv") spec.format = OutputFormat::Csv;
      if (format == "json") spec.format = OutputFormat::Json;
      if (validate_samples) {
        McConfig mc = spec.validate.value_or(McConfig{});
        mc.n_samples = *validate_samples;
        spec.validate = mc;
      }
      if (seed) {
        if (!spec.validate) throw ConfigError("--seed needs Monte Carlo validation");
        spec.validate->seed = *seed;
      }
      write_sweep_output(spec, run_sweep(spec));
    } else if (*self_cmd) {
      SelfcheckOptions opts;
      opts.corrupt_mixture = fault == "table2";
      const auto results = run_selfcheck(opts);
      int failed = 0;
      for (const auto& r : results) {
        std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        if (!r.pass) ++failed;
      }
      std::printf("%zu checks, %d failed\n", results.size(), failed);
      return failed == 0 ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: bad JSON: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GridPointError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const AccuracyError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const RangeError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
