#pragma once

// Grid sweeps of the metrics, driven by a JSON description, plus the
// figure presets and the self-check used by the command-line tool.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "incmgf/oracles.hpp"

namespace incmgf {

/// Malformed or inconsistent sweep description.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure at one grid point; the message names the point.
class GridPointError : public std::runtime_error {
 public:
  explicit GridPointError(const std::string& what) : std::runtime_error(what) {}
};

struct AxisSpec {
  std::string name;  // dotted path into the scenario, e.g. "bob.mean_snr_db"
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> values() const;
};

struct CurveSpec {
  std::string label;
  nlohmann::json set = nlohmann::json::object();  // dotted path -> value
};

enum class OutputFormat { Csv, Json };

struct SweepSpec {
  std::string metric;
  AxisSpec axis;
  nlohmann::json fixed = nlohmann::json::object();
  std::vector<CurveSpec> curves;
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;
  std::optional<McConfig> validate;
  int precision = 10;
};

struct SweepRow {
  std::string curve;
  double axis_value = 0.0;
  double value = 0.0;
  std::optional<McEstimate> mc;
};

SweepSpec sweep_spec_from_json(const nlohmann::json& j);
/// fig1 ... fig8.
SweepSpec preset_spec(const std::string& name);
std::vector<std::string> preset_names();

/// Value of `metric` for a scenario object (see README for the fields per metric).
double evaluate_metric(const std::string& metric, const nlohmann::json& scenario, const AccuracyBudget& acc = {});
/// Monte Carlo counterpart; throws ConfigError for metrics without one.
McEstimate mc_metric(const std::string& metric, const nlohmann::json& scenario, const McConfig& cfg);

std::vector<SweepRow> run_sweep(const SweepSpec& spec);
std::string format_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);
nlohmann::json format_json(const SweepSpec& spec, const std::vector<SweepRow>& rows);
/// Writes to spec.output_path, or to stdout when it is empty or "-".
void write_sweep_output(const SweepSpec& spec, const std::vector<SweepRow>& rows);

struct SelfcheckOptions {
  /// Perturbs one gamma-mixture coefficient so the mixture check must fail.
  bool corrupt_mixture = false;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& opts = {});

}  // namespace incmgf
