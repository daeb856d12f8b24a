// Reproducible experiment runner: scenario JSON in, deterministic CSV
// and a JSON report out, plus the parameter-scan engine.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "awq/csv.hpp"

namespace awq {

struct AxisSpec {
  std::string field;  // dotted path into the scenario json, e.g. "chain.n"
  double start = 0.0, stop = 0.0, step = 0.0;
  std::vector<double> values() const;
};
AxisSpec parse_axis(const std::string& text);  // "field=start:stop:step"

// One scenario evaluation: the CSV payload, the report body, and a flat
// summary reused as scan observables.
struct SubcommandResult {
  CsvTable table;
  nlohmann::json report;
  std::vector<std::pair<std::string, double>> summary;
};

SubcommandResult run_subcommand(const std::string& name, const nlohmann::json& scenario);

struct ScanPointStatus {
  int index = 0;
  std::vector<double> coords;
  bool ok = false;
  std::string error;
};

struct ScanResult {
  CsvTable table;
  nlohmann::json manifest;
  std::vector<ScanPointStatus> statuses;
  bool all_ok() const;
};

// Evaluates the target subcommand over the cartesian grid of the axes,
// concurrently; row order follows axis order regardless of completion
// order, and per-point failures are recorded without stopping the scan.
ScanResult run_scan(const nlohmann::json& scenario, const std::vector<AxisSpec>& axes,
                    const std::string& target, int workers);

// Exit statuses: 0 success, 2 validation error, 3 numeric failure.
int run_scenario(const std::string& config_path, const std::string& subcommand,
                 const std::string& out_dir, const std::vector<AxisSpec>& axes = {},
                 const std::string& scan_target = "", int workers = 0);

int default_workers();

}  // namespace awq
