// awq: atomic-waveguide QED experiment runner.
//
// Every subcommand reads a scenario JSON, writes <name>.csv and
// <name>.report.json into --out, and exits 0 on success, 2 on validation
// errors, 3 on numeric failures.

#include <string>
#include <vector>

#include <CLI11.hpp>

#include "awq/errors.hpp"
#include "awq/scan.hpp"
#include "awq/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"atomic-waveguide QED simulations"};
  app.set_version_flag("--version", awq::version());
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  int workers = 0;
  std::vector<std::string> axis_texts;
  std::string scan_target;

  const std::vector<std::string> names = {"band",          "coupling", "evolve",
                                          "purcell-scan",  "superradiance",
                                          "bandgap-rabi",  "bandgap",  "scan"};
  const std::vector<std::string> descriptions = {
      "chain eigenmodes: k, J_k, Gamma_k per mode",
      "dimer/atom coupling to each chain mode",
      "in-band population dynamics with decay fits",
      "Purcell factor across the guided band",
      "collective decay of n dimers vs dimer energy",
      "band-gap Rabi exchange between two dimers",
      "long-range coupling and error budget vs dimer separation",
      "evaluate a subcommand over a parameter grid"};

  for (std::size_t i = 0; i < names.size(); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
    sub->add_option("--config", config_path, "scenario JSON file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--workers", workers, "worker threads (scan only)");
    if (names[i] == "scan") {
      sub->add_option("--axis", axis_texts, "axis as field=start:stop:step (repeatable)")
          ->required();
      sub->add_option("--run", scan_target, "target subcommand to evaluate per point")
          ->required();
    }
  }

  CLI11_PARSE(app, argc, argv);

  const std::string sub = app.get_subcommands().front()->get_name();
  std::vector<awq::AxisSpec> axes;
  try {
    for (const auto& t : axis_texts) axes.push_back(awq::parse_axis(t));
  } catch (const awq::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  const int status = awq::run_scenario(config_path, sub, out_dir, axes, scan_target, workers);
  if (status != 0)
    std::fprintf(stderr, "awq %s failed with status %d (see report json)\n", sub.c_str(),
                 status);
  return status;
}
