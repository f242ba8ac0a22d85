#pragma once

#include <filesystem>

#include "ymlab/config.hpp"
#include "ymlab/field.hpp"
#include "ymlab/logdet.hpp"
#include "ymlab/renorm.hpp"

namespace ymlab {

// Pipeline: background -> subtracted traces (M0, M1) -> small-t fits ->
// divergence report -> regularized logdet -> RG demonstration, with every
// artifact written under output_dir and hashed into manifest.json. Stages run
// sequentially; a failing stage keeps the artifacts produced so far and the
// manifest records how far the run got.
struct ScenarioResult {
  std::filesystem::path output_dir;
  DivergenceReport report;
  bool exact_zero_case = false;
};

ScenarioResult run_scenario(const ScenarioConfig& config);

// Shared pieces (CLI subcommands reuse them).
BackgroundField background_from_config(const ScenarioConfig& c);
TraceMethod trace_method_from_config(const ScenarioConfig& c);
FitWindow fit_window_from_config(const ScenarioConfig& c, const BackgroundField& bg);

std::string fit_json(const SmallTFit& fit);
std::string report_json(const DivergenceReport& r);
std::string logdet_json(const std::vector<LogdetResult>& results);
std::string report_table(const DivergenceReport& r);

}  // namespace ymlab
