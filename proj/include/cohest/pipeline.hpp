#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "cohest/config.hpp"
#include "cohest/report.hpp"

namespace cohest {

struct PipelinePaths {
  std::string dir;
  std::string manifest;
  std::string circuits;
  std::string shots;  // holds exact-probability records when plan.n_meas == 0
  std::string estimates;
  std::string fits;
  std::string report_json;
  std::string report_csv;
  std::string oracle_json;

  static PipelinePaths in_dir(const std::string& out_dir, bool exact_mode);
};

// Stage entry points. Each stage reads its inputs from and writes its outputs to
// the config's output directory; stage boundaries are files so that externally
// produced records (e.g. hardware counts) can be ingested at the estimate stage.
size_t run_plan(const ExperimentConfig& cfg);
size_t run_simulate(const ExperimentConfig& cfg, int workers = 0);
size_t run_estimate(const ExperimentConfig& cfg, int workers = 0);
void run_fit(const ExperimentConfig& cfg);
CoherenceReport run_report(const ExperimentConfig& cfg);
nlohmann::json run_oracle(const ExperimentConfig& cfg,
                          const std::optional<std::string>& channel_file);

// Channel import/export: {"n": ..., "kraus": [matrix, ...]} with each matrix a
// row-major list of [re, im] pairs.
QuantumChannel channel_from_json(const nlohmann::json& j);
nlohmann::json channel_to_json(const QuantumChannel& ch);
QuantumChannel load_channel_file(const std::string& path);

}  // namespace cohest
