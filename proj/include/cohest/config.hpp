#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "cohest/circuit.hpp"
#include "cohest/noise.hpp"
#include "cohest/topology.hpp"

namespace cohest {

// Full experiment description. The topology member is already reduced to the
// configured qubit subset (relabeled 0..n-1); qubit_subset keeps the original
// indices for provenance.
struct ExperimentConfig {
  std::string topology_name = "custom";
  Topology topology;
  std::vector<int> qubit_subset;
  SamplingPlan plan;
  NoiseModel noise;
  std::string out_dir = "run";
  std::string ideal_mode = "exact";  // or "sampled": Q-hat from n_meas shots
  std::vector<std::string> warnings;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load_file(const std::string& path);

  nlohmann::json canonical_json() const;
  std::string config_hash() const;  // fnv1a-64 hex of the canonical dump
  void validate() const;
};

struct RunManifest {
  std::string config_hash;
  std::string version;
  // stage name -> {"timestamp": ..., "records": ...}
  std::map<std::string, std::pair<std::string, size_t>> stages;

  static RunManifest load_file(const std::string& path);
  void save_file(const std::string& path) const;
  void record_stage(const std::string& stage, size_t records);
};

uint64_t fnv1a64(const std::string& data);
std::string to_hex(uint64_t value);

}  // namespace cohest
