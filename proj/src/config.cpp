#include "cohest/config.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <fstream>
#include <sstream>

#include "cohest/errors.hpp"
#include "cohest/version.hpp"

namespace cohest {

namespace {

using nlohmann::json;

[[noreturn]] void config_fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

double get_number(const json& j, const std::string& field, double fallback) {
  if (!j.contains(field)) return fallback;
  if (!j.at(field).is_number()) config_fail(field, "must be a number");
  return j.at(field).get<double>();
}

// Accepts a scalar (broadcast) or a per-qubit array.
std::vector<double> get_per_qubit(const json& j, const std::string& field, int n) {
  if (!j.contains(field)) return {};
  const auto& v = j.at(field);
  if (v.is_number()) return std::vector<double>(n, v.get<double>());
  if (v.is_array()) {
    auto out = v.get<std::vector<double>>();
    if (static_cast<int>(out.size()) != n) config_fail(field, "needs one entry per qubit");
    return out;
  }
  config_fail(field, "must be a number or an array");
}

Topology topology_from_json(const json& j, std::string* name) {
  if (j.is_string()) {
    *name = j.get<std::string>();
    return Topology::from_preset(*name);
  }
  if (j.is_object()) {
    *name = "custom";
    Topology t;
    t.n = j.at("n").get<int>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) config_fail("topology.edges", "entries must be pairs");
      int a = e[0].get<int>(), b = e[1].get<int>();
      if (a > b) std::swap(a, b);
      t.edges.push_back({a, b});
    }
    std::sort(t.edges.begin(), t.edges.end());
    t.edges.erase(std::unique(t.edges.begin(), t.edges.end()), t.edges.end());
    t.validate();
    return t;
  }
  config_fail("topology", "must be a preset name or an object with n and edges");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig cfg;
  if (!j.contains("topology")) config_fail("topology", "missing");
  Topology full = topology_from_json(j.at("topology"), &cfg.topology_name);

  if (j.contains("qubits")) {
    cfg.qubit_subset = j.at("qubits").get<std::vector<int>>();
    cfg.topology = full.induced(cfg.qubit_subset);
  } else {
    cfg.topology = full;
    cfg.qubit_subset.resize(full.n);
    for (int q = 0; q < full.n; ++q) cfg.qubit_subset[q] = q;
  }
  if (!cfg.topology.connected()) {
    cfg.warnings.push_back("topology is disconnected; two-qubit gates cannot cross components");
  }

  if (!j.contains("plan")) config_fail("plan", "missing");
  const json& p = j.at("plan");
  if (!p.contains("depths")) config_fail("plan.depths", "missing");
  cfg.plan.depths = p.at("depths").get<std::vector<int>>();
  cfg.plan.n_circuits = static_cast<int>(get_number(p, "n_circuits", 1));
  cfg.plan.n_w = static_cast<int>(get_number(p, "n_w", 1));
  cfg.plan.n_meas = static_cast<long>(get_number(p, "n_meas", 0));
  cfg.plan.k = static_cast<int>(get_number(p, "k", 1));
  cfg.plan.xi = get_number(p, "xi", 0.5);
  cfg.plan.master_seed = j.value("seed", uint64_t{1});
  cfg.plan.validate();

  const int n = cfg.topology.n;
  cfg.noise = NoiseModel::noiseless(n);
  if (j.contains("noise")) {
    const json& nm = j.at("noise");
    cfg.noise.depol_1q_p = get_number(nm, "depolarizing_1q_p", 1.0);
    cfg.noise.depol_2q_p = get_number(nm, "depolarizing_2q_p", 1.0);
    cfg.noise.layer_depol_p = get_number(nm, "layer_depolarizing_p", 1.0);
    cfg.noise.spam_depol_p = get_number(nm, "spam_depolarizing_p", 1.0);
    cfg.noise.t1 = get_per_qubit(nm, "t1", n);
    cfg.noise.t2 = get_per_qubit(nm, "t2", n);
    cfg.noise.duration_1q = get_number(nm, "duration_1q", 0.0);
    cfg.noise.duration_2q = get_number(nm, "duration_2q", 0.0);
    cfg.noise.readout_eps0 = get_per_qubit(nm, "readout_eps0", n);
    cfg.noise.readout_eps1 = get_per_qubit(nm, "readout_eps1", n);
    cfg.noise.coherent_z = get_per_qubit(nm, "coherent_z", n);
    cfg.noise.twirl_layer_noise = nm.value("twirl_layer_noise", false);
    cfg.noise.validate();
  }

  cfg.out_dir = j.value("out", "run");
  cfg.ideal_mode = j.value("ideal_mode", "exact");
  if (cfg.ideal_mode != "exact" && cfg.ideal_mode != "sampled") {
    config_fail("ideal_mode", "must be 'exact' or 'sampled'");
  }
  if (cfg.ideal_mode == "sampled" && cfg.plan.n_meas == 0) {
    config_fail("ideal_mode", "'sampled' needs a shot count (plan.n_meas >= 2)");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return from_json(j);
}

void ExperimentConfig::validate() const {
  topology.validate();
  plan.validate();
  noise.validate();
  if (noise.n != topology.n) throw ConfigError("noise model qubit count mismatch");
  if (out_dir.empty()) throw ConfigError("config field 'out': must not be empty");
}

nlohmann::json ExperimentConfig::canonical_json() const {
  json edges = json::array();
  for (const auto& e : topology.edges) edges.push_back({e.first, e.second});
  json noise_j = {{"depolarizing_1q_p", noise.depol_1q_p},
                  {"depolarizing_2q_p", noise.depol_2q_p},
                  {"layer_depolarizing_p", noise.layer_depol_p},
                  {"spam_depolarizing_p", noise.spam_depol_p},
                  {"duration_1q", noise.duration_1q},
                  {"duration_2q", noise.duration_2q},
                  {"twirl_layer_noise", noise.twirl_layer_noise}};
  auto put_finite = [&noise_j](const char* key, const std::vector<double>& v) {
    // Infinities are not valid JSON; encode disabled relaxation as null.
    json arr = json::array();
    bool any = false;
    for (double x : v) {
      if (std::isfinite(x)) {
        arr.push_back(x);
        any = true;
      } else {
        arr.push_back(nullptr);
      }
    }
    if (any) noise_j[key] = arr;
  };
  put_finite("t1", noise.t1);
  put_finite("t2", noise.t2);
  if (!noise.readout_eps0.empty()) noise_j["readout_eps0"] = noise.readout_eps0;
  if (!noise.readout_eps1.empty()) noise_j["readout_eps1"] = noise.readout_eps1;
  if (!noise.coherent_z.empty()) noise_j["coherent_z"] = noise.coherent_z;

  return {{"topology", {{"name", topology_name}, {"n", topology.n}, {"edges", edges}}},
          {"qubits", qubit_subset},
          {"plan",
           {{"depths", plan.depths},
            {"n_circuits", plan.n_circuits},
            {"n_w", plan.n_w},
            {"n_meas", plan.n_meas},
            {"k", plan.k},
            {"xi", plan.xi}}},
          {"noise", noise_j},
          {"seed", plan.master_seed},
          {"ideal_mode", ideal_mode}};
}

std::string ExperimentConfig::config_hash() const { return to_hex(fnv1a64(canonical_json().dump())); }

RunManifest RunManifest::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("manifest parse error: " + std::string(e.what()));
  }
  RunManifest m;
  m.config_hash = j.at("config_hash").get<std::string>();
  m.version = j.at("version").get<std::string>();
  if (j.contains("stages")) {
    for (const auto& [stage, info] : j.at("stages").items()) {
      m.stages[stage] = {info.at("timestamp").get<std::string>(),
                         info.at("records").get<size_t>()};
    }
  }
  return m;
}

void RunManifest::save_file(const std::string& path) const {
  json stages_j = json::object();
  for (const auto& [stage, info] : stages) {
    stages_j[stage] = {{"timestamp", info.first}, {"records", info.second}};
  }
  json j = {{"config_hash", config_hash}, {"version", version}, {"stages", stages_j}};
  std::ofstream out(path);
  if (!out) throw DataError("cannot write manifest: " + path);
  out << j.dump(2) << "\n";
}

void RunManifest::record_stage(const std::string& stage, size_t records) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  stages[stage] = {buf, records};
}

uint64_t fnv1a64(const std::string& data) {
  uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string to_hex(uint64_t value) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << value;
  return out.str();
}

}  // namespace cohest
