#include "cohest/pipeline.hpp"

#include <array>
#include <atomic>
#include <functional>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "cohest/errors.hpp"
#include "cohest/estimator.hpp"
#include "cohest/fit.hpp"
#include "cohest/metrics.hpp"
#include "cohest/scramble.hpp"
#include "cohest/simulator.hpp"
#include "cohest/version.hpp"

namespace cohest {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr uint64_t kStreamShots = 0x5807;
constexpr uint64_t kStreamIdeal = 0x1dea;
constexpr uint64_t kStreamFit = 0xF17;
constexpr int kMaxSimulateQubits = 12;
constexpr int kMaxEstimateQubits = 14;
constexpr double kKernelPairWarnThreshold = 1e8;

std::vector<json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<json> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw DataError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void check_record_hash(const json& record, const std::string& expected, const std::string& path) {
  const std::string got = record.value("cfg", "");
  if (got != expected) {
    throw DataError(path + ": record config hash " + got + " does not match " + expected);
  }
}

RunManifest load_and_check_manifest(const PipelinePaths& paths, const ExperimentConfig& cfg) {
  if (!fs::exists(paths.manifest)) {
    throw DataError("missing manifest (run `plan` first): " + paths.manifest);
  }
  RunManifest manifest = RunManifest::load_file(paths.manifest);
  if (manifest.config_hash != cfg.config_hash()) {
    throw DataError("manifest config hash mismatch; the output directory belongs to a different config");
  }
  return manifest;
}

// Deterministic task fan-out: worker threads pull indices from a shared counter,
// results land in preallocated slots, callers consume them in index order.
void run_parallel(size_t tasks, int workers, const std::function<void(size_t)>& fn) {
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(tasks)));
  if (workers == 1) {
    for (size_t i = 0; i < tasks; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const size_t i = next.fetch_add(1);
        if (i >= tasks) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct RecordKey {
  int m = 0;
  int circuit_id = 0;
  int w_id = 0;
  auto operator<=>(const RecordKey&) const = default;
};

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

json probs_to_json(int n, const Eigen::VectorXd& probs) {
  json out = json::object();
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (probs[i] > 1e-15) out[index_to_bitstring(static_cast<uint64_t>(i), n)] = probs[i];
  }
  return out;
}

ProbabilityTable table_from_record(const json& record, long expected_n_meas) {
  const int n = record.at("n").get<int>();
  const long n_meas = record.at("n_meas").get<long>();
  if (n_meas != expected_n_meas) {
    throw DataError("record n_meas does not match the plan");
  }
  ProbabilityTable t;
  t.n = n;
  t.n_meas = n_meas;
  if (n_meas == 0) {
    for (const auto& [bits, p] : record.at("probs").items()) {
      t.entries.push_back({bitstring_to_index(bits), p.get<double>()});
    }
  } else {
    const ShotRecord shots = shot_record_from_json(record);
    t = ProbabilityTable::from_counts(shots);
  }
  std::sort(t.entries.begin(), t.entries.end());
  t.validate();
  return t;
}

DepthEstimate estimate_from_json(const json& j) {
  DepthEstimate e;
  e.m = j.at("m").get<int>();
  e.value = j.at("value").get<double>();
  e.group_means = j.at("groups").get<std::vector<double>>();
  e.table_values = j.value("table_values", std::vector<double>{});
  e.n_tables = j.at("n_tables").get<int>();
  return e;
}

}  // namespace

PipelinePaths PipelinePaths::in_dir(const std::string& out_dir, bool exact_mode) {
  PipelinePaths p;
  p.dir = out_dir;
  p.manifest = out_dir + "/manifest.json";
  p.circuits = out_dir + "/circuits.jsonl";
  p.shots = out_dir + (exact_mode ? "/probs.jsonl" : "/shots.jsonl");
  p.estimates = out_dir + "/estimates.jsonl";
  p.fits = out_dir + "/fits.json";
  p.report_json = out_dir + "/report.json";
  p.report_csv = out_dir + "/report.csv";
  p.oracle_json = out_dir + "/oracle.json";
  return p;
}

size_t run_plan(const ExperimentConfig& cfg) {
  const PipelinePaths paths = PipelinePaths::in_dir(cfg.out_dir, cfg.plan.n_meas == 0);
  fs::create_directories(paths.dir);
  const std::string hash = cfg.config_hash();

  std::ofstream out(paths.circuits, std::ios::trunc);
  if (!out) throw DataError("cannot write " + paths.circuits);
  size_t records = 0;
  for (int m : cfg.plan.depths) {
    for (int cid = 0; cid < cfg.plan.n_circuits; ++cid) {
      for (int wid = 0; wid < cfg.plan.n_w; ++wid) {
        OmegaCircuit circ = sample_omega_circuit(cfg.plan, cfg.topology, m, cid, wid);
        circ.validate();
        json j = to_json(circ);
        j["cfg"] = hash;
        out << j.dump() << "\n";
        ++records;
      }
    }
  }
  out.close();

  RunManifest manifest;
  manifest.config_hash = hash;
  manifest.version = kVersion;
  if (fs::exists(paths.manifest)) {
    RunManifest previous = RunManifest::load_file(paths.manifest);
    if (previous.config_hash == hash) manifest = previous;
  }
  manifest.record_stage("plan", records);
  manifest.save_file(paths.manifest);
  return records;
}

size_t run_simulate(const ExperimentConfig& cfg, int workers) {
  const bool exact = cfg.plan.n_meas == 0;
  const PipelinePaths paths = PipelinePaths::in_dir(cfg.out_dir, exact);
  if (cfg.topology.n > kMaxSimulateQubits) {
    throw CapExceededError("simulate: cap is 12 qubits");
  }
  RunManifest manifest = load_and_check_manifest(paths, cfg);
  if (!fs::exists(paths.circuits)) throw DataError("missing circuit file (run `plan` first)");
  const std::string hash = cfg.config_hash();

  // Group the planned circuits by (m, circuit_id); rho_m is shared across W.
  std::map<std::pair<int, int>, std::vector<OmegaCircuit>> groups;
  for (const auto& record : read_jsonl(paths.circuits)) {
    check_record_hash(record, hash, paths.circuits);
    OmegaCircuit circ = circuit_from_json(record);
    groups[{circ.m, circ.circuit_id}].push_back(std::move(circ));
  }

  std::set<RecordKey> done;
  size_t existing = 0;
  if (fs::exists(paths.shots)) {
    for (const auto& record : read_jsonl(paths.shots)) {
      check_record_hash(record, hash, paths.shots);
      done.insert({record.at("m").get<int>(), record.at("circuit_id").get<int>(),
                   record.at("w_id").get<int>()});
      ++existing;
    }
  }

  struct Task {
    const std::vector<OmegaCircuit>* circuits;
    std::vector<const OmegaCircuit*> missing;
    std::vector<json> results;
  };
  std::vector<Task> tasks;
  for (auto& [key, circuits] : groups) {
    Task task;
    task.circuits = &circuits;
    for (const auto& circ : circuits) {
      if (!done.count({circ.m, circ.circuit_id, circ.w_id})) task.missing.push_back(&circ);
    }
    if (!task.missing.empty()) tasks.push_back(std::move(task));
  }

  run_parallel(tasks.size(), workers, [&](size_t i) {
    Task& task = tasks[i];
    const DensityMatrix rho = simulate_circuit(*task.missing.front(), cfg.noise);
    for (const OmegaCircuit* circ : task.missing) {
      const Eigen::VectorXd dist = measurement_distribution(rho, circ->w_layer, cfg.noise);
      json record;
      if (exact) {
        record = {{"n", circ->n},       {"m", circ->m}, {"circuit_id", circ->circuit_id},
                  {"w_id", circ->w_id}, {"n_meas", 0},  {"probs", probs_to_json(circ->n, dist)}};
      } else {
        Rng rng = make_rng(cfg.plan.master_seed,
                           {kStreamShots, static_cast<uint64_t>(circ->m),
                            static_cast<uint64_t>(circ->circuit_id),
                            static_cast<uint64_t>(circ->w_id)});
        ShotRecord shots = sample_shots(dist, cfg.plan.n_meas, rng);
        shots.n = circ->n;
        shots.m = circ->m;
        shots.circuit_id = circ->circuit_id;
        shots.w_id = circ->w_id;
        record = to_json(shots);
      }
      record["cfg"] = hash;
      task.results.push_back(std::move(record));
    }
  });

  std::ofstream out(paths.shots, std::ios::app);
  if (!out) throw DataError("cannot write " + paths.shots);
  size_t written = 0;
  for (const auto& task : tasks) {
    for (const auto& record : task.results) {
      out << record.dump() << "\n";
      ++written;
    }
  }
  out.close();

  manifest.record_stage("simulate", existing + written);
  manifest.save_file(paths.manifest);
  return existing + written;
}

size_t run_estimate(const ExperimentConfig& cfg, int workers) {
  const bool exact = cfg.plan.n_meas == 0;
  const PipelinePaths paths = PipelinePaths::in_dir(cfg.out_dir, exact);
  const int n = cfg.topology.n;
  if (n > kMaxEstimateQubits) throw CapExceededError("estimate: cap is 14 qubits");
  RunManifest manifest = load_and_check_manifest(paths, cfg);
  const std::string hash = cfg.config_hash();

  if (!fs::exists(paths.shots)) {
    throw DataError("missing measurement records (run `simulate` or ingest a records file)");
  }

  std::map<RecordKey, ProbabilityTable> noisy;
  for (const auto& record : read_jsonl(paths.shots)) {
    check_record_hash(record, hash, paths.shots);
    const RecordKey key{record.at("m").get<int>(), record.at("circuit_id").get<int>(),
                        record.at("w_id").get<int>()};
    if (record.at("n").get<int>() != n) throw DataError("record qubit count mismatch");
    noisy[key] = table_from_record(record, cfg.plan.n_meas);
  }

  const double dense_pairs = std::ldexp(1.0, n - 1) * (std::ldexp(1.0, n) - 1.0);
  if (dense_pairs > kKernelPairWarnThreshold) {
    std::cerr << "warning: kernel touches ~" << dense_pairs
              << " bit-string pairs per table; estimation will be slow\n";
  }

  // Tables per depth in pair order (circuit-major), matched between P-hat and Q-hat.
  // The classical Q-hat computation dominates here, so records fan out to workers.
  std::vector<OmegaCircuit> circuits;
  for (const auto& record : read_jsonl(paths.circuits)) {
    check_record_hash(record, hash, paths.circuits);
    circuits.push_back(circuit_from_json(record));
  }
  std::vector<ProbabilityTable> noisy_tables(circuits.size()), ideal_tables(circuits.size());
  run_parallel(circuits.size(), workers, [&](size_t i) {
    const OmegaCircuit& circ = circuits[i];
    const RecordKey key{circ.m, circ.circuit_id, circ.w_id};
    const auto it = noisy.find(key);
    if (it == noisy.end()) {
      throw DataError("no measurement record for depth " + std::to_string(circ.m) + " circuit " +
                      std::to_string(circ.circuit_id) + " w " + std::to_string(circ.w_id));
    }
    noisy_tables[i] = it->second;

    const Eigen::VectorXd q = ideal_probabilities(circ);
    if (cfg.ideal_mode == "sampled") {
      Rng rng = make_rng(cfg.plan.master_seed,
                         {kStreamIdeal, static_cast<uint64_t>(circ.m),
                          static_cast<uint64_t>(circ.circuit_id), static_cast<uint64_t>(circ.w_id)});
      ShotRecord sampled = sample_shots(q, cfg.plan.n_meas, rng);
      sampled.n = circ.n;
      ideal_tables[i] = ProbabilityTable::from_counts(sampled);
    } else {
      ideal_tables[i] = ProbabilityTable::from_dense(circ.n, q);
    }
  });
  std::map<int, std::vector<ProbabilityTable>> noisy_by_depth, ideal_by_depth;
  for (size_t i = 0; i < circuits.size(); ++i) {
    noisy_by_depth[circuits[i].m].push_back(std::move(noisy_tables[i]));
    ideal_by_depth[circuits[i].m].push_back(std::move(ideal_tables[i]));
  }

  std::ofstream out(paths.estimates, std::ios::trunc);
  if (!out) throw DataError("cannot write " + paths.estimates);
  size_t records = 0;
  for (const auto& [m, tables] : noisy_by_depth) {
    const DepthEstimate purity = purity_estimator(m, tables, cfg.plan.k);
    const DepthEstimate fidelity = fidelity_estimator(m, tables, ideal_by_depth.at(m), cfg.plan.k);
    for (const auto* pair : {&purity, &fidelity}) {
      json j = to_json(*pair, pair == &purity ? "purity" : "fidelity", n);
      j["cfg"] = hash;
      out << j.dump() << "\n";
      ++records;
    }
  }
  out.close();

  manifest.record_stage("estimate", records);
  manifest.save_file(paths.manifest);
  return records;
}

namespace {

void load_estimates(const PipelinePaths& paths, const std::string& hash,
                    std::vector<DepthEstimate>* purity, std::vector<DepthEstimate>* fidelity) {
  if (!fs::exists(paths.estimates)) throw DataError("missing estimates (run `estimate` first)");
  for (const auto& record : read_jsonl(paths.estimates)) {
    check_record_hash(record, hash, paths.estimates);
    const std::string kind = record.at("kind").get<std::string>();
    if (kind == "purity") purity->push_back(estimate_from_json(record));
    else if (kind == "fidelity") fidelity->push_back(estimate_from_json(record));
    else throw DataError("unknown estimate kind: " + kind);
  }
  auto by_depth = [](const DepthEstimate& a, const DepthEstimate& b) { return a.m < b.m; };
  std::sort(purity->begin(), purity->end(), by_depth);
  std::sort(fidelity->begin(), fidelity->end(), by_depth);
}

}  // namespace

void run_fit(const ExperimentConfig& cfg) {
  const PipelinePaths paths = PipelinePaths::in_dir(cfg.out_dir, cfg.plan.n_meas == 0);
  RunManifest manifest = load_and_check_manifest(paths, cfg);
  const std::string hash = cfg.config_hash();

  std::vector<DepthEstimate> purity, fidelity;
  load_estimates(paths, hash, &purity, &fidelity);

  const int n = cfg.topology.n;
  const uint64_t fit_seed = derive_seed(cfg.plan.master_seed, {kStreamFit});
  const DecayFit purity_fit = fit_decay_bootstrap(purity, n, DecayKind::kPurity, 200, fit_seed);
  const DecayFit fidelity_fit =
      fit_decay_bootstrap(fidelity, n, DecayKind::kFidelity, 200, fit_seed);

  json j = {{"purity", to_json(purity_fit)}, {"fidelity", to_json(fidelity_fit)}, {"cfg", hash}};
  std::ofstream out(paths.fits, std::ios::trunc);
  if (!out) throw DataError("cannot write " + paths.fits);
  out << j.dump(2) << "\n";
  out.close();

  manifest.record_stage("fit", 2);
  manifest.save_file(paths.manifest);
}

CoherenceReport run_report(const ExperimentConfig& cfg) {
  const PipelinePaths paths = PipelinePaths::in_dir(cfg.out_dir, cfg.plan.n_meas == 0);
  RunManifest manifest = load_and_check_manifest(paths, cfg);
  const std::string hash = cfg.config_hash();

  if (!fs::exists(paths.fits)) throw DataError("missing fits (run `fit` first)");
  std::ifstream fit_in(paths.fits);
  json fits_j;
  fit_in >> fits_j;
  check_record_hash(fits_j, hash, paths.fits);

  CoherenceReport report = extract_report(decay_fit_from_json(fits_j.at("purity")),
                                          decay_fit_from_json(fits_j.at("fidelity")),
                                          cfg.topology.n);
  report.unital_assumption_ok = cfg.noise.unital_layer_noise();
  load_estimates(paths, hash, &report.purity_estimates, &report.fidelity_estimates);

  json report_j = to_json(report);
  report_j["cfg"] = hash;
  {
    std::ofstream out(paths.report_json, std::ios::trunc);
    if (!out) throw DataError("cannot write " + paths.report_json);
    out << report_j.dump(2) << "\n";
  }

  std::ofstream csv(paths.report_csv, std::ios::trunc);
  if (!csv) throw DataError("cannot write " + paths.report_csv);
  csv << "n,m,kind,value,group_id\n";
  const int n = cfg.topology.n;
  auto emit = [&](int m, const std::string& kind, double value, int group_id) {
    csv << n << "," << m << "," << kind << "," << format_double(value) << "," << group_id << "\n";
  };
  for (const auto* side : {&report.purity_estimates, &report.fidelity_estimates}) {
    const bool is_purity = side == &report.purity_estimates;
    const std::string kind = is_purity ? "purity" : "fidelity";
    const DecayFit& fit = is_purity ? report.purity_fit : report.fidelity_fit;
    for (const auto& e : *side) {
      emit(e.m, kind, e.value, -1);
      for (size_t g = 0; g < e.group_means.size(); ++g) {
        emit(e.m, kind + "_group", e.group_means[g], static_cast<int>(g));
      }
      for (size_t t = 0; t < e.table_values.size(); ++t) {
        emit(e.m, kind + "_raw", e.table_values[t], static_cast<int>(t));
      }
      emit(e.m, kind + "_fit", fit.amplitude * std::pow(fit.rate, e.m) + fit.offset, -1);
    }
  }
  emit(-1, "u", report.unitarity, -1);
  emit(-1, "f", report.polarization, -1);
  emit(-1, "F", report.avg_fidelity, -1);
  emit(-1, "bound_lower", report.bounds.lower, -1);
  emit(-1, "bound_upper", report.bounds.upper, -1);
  csv.close();

  manifest.record_stage("report", 1);
  manifest.save_file(paths.manifest);
  return report;
}

namespace {

json metrics_from_ptm(const Eigen::MatrixXd& ptm, int n) {
  const double d = std::pow(2.0, n);
  const double d2 = d * d;
  const double avg_f = (ptm.trace() + d) / (d * (d + 1.0));
  const double u = (ptm.squaredNorm() - ptm.col(0).squaredNorm()) / (d2 - 1.0);
  // The exact Pauli twirl keeps only the PTM diagonal.
  double twirl_u = 0.0;
  for (Eigen::Index a = 1; a < ptm.rows(); ++a) twirl_u += ptm(a, a) * ptm(a, a);
  twirl_u /= (d2 - 1.0);
  const PauliBoundInterval bounds = pauli_unitarity_bounds(std::clamp(avg_f, 1.0 / (d + 1.0), 1.0), n);
  return {{"F", avg_f},
          {"f", polarization_from_fidelity(avg_f, n)},
          {"u", u},
          {"u_twirled", twirl_u},
          {"bound_lower", bounds.lower},
          {"bound_upper", bounds.upper},
          {"region", to_string(classify_coherence(u, std::clamp(avg_f, 1.0 / (d + 1.0), 1.0), n))},
          {"tp_defect", ptm_trace_preservation_defect(ptm)}};
}

// PTM of the noise a composite layer applies, averaged over sampled layers when
// the per-gate ingredients make it layer-dependent.
Eigen::MatrixXd average_layer_noise_ptm(const ExperimentConfig& cfg, int layer_samples) {
  const int n = cfg.topology.n;
  const NoiseModel& model = cfg.noise;
  const bool gate_dependent = model.depol_1q_p < 1.0 || model.depol_2q_p < 1.0;
  const int samples = gate_dependent ? layer_samples : 1;
  Rng rng = make_rng(cfg.plan.master_seed, {0x0AC1Eu});

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(1ll << (2 * n), 1ll << (2 * n));
  for (int s = 0; s < samples; ++s) {
    acc += layer_noise_ptm(edge_grab_sample(cfg.topology, cfg.plan.xi, rng).layer, model);
  }
  return acc / static_cast<double>(samples);
}

}  // namespace

QuantumChannel channel_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  const uint64_t dim = 1ull << n;
  std::vector<Eigen::MatrixXcd> kraus;
  for (const auto& mat : j.at("kraus")) {
    if (mat.size() != dim * dim) throw DataError("channel: Kraus entry count != 4^n");
    Eigen::MatrixXcd k(dim, dim);
    uint64_t idx = 0;
    for (const auto& pair : mat) {
      if (!pair.is_array() || pair.size() != 2) {
        throw DataError("channel: entries must be [re, im] pairs");
      }
      k(idx / dim, idx % dim) = {pair[0].get<double>(), pair[1].get<double>()};
      ++idx;
    }
    kraus.push_back(std::move(k));
  }
  QuantumChannel ch(n, std::move(kraus));
  ch.validate();
  return ch;
}

json channel_to_json(const QuantumChannel& ch) {
  json kraus = json::array();
  const uint64_t dim = ch.dim();
  for (const auto& k : ch.kraus()) {
    json mat = json::array();
    for (uint64_t r = 0; r < dim; ++r) {
      for (uint64_t c = 0; c < dim; ++c) {
        mat.push_back({k(r, c).real(), k(r, c).imag()});
      }
    }
    kraus.push_back(std::move(mat));
  }
  return {{"n", ch.num_qubits()}, {"kraus", kraus}};
}

QuantumChannel load_channel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open channel file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("channel parse error: " + std::string(e.what()));
  }
  return channel_from_json(j);
}

nlohmann::json run_oracle(const ExperimentConfig& cfg,
                          const std::optional<std::string>& channel_file) {
  json out;
  if (channel_file) {
    const QuantumChannel ch = load_channel_file(*channel_file);
    if (ch.num_qubits() > kMaxPtmQubits) throw CapExceededError("oracle: channel cap is 6 qubits");
    out["channel"] = metrics_from_ptm(ch.ptm(), ch.num_qubits());
    out["channel"]["n"] = ch.num_qubits();
    return out;
  }

  const int n = cfg.topology.n;
  if (n > kMaxPtmQubits) throw CapExceededError("oracle: exact channel route cap is 6 qubits");
  out["layer_noise"] = metrics_from_ptm(average_layer_noise_ptm(cfg, 100), n);
  out["layer_noise"]["n"] = n;
  out["layer_noise"]["averaged_over_layers"] =
      cfg.noise.depol_1q_p < 1.0 || cfg.noise.depol_2q_p < 1.0;

  // Exact per-depth purity and fidelity of rho_m, averaged over sampled circuits.
  const int circuit_samples = std::max(cfg.plan.n_circuits, 50);
  json decays = json::array();
  for (int m : cfg.plan.depths) {
    double purity_acc = 0.0, fidelity_acc = 0.0;
    for (int cid = 0; cid < circuit_samples; ++cid) {
      const OmegaCircuit circ = sample_omega_circuit(cfg.plan, cfg.topology, m, cid, 0);
      const DensityMatrix rho = simulate_circuit(circ, cfg.noise);
      purity_acc += rho.purity();
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(rho.dim());
      psi[0] = 1.0;
      apply_layer(psi, circ.v_layer, n);
      for (const auto& layer : circ.layers) apply_layer(psi, layer, n);
      fidelity_acc += (psi.adjoint() * rho.rho * psi)(0).real();
    }
    decays.push_back({{"m", m},
                      {"purity", purity_acc / circuit_samples},
                      {"fidelity", fidelity_acc / circuit_samples},
                      {"circuit_samples", circuit_samples}});
  }
  out["exact_decays"] = decays;

  // Estimator outputs, when the pipeline has produced them, for side-by-side reading.
  const PipelinePaths paths = PipelinePaths::in_dir(cfg.out_dir, cfg.plan.n_meas == 0);
  if (fs::exists(paths.estimates)) {
    std::vector<DepthEstimate> purity, fidelity;
    load_estimates(paths, cfg.config_hash(), &purity, &fidelity);
    json est = json::array();
    for (size_t i = 0; i < purity.size(); ++i) {
      est.push_back({{"m", purity[i].m},
                     {"purity", purity[i].value},
                     {"fidelity", i < fidelity.size() ? fidelity[i].value : 0.0}});
    }
    out["estimates"] = est;
  }

  if (n >= 2) {
    json scrambling = json::array();
    const int depth = cfg.plan.depths.back();
    CircuitEnsemble ensemble{cfg.topology, cfg.plan.xi, depth, cfg.plan.master_seed};
    const std::vector<std::pair<PauliString, PauliString>> pairs = {
        {PauliString::single(n, 0, 'X'), PauliString::single(n, 0, 'X')},
        {PauliString::single(n, 0, 'X'), PauliString::single(n, n - 1, 'Z')},
        {PauliString::single(n, 0, 'Z'), PauliString::single(n, n - 1, 'X')},
    };
    for (const auto& [p, pp] : pairs) {
      const ScramblingResult r = scrambling_score(ensemble, p, pp, 200);
      scrambling.push_back({{"p", p.label()},
                            {"p_prime", pp.label()},
                            {"depth", depth},
                            {"score", r.score},
                            {"delta", r.delta},
                            {"samples", r.samples}});
    }
    out["scrambling"] = scrambling;
  }

  fs::create_directories(cfg.out_dir);
  std::ofstream file(paths.oracle_json, std::ios::trunc);
  if (file) file << out.dump(2) << "\n";
  return out;
}

}  // namespace cohest
