#include "cohest/circuit.hpp"

#include <algorithm>
#include <set>

#include "cohest/errors.hpp"
#include "cohest/pauli.hpp"

namespace cohest {

namespace {

// Stream tags for positional seed derivation.
constexpr uint64_t kStreamCircuit = 0xC111;
constexpr uint64_t kStreamW = 0x3333;

void check_dense_cap(int n, const char* where) {
  if (n > kMaxDenseQubits) throw CapExceededError(std::string(where) + ": dense cap is 12 qubits");
}

}  // namespace

void Layer::validate(int n) const {
  std::set<int> used;
  for (const auto& g : gates) {
    if (g.q0 < 0 || g.q0 >= n) throw DataError("layer: qubit index out of range");
    if (!used.insert(g.q0).second) throw DataError("layer: qubit used twice");
    if (g.kind == Gate::Kind::kCz) {
      if (g.q1 < 0 || g.q1 >= n || g.q1 == g.q0) throw DataError("layer: bad CZ qubit pair");
      if (!used.insert(g.q1).second) throw DataError("layer: qubit used twice");
    } else {
      if (g.q1 != -1) throw DataError("layer: single-qubit gate with two qubits");
      if (g.clifford_index < 0 || g.clifford_index >= kClifford1Count) {
        throw DataError("layer: clifford index out of range");
      }
    }
  }
}

void OmegaCircuit::validate() const {
  if (static_cast<int>(layers.size()) != m) throw DataError("circuit: layer count != depth");
  v_layer.validate(n);
  w_layer.validate(n);
  for (const auto& l : layers) l.validate(n);
  // V and W must dress every qubit with a single-qubit Clifford.
  for (const Layer* dressed : {&v_layer, &w_layer}) {
    if (static_cast<int>(dressed->gates.size()) != n) {
      throw DataError("circuit: V/W layer must hold one Clifford per qubit");
    }
    for (const auto& g : dressed->gates) {
      if (g.kind != Gate::Kind::kClifford1) {
        throw DataError("circuit: V/W layer must contain only single-qubit Cliffords");
      }
    }
  }
}

void SamplingPlan::validate() const {
  if (depths.empty()) throw ConfigError("plan: needs at least one depth");
  for (size_t i = 0; i < depths.size(); ++i) {
    if (depths[i] < 0) throw ConfigError("plan: negative depth");
    if (i > 0 && depths[i] <= depths[i - 1]) {
      throw ConfigError("plan: depths must be strictly increasing");
    }
  }
  if (n_circuits < 1) throw ConfigError("plan: n_circuits must be >= 1");
  if (n_w < 1) throw ConfigError("plan: n_w must be >= 1");
  // n_meas = 1 would break the unbiased square-probability correction.
  if (n_meas < 0 || n_meas == 1) {
    throw ConfigError("plan: n_meas must be 0 (exact mode) or >= 2");
  }
  if (k < 1) throw ConfigError("plan: k must be >= 1");
  if (xi < 0.0 || xi > 1.0) throw ConfigError("plan: xi must be in [0, 1]");
}

EdgeGrabSample edge_grab_sample(const Topology& topology, double xi, Rng& rng) {
  const int n = topology.n;
  std::vector<std::pair<int, int>> pool = topology.edges;
  shuffle_inplace(pool, rng);

  std::vector<std::pair<int, int>> candidates;
  std::vector<bool> taken(n, false);
  for (const auto& e : pool) {
    if (taken[e.first] || taken[e.second]) continue;
    taken[e.first] = taken[e.second] = true;
    candidates.push_back(e);
  }

  EdgeGrabSample out;
  std::vector<bool> covered(n, false);
  if (!candidates.empty() && xi > 0.0) {
    double accept = xi * n / (2.0 * static_cast<double>(candidates.size()));
    if (accept > 1.0) {
      accept = 1.0;
      out.clamped = true;
    }
    for (const auto& e : candidates) {
      if (uniform01(rng) < accept) {
        out.layer.gates.push_back(Gate::cz(e.first, e.second));
        covered[e.first] = covered[e.second] = true;
      }
    }
  }
  for (int q = 0; q < n; ++q) {
    if (!covered[q]) out.layer.gates.push_back(Gate::clifford1(q, sample_clifford1(rng)));
  }
  return out;
}

Layer uniform_clifford1_layer(int n, Rng& rng) {
  Layer layer;
  layer.gates.reserve(n);
  for (int q = 0; q < n; ++q) layer.gates.push_back(Gate::clifford1(q, sample_clifford1(rng)));
  return layer;
}

OmegaCircuit sample_omega_circuit(const SamplingPlan& plan, const Topology& topology, int m,
                                  int circuit_id, int w_id) {
  OmegaCircuit circ;
  circ.n = topology.n;
  circ.m = m;
  circ.circuit_id = circuit_id;
  circ.w_id = w_id;
  circ.seed = plan.master_seed;

  Rng circuit_rng = make_rng(plan.master_seed, {kStreamCircuit, static_cast<uint64_t>(m),
                                                static_cast<uint64_t>(circuit_id)});
  circ.v_layer = uniform_clifford1_layer(circ.n, circuit_rng);
  circ.layers.reserve(m);
  for (int i = 0; i < m; ++i) {
    EdgeGrabSample sample = edge_grab_sample(topology, plan.xi, circuit_rng);
    circ.xi_clamped = circ.xi_clamped || sample.clamped;
    circ.layers.push_back(std::move(sample.layer));
  }

  Rng w_rng = make_rng(plan.master_seed, {kStreamW, static_cast<uint64_t>(m),
                                          static_cast<uint64_t>(circuit_id),
                                          static_cast<uint64_t>(w_id)});
  circ.w_layer = uniform_clifford1_layer(circ.n, w_rng);
  return circ;
}

void apply_gate(Eigen::VectorXcd& psi, const Gate& gate, int n) {
  const uint64_t dim = static_cast<uint64_t>(psi.size());
  if (gate.kind == Gate::Kind::kClifford1) {
    const Eigen::Matrix2cd& u = clifford1_table()[gate.clifford_index].matrix;
    const uint64_t bit = 1ull << (n - 1 - gate.q0);
    for (uint64_t i = 0; i < dim; ++i) {
      if (i & bit) continue;
      const std::complex<double> a = psi[i], b = psi[i | bit];
      psi[i] = u(0, 0) * a + u(0, 1) * b;
      psi[i | bit] = u(1, 0) * a + u(1, 1) * b;
    }
  } else {
    const uint64_t mask = (1ull << (n - 1 - gate.q0)) | (1ull << (n - 1 - gate.q1));
    for (uint64_t i = 0; i < dim; ++i) {
      if ((i & mask) == mask) psi[i] = -psi[i];
    }
  }
}

void apply_layer(Eigen::VectorXcd& psi, const Layer& layer, int n) {
  // Two-qubit sublayer acts after the single-qubit sublayer.
  for (const auto& g : layer.gates) {
    if (g.kind == Gate::Kind::kClifford1) apply_gate(psi, g, n);
  }
  for (const auto& g : layer.gates) {
    if (g.kind == Gate::Kind::kCz) apply_gate(psi, g, n);
  }
}

Eigen::MatrixXcd layer_unitary(const Layer& layer, int n) {
  check_dense_cap(n, "layer_unitary");
  const uint64_t dim = 1ull << n;
  Eigen::MatrixXcd u(dim, dim);
  for (uint64_t col = 0; col < dim; ++col) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi[col] = 1.0;
    apply_layer(psi, layer, n);
    u.col(col) = psi;
  }
  return u;
}

Eigen::VectorXd ideal_probabilities(const OmegaCircuit& circuit) {
  check_dense_cap(circuit.n, "ideal_probabilities");
  const uint64_t dim = 1ull << circuit.n;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  psi[0] = 1.0;
  apply_layer(psi, circuit.v_layer, circuit.n);
  for (const auto& layer : circuit.layers) apply_layer(psi, layer, circuit.n);
  apply_layer(psi, circuit.w_layer, circuit.n);
  return psi.cwiseAbs2();
}

std::string index_to_bitstring(uint64_t index, int n) {
  std::string out(static_cast<size_t>(n), '0');
  for (int q = 0; q < n; ++q) {
    if (index & (1ull << (n - 1 - q))) out[q] = '1';
  }
  return out;
}

uint64_t bitstring_to_index(const std::string& bits) {
  uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw DataError("bitstring: must contain only 0/1");
    index = (index << 1) | static_cast<uint64_t>(c == '1');
  }
  return index;
}

nlohmann::json to_json(const Gate& gate) {
  if (gate.kind == Gate::Kind::kCz) {
    return {{"kind", "cz"}, {"qubits", {gate.q0, gate.q1}}};
  }
  return {{"kind", "clifford1"}, {"qubits", {gate.q0}}, {"clifford_index", gate.clifford_index}};
}

nlohmann::json to_json(const Layer& layer) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& g : layer.gates) j.push_back(to_json(g));
  return j;
}

nlohmann::json to_json(const OmegaCircuit& circuit) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : circuit.layers) layers.push_back(to_json(l));
  return {{"n", circuit.n},
          {"m", circuit.m},
          {"circuit_id", circuit.circuit_id},
          {"w_id", circuit.w_id},
          {"seed", circuit.seed},
          {"xi_clamped", circuit.xi_clamped},
          {"v_layer", to_json(circuit.v_layer)},
          {"layers", layers},
          {"w_layer", to_json(circuit.w_layer)}};
}

Gate gate_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const auto qubits = j.at("qubits").get<std::vector<int>>();
  if (kind == "cz") {
    if (qubits.size() != 2) throw DataError("gate: cz needs two qubits");
    return Gate::cz(qubits[0], qubits[1]);
  }
  if (kind == "clifford1") {
    if (qubits.size() != 1) throw DataError("gate: clifford1 needs one qubit");
    return Gate::clifford1(qubits[0], j.at("clifford_index").get<int>());
  }
  throw DataError("gate: unknown kind '" + kind + "'");
}

Layer layer_from_json(const nlohmann::json& j) {
  Layer layer;
  for (const auto& g : j) layer.gates.push_back(gate_from_json(g));
  return layer;
}

OmegaCircuit circuit_from_json(const nlohmann::json& j) {
  OmegaCircuit c;
  c.n = j.at("n").get<int>();
  c.m = j.at("m").get<int>();
  c.circuit_id = j.at("circuit_id").get<int>();
  c.w_id = j.value("w_id", 0);
  c.seed = j.value("seed", uint64_t{0});
  c.xi_clamped = j.value("xi_clamped", false);
  c.v_layer = layer_from_json(j.at("v_layer"));
  for (const auto& l : j.at("layers")) c.layers.push_back(layer_from_json(l));
  c.w_layer = layer_from_json(j.at("w_layer"));
  c.validate();
  return c;
}

}  // namespace cohest
