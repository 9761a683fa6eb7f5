#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "cohest/clifford1.hpp"
#include "cohest/rng.hpp"
#include "cohest/topology.hpp"

namespace cohest {

struct Gate {
  enum class Kind { kClifford1, kCz };
  Kind kind = Kind::kClifford1;
  int q0 = 0;
  int q1 = -1;              // second qubit for CZ, otherwise -1
  int clifford_index = -1;  // index into clifford1_table() for single-qubit gates

  static Gate clifford1(int qubit, int index) { return {Kind::kClifford1, qubit, -1, index}; }
  static Gate cz(int a, int b) { return {Kind::kCz, a, b, -1}; }
};

// One instruction layer; no qubit may appear in two gates.
struct Layer {
  std::vector<Gate> gates;
  void validate(int n) const;
};

// A depth-m circuit C_m with its randomized-measurement dressing: V prepended,
// W applied before the final computational-basis measurement. Records with the
// same (m, circuit_id) share V and the composite layers; w_id varies W.
struct OmegaCircuit {
  int n = 0;
  int m = 0;
  int circuit_id = 0;
  int w_id = 0;
  uint64_t seed = 0;  // master seed the sample was derived from
  Layer v_layer;
  std::vector<Layer> layers;
  Layer w_layer;
  bool xi_clamped = false;  // set when edge-grab acceptance probability was clamped

  void validate() const;
};

struct SamplingPlan {
  std::vector<int> depths;  // strictly increasing
  int n_circuits = 1;       // N_{C*_m}
  int n_w = 1;              // N_W
  long n_meas = 0;          // shots per measurement; 0 selects exact probabilities
  int k = 1;                // median-of-means groups
  double xi = 0.5;          // two-qubit gate density
  uint64_t master_seed = 1;

  void validate() const;
};

// Edge-grab composite layer: a random maximal set of disjoint candidate edges is
// drawn (shuffle, keep greedily); each candidate becomes a CZ with probability
// xi*n/(2*|candidates|), clamped to [0,1]; every uncovered qubit gets a uniform
// single-qubit Clifford. `clamped` reports whether the clamp was hit.
struct EdgeGrabSample {
  Layer layer;
  bool clamped = false;
};
EdgeGrabSample edge_grab_sample(const Topology& topology, double xi, Rng& rng);

Layer uniform_clifford1_layer(int n, Rng& rng);

OmegaCircuit sample_omega_circuit(const SamplingPlan& plan, const Topology& topology, int m,
                                  int circuit_id, int w_id);

// Statevector helpers, qubit 0 is the most significant index bit (cap kMaxDenseQubits).
void apply_gate(Eigen::VectorXcd& psi, const Gate& gate, int n);
void apply_layer(Eigen::VectorXcd& psi, const Layer& layer, int n);
Eigen::MatrixXcd layer_unitary(const Layer& layer, int n);

// Exact noiseless outcome distribution of W C_m V |0>; sums to 1 within 1e-12.
Eigen::VectorXd ideal_probabilities(const OmegaCircuit& circuit);

// Bit strings: character i is the measured value of qubit i (qubit 0 leftmost).
std::string index_to_bitstring(uint64_t index, int n);
uint64_t bitstring_to_index(const std::string& bits);

nlohmann::json to_json(const Gate& gate);
nlohmann::json to_json(const Layer& layer);
nlohmann::json to_json(const OmegaCircuit& circuit);
Gate gate_from_json(const nlohmann::json& j);
Layer layer_from_json(const nlohmann::json& j);
OmegaCircuit circuit_from_json(const nlohmann::json& j);

}  // namespace cohest
