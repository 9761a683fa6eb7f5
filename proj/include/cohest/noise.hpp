#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "cohest/channel.hpp"

namespace cohest {

inline constexpr double kNoDecay = std::numeric_limits<double>::infinity();

// Markovian noise assignment for the simulator. Depolarizing knobs are
// polarizations p (p = 1 noiseless): E_p(rho) = p rho + (1-p) tr(rho) 1/2^n.
//
// Where noise acts:
//  - V layer: spam_depol_p and spam_channel only (state-preparation noise).
//  - Each composite layer, after its ideal unitary: per-gate depolarizing on the
//    touched qubits, then per-qubit decoherence over the layer wall-clock
//    (duration_1q + duration_2q), then the configured coherent Z rotations, then
//    layer_depol_p. With twirl_layer_noise the composed layer noise channel is
//    replaced by its exact Pauli twirl.
//  - W layer: standard single-qubit gate noise (per-gate depolarizing and
//    decoherence over duration_1q), then the readout confusion matrix.
struct NoiseModel {
  int n = 1;
  double depol_1q_p = 1.0;
  double depol_2q_p = 1.0;
  double layer_depol_p = 1.0;
  double spam_depol_p = 1.0;
  std::vector<double> t1;  // seconds per qubit; kNoDecay disables
  std::vector<double> t2;
  double duration_1q = 0.0;
  double duration_2q = 0.0;
  std::vector<double> readout_eps0;  // P(read 1 | state 0)
  std::vector<double> readout_eps1;  // P(read 0 | state 1)
  std::vector<double> coherent_z;    // radians per composite layer
  bool twirl_layer_noise = false;
  std::optional<QuantumChannel> spam_channel;

  static NoiseModel noiseless(int n);

  void validate() const;
  bool has_decoherence() const;
  bool has_readout_error() const;
  bool is_noiseless() const;
  // False when amplitude damping (finite T1) makes the layer noise non-unital,
  // i.e. when the exponential-decay fitting assumptions are violated.
  bool unital_layer_noise() const;
};

// Amplitude damping over T1 composed with pure dephasing calibrated so the total
// off-diagonal decay is exp(-t/T2). Requires T2 <= 2*T1.
QuantumChannel decoherence_channel(double t1, double t2, double duration);

}  // namespace cohest
