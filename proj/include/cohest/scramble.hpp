#pragma once

#include "cohest/circuit.hpp"
#include "cohest/pauli.hpp"

namespace cohest {

struct CircuitEnsemble {
  Topology topology;
  double xi = 0.5;
  int depth = 0;
  uint64_t seed = 1;
};

struct ScramblingResult {
  double score = 0.0;  // Monte-Carlo estimate of E_Omega F_ent[P C P' C^-1]
  double delta = 0.0;  // score - 1/4^n; small values mean fast Pauli spreading
  int samples = 0;
};

// For each sampled circuit unitary U the map is unitary with Kraus P U P' U^dag,
// so its entanglement fidelity is |tr(P U P' U^dag)|^2 / 4^n. Requires
// non-identity Paulis and n <= kMaxPtmQubits.
ScramblingResult scrambling_score(const CircuitEnsemble& ensemble, const PauliString& p,
                                  const PauliString& p_prime, int samples);

}  // namespace cohest
