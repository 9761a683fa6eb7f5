#pragma once

#include "cohest/channel.hpp"
#include "cohest/rng.hpp"

namespace cohest {

// Exact Pauli twirl E -> 4^-n sum_P P E(P . P) P. The result is the Pauli channel
// whose error probabilities are the diagonal chi-matrix entries of E; the twirl
// leaves the diagonal of the PTM invariant. Cap kMaxTwirlQubits.
PauliChannel pauli_twirl_exact(const QuantumChannel& ch);

// Finite-sample randomized-compiling twirl: averages over N Pauli conjugations
// drawn uniformly without repetition (1 <= N <= 4^n). Preserves the PTM diagonal
// exactly; for odd N every off-diagonal magnitude becomes an integer multiple of
// 1/N of its pre-twirl value (multiples of 2/N for even N).
QuantumChannel pauli_twirl_sampled(const QuantumChannel& ch, uint64_t n_samples, Rng& rng);

// Deterministic variant used by exhaustive subset enumerations in tests: twirls
// over exactly the given Pauli PTM indices.
QuantumChannel pauli_twirl_with(const QuantumChannel& ch, const std::vector<uint64_t>& indices);

}  // namespace cohest
