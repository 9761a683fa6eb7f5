#include "cohest/scramble.hpp"

#include <cmath>

#include "cohest/errors.hpp"

namespace cohest {

namespace {
constexpr uint64_t kStreamScramble = 0x5C4A;
}

ScramblingResult scrambling_score(const CircuitEnsemble& ensemble, const PauliString& p,
                                  const PauliString& p_prime, int samples) {
  const int n = ensemble.topology.n;
  if (n > kMaxPtmQubits) throw CapExceededError("scrambling_score: cap is 6 qubits");
  if (p.num_qubits() != n || p_prime.num_qubits() != n) {
    throw DataError("scrambling_score: Pauli qubit count mismatch");
  }
  if (p.is_identity() || p_prime.is_identity()) {
    throw DataError("scrambling_score: Paulis must be non-identity");
  }
  if (samples < 1) throw DataError("scrambling_score: needs at least one sample");

  const uint64_t dim = 1ull << n;
  const double dim4 = std::pow(4.0, n);
  const Eigen::MatrixXcd pm = p.matrix();
  const Eigen::MatrixXcd ppm = p_prime.matrix();

  double acc = 0.0;
  for (int s = 0; s < samples; ++s) {
    Rng rng = make_rng(ensemble.seed, {kStreamScramble, static_cast<uint64_t>(s)});
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (int layer = 0; layer < ensemble.depth; ++layer) {
      u = layer_unitary(edge_grab_sample(ensemble.topology, ensemble.xi, rng).layer, n) * u;
    }
    const std::complex<double> tr = (pm * u * ppm * u.adjoint()).trace();
    acc += std::norm(tr) / dim4;
  }

  ScramblingResult result;
  result.samples = samples;
  result.score = acc / static_cast<double>(samples);
  result.delta = result.score - 1.0 / dim4;
  return result;
}

}  // namespace cohest
