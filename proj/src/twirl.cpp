#include "cohest/twirl.hpp"

#include <numeric>

#include "cohest/errors.hpp"

namespace cohest {

PauliChannel pauli_twirl_exact(const QuantumChannel& ch) {
  const int n = ch.num_qubits();
  if (n > kMaxTwirlQubits) throw CapExceededError("pauli_twirl_exact: cap is 4 qubits");
  const double d = static_cast<double>(ch.dim());
  const uint64_t count = 1ull << (2 * n);

  // alpha_a = chi_aa = sum_mu |tr(P_a K_mu)|^2 / d^2.
  std::vector<double> alphas(count, 0.0);
  for (uint64_t a = 0; a < count; ++a) {
    const PauliString pa = PauliString::from_ptm_index(n, a);
    double acc = 0.0;
    for (const auto& k : ch.kraus()) acc += std::norm(pauli_trace(pa, k));
    alphas[a] = acc / (d * d);
  }
  return PauliChannel(n, std::move(alphas));
}

QuantumChannel pauli_twirl_with(const QuantumChannel& ch, const std::vector<uint64_t>& indices) {
  const int n = ch.num_qubits();
  if (n > kMaxTwirlQubits) throw CapExceededError("pauli_twirl_with: cap is 4 qubits");
  if (indices.empty()) throw DataError("pauli_twirl_with: needs at least one Pauli");
  const double scale = 1.0 / std::sqrt(static_cast<double>(indices.size()));
  std::vector<Eigen::MatrixXcd> kraus;
  kraus.reserve(indices.size() * ch.kraus().size());
  for (uint64_t idx : indices) {
    const Eigen::MatrixXcd p = PauliString::from_ptm_index(n, idx).matrix();
    for (const auto& k : ch.kraus()) kraus.push_back(scale * (p * k * p));
  }
  return QuantumChannel(n, std::move(kraus));
}

QuantumChannel pauli_twirl_sampled(const QuantumChannel& ch, uint64_t n_samples, Rng& rng) {
  const int n = ch.num_qubits();
  if (n > kMaxTwirlQubits) throw CapExceededError("pauli_twirl_sampled: cap is 4 qubits");
  const uint64_t count = 1ull << (2 * n);
  if (n_samples < 1 || n_samples > count) {
    throw DataError("pauli_twirl_sampled: sample count must be in [1, 4^n]");
  }
  // Uniform subset without repetition: partial Fisher-Yates over all PTM indices.
  std::vector<uint64_t> pool(count);
  std::iota(pool.begin(), pool.end(), 0);
  for (uint64_t i = 0; i < n_samples; ++i) {
    const uint64_t j = i + uniform_below(rng, count - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(n_samples);
  return pauli_twirl_with(ch, pool);
}

}  // namespace cohest
