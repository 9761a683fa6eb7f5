#include "cohest/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "cohest/errors.hpp"

namespace cohest {

std::string to_string(CoherenceRegion region) {
  switch (region) {
    case CoherenceRegion::kImpossible: return "IMPOSSIBLE";
    case CoherenceRegion::kPauliConsistent: return "PAULI_CONSISTENT";
    case CoherenceRegion::kCoherent: return "COHERENT";
  }
  return "UNKNOWN";
}

CoherenceRegion region_from_string(const std::string& s) {
  if (s == "IMPOSSIBLE") return CoherenceRegion::kImpossible;
  if (s == "PAULI_CONSISTENT") return CoherenceRegion::kPauliConsistent;
  if (s == "COHERENT") return CoherenceRegion::kCoherent;
  throw DataError("unknown coherence region: " + s);
}

double entanglement_fidelity(const QuantumChannel& ch) {
  const double d = static_cast<double>(ch.dim());
  double acc = 0.0;
  for (const auto& k : ch.kraus()) acc += std::norm(k.trace());
  return acc / (d * d);
}

double average_gate_fidelity(const QuantumChannel& ch) {
  const double d = static_cast<double>(ch.dim());
  return (d * d * entanglement_fidelity(ch) + d) / (d * (d + 1.0));
}

double polarization_from_fidelity(double avg_fidelity, int n) {
  const double d = std::pow(2.0, n);
  return (d * avg_fidelity - 1.0) / (d - 1.0);
}

double fidelity_from_polarization(double f, int n) {
  const double d = std::pow(2.0, n);
  return ((d - 1.0) * f + 1.0) / d;
}

double polarization(const QuantumChannel& ch) {
  return polarization_from_fidelity(average_gate_fidelity(ch), ch.num_qubits());
}

double unitarity(const QuantumChannel& ch) {
  // Haar second moment: E[psi (x) psi] = (1 + SWAP)/(d(d+1)) turns the average of
  // ||E(psi) - E(1/d)||_2^2 into traces of Kraus cross-overlaps.
  const double d = static_cast<double>(ch.dim());
  const Eigen::MatrixXcd m0 = ch.apply_to_identity() / d;
  const double tr_m0_sq = (m0 * m0).trace().real();

  double frob = 0.0;  // ||PTM||_F^2 = sum_{mu,nu} |tr(K_mu^dag K_nu)|^2
  const auto& kraus = ch.kraus();
  for (size_t i = 0; i < kraus.size(); ++i) {
    const double self = kraus[i].squaredNorm();  // tr(K_i^dag K_i), real
    frob += self * self;
    for (size_t j = i + 1; j < kraus.size(); ++j) {
      frob += 2.0 * std::norm((kraus[i].adjoint() * kraus[j]).trace());
    }
  }
  const double haar_avg = (d * d * tr_m0_sq + frob) / (d * (d + 1.0)) - tr_m0_sq;
  return haar_avg * d / (d - 1.0);
}

double unitarity_ptm(const QuantumChannel& ch) {
  const Eigen::MatrixXd& ptm = ch.ptm();
  const double total = ptm.squaredNorm();
  const double identity_col = ptm.col(0).squaredNorm();
  const double d2 = static_cast<double>(ptm.rows());
  return (total - identity_col) / (d2 - 1.0);
}

ChannelMetrics channel_metrics(const QuantumChannel& ch) {
  ChannelMetrics m;
  m.ent_fidelity = entanglement_fidelity(ch);
  m.avg_fidelity = average_gate_fidelity(ch);
  m.polarization = polarization_from_fidelity(m.avg_fidelity, ch.num_qubits());
  m.infidelity = 1.0 - m.avg_fidelity;
  m.unitarity = unitarity(ch);
  return m;
}

PauliBoundInterval pauli_unitarity_bounds(double avg_fidelity, int n) {
  const double d = std::pow(2.0, n);
  if (avg_fidelity < 1.0 / (d + 1.0) - 1e-9 || avg_fidelity > 1.0 + 1e-9) {
    throw DataError("pauli_unitarity_bounds: fidelity outside the physical range");
  }
  const double f = polarization_from_fidelity(avg_fidelity, n);
  const double r = 1.0 - avg_fidelity;
  PauliBoundInterval b;
  b.lower = std::clamp(f * f, 0.0, 1.0);
  b.upper = std::clamp(f * f + (d * d - 2.0) / ((d - 1.0) * (d - 1.0)) * r * r, 0.0, 1.0);
  return b;
}

CoherenceRegion classify_coherence(double u, double avg_fidelity, int n, double tol) {
  const PauliBoundInterval b = pauli_unitarity_bounds(avg_fidelity, n);
  if (u < b.lower - tol) return CoherenceRegion::kImpossible;
  if (u <= b.upper + tol) return CoherenceRegion::kPauliConsistent;
  return CoherenceRegion::kCoherent;
}

}  // namespace cohest
