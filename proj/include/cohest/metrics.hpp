#pragma once

#include <string>

#include "cohest/channel.hpp"

namespace cohest {

struct ChannelMetrics {
  double ent_fidelity = 0.0;  // F_ent = 4^-n tr(PTM)
  double avg_fidelity = 0.0;  // F-bar = (tr(PTM) + 2^n) / (2^n (2^n + 1))
  double polarization = 0.0;  // f-bar = (2^n F - 1) / (2^n - 1)
  double infidelity = 0.0;    // r-bar = 1 - F
  double unitarity = 0.0;     // u-bar, see below
};

enum class CoherenceRegion { kImpossible, kPauliConsistent, kCoherent };

std::string to_string(CoherenceRegion region);
CoherenceRegion region_from_string(const std::string& s);

// [f-bar^2, f-bar^2 + (4^n-2)/(2^n-1)^2 r-bar^2], clamped to [0,1]. The interval
// contains the unitarity of any trace-preserving Pauli channel with fidelity F.
struct PauliBoundInterval {
  double lower = 0.0;
  double upper = 0.0;
};

double entanglement_fidelity(const QuantumChannel& ch);
double average_gate_fidelity(const QuantumChannel& ch);
double polarization(const QuantumChannel& ch);

// Average unitarity. `unitarity` evaluates the defining Haar average of
// (2^n/(2^n-1)) ||E(psi - 1/2^n)||_2^2 in closed form from the Kraus operators
// (exact for trace-decreasing and non-unital channels as well). `unitarity_ptm`
// is the independent transfer-matrix route tr(N^T N)/(4^n-1), where N is the PTM
// with the identity-input column removed. The two agree to numerical precision.
double unitarity(const QuantumChannel& ch);
double unitarity_ptm(const QuantumChannel& ch);

ChannelMetrics channel_metrics(const QuantumChannel& ch);

double polarization_from_fidelity(double avg_fidelity, int n);
double fidelity_from_polarization(double f, int n);

PauliBoundInterval pauli_unitarity_bounds(double avg_fidelity, int n);
CoherenceRegion classify_coherence(double u, double avg_fidelity, int n, double tol = 1e-9);

}  // namespace cohest
