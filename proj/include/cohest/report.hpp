#pragma once

#include <vector>

#include "json.hpp"

#include "cohest/fit.hpp"
#include "cohest/metrics.hpp"

namespace cohest {

struct CoherenceReport {
  int n = 0;
  double unitarity = 0.0;     // purity decay rate
  double polarization = 0.0;  // fidelity decay rate
  double avg_fidelity = 0.0;  // ((2^n - 1) f + 1) / 2^n
  PauliBoundInterval bounds;
  CoherenceRegion region = CoherenceRegion::kPauliConsistent;
  double classification_tol = 1e-9;
  DecayFit purity_fit;
  DecayFit fidelity_fit;
  bool unital_assumption_ok = true;  // false when the noise model violates unitality
  std::vector<DepthEstimate> purity_estimates;
  std::vector<DepthEstimate> fidelity_estimates;
};

// Combines the two decay fits into fitted (u, f, F), the Pauli-unitarity interval
// and the region classification. The classification tolerance widens with the
// bootstrap standard errors so boundary channels (a single Pauli error component
// sits exactly on the upper bound) classify stably.
CoherenceReport extract_report(const DecayFit& purity_fit, const DecayFit& fidelity_fit, int n);

nlohmann::json to_json(const CoherenceReport& report);
nlohmann::json to_json(const DecayFit& fit);
nlohmann::json to_json(const DepthEstimate& estimate, const char* kind, int n);
DecayFit decay_fit_from_json(const nlohmann::json& j);

}  // namespace cohest
