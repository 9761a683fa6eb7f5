#include "cohest/report.hpp"

#include <algorithm>
#include <cmath>

#include "cohest/errors.hpp"

namespace cohest {

CoherenceReport extract_report(const DecayFit& purity_fit, const DecayFit& fidelity_fit, int n) {
  CoherenceReport r;
  r.n = n;
  r.purity_fit = purity_fit;
  r.fidelity_fit = fidelity_fit;
  r.unitarity = purity_fit.rate;
  r.polarization = fidelity_fit.rate;
  r.avg_fidelity = fidelity_from_polarization(r.polarization, n);
  r.bounds = pauli_unitarity_bounds(r.avg_fidelity, n);

  double tol = std::max(1e-9, 3.0 * purity_fit.bootstrap_se);
  if (fidelity_fit.bootstrap_se > 0.0) {
    const double d = std::pow(2.0, n);
    const double se_fid = (d - 1.0) / d * fidelity_fit.bootstrap_se;
    const double lo = std::clamp(r.avg_fidelity - 3.0 * se_fid, 1.0 / (d + 1.0), 1.0);
    const double hi = std::clamp(r.avg_fidelity + 3.0 * se_fid, 1.0 / (d + 1.0), 1.0);
    const double spread = std::abs(pauli_unitarity_bounds(hi, n).upper -
                                   pauli_unitarity_bounds(lo, n).upper);
    tol = std::max(tol, 0.5 * spread);
  }
  r.classification_tol = tol;
  r.region = classify_coherence(r.unitarity, r.avg_fidelity, n, tol);
  return r;
}

nlohmann::json to_json(const DecayFit& fit) {
  return {{"kind", fit.kind == DecayKind::kPurity ? "purity" : "fidelity"},
          {"amplitude", fit.amplitude},
          {"rate", fit.rate},
          {"offset", fit.offset},
          {"residual_norm", fit.residual_norm},
          {"bootstrap_se", fit.bootstrap_se},
          {"n_points", fit.n_points}};
}

DecayFit decay_fit_from_json(const nlohmann::json& j) {
  DecayFit f;
  f.kind = j.at("kind").get<std::string>() == "purity" ? DecayKind::kPurity : DecayKind::kFidelity;
  f.amplitude = j.at("amplitude").get<double>();
  f.rate = j.at("rate").get<double>();
  f.offset = j.at("offset").get<double>();
  f.residual_norm = j.at("residual_norm").get<double>();
  f.bootstrap_se = j.at("bootstrap_se").get<double>();
  f.n_points = j.at("n_points").get<int>();
  return f;
}

nlohmann::json to_json(const DepthEstimate& estimate, const char* kind, int n) {
  return {{"n", n},
          {"m", estimate.m},
          {"kind", kind},
          {"value", estimate.value},
          {"groups", estimate.group_means},
          {"table_values", estimate.table_values},
          {"n_tables", estimate.n_tables}};
}

nlohmann::json to_json(const CoherenceReport& report) {
  nlohmann::json j = {{"n", report.n},
                      {"u", report.unitarity},
                      {"f", report.polarization},
                      {"F", report.avg_fidelity},
                      {"bound_lower", report.bounds.lower},
                      {"bound_upper", report.bounds.upper},
                      {"region", to_string(report.region)},
                      {"classification_tol", report.classification_tol},
                      {"unital_assumption_ok", report.unital_assumption_ok},
                      {"purity_fit", to_json(report.purity_fit)},
                      {"fidelity_fit", to_json(report.fidelity_fit)}};
  return j;
}

}  // namespace cohest
