// Acceptance suite: runs every verification criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "cohest/estimator.hpp"
#include "cohest/fit.hpp"
#include "cohest/metrics.hpp"
#include "cohest/pipeline.hpp"
#include "cohest/scramble.hpp"
#include "cohest/simulator.hpp"
#include "cohest/twirl.hpp"
#include "oracles.hpp"

using namespace cohest;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string details;
};

std::string fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("cohest_acceptance_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1 & 2: exact-average randomized-measurement identities.

std::vector<Eigen::MatrixXcd> w_unitaries(int n) {
  std::vector<Eigen::MatrixXcd> ws;
  oracle::for_each_w_layer(n, [&](const Layer& w) { ws.push_back(oracle::layer_unitary_kron(w, n)); });
  return ws;
}

Outcome criterion_purity_identity() {
  Rng rng(1001);
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto ws = w_unitaries(n);
    const int trials = (n == 3) ? 10 : 50;
    for (int t = 0; t < trials; ++t) {
      const Eigen::MatrixXcd rho = oracle::random_density(n, rng);
      std::vector<ProbabilityTable> tables;
      tables.reserve(ws.size());
      for (const auto& u : ws) {
        tables.push_back(
            ProbabilityTable::from_dense(n, (u * rho * u.adjoint()).diagonal().real()));
      }
      const double value = purity_estimator(0, tables, 1).value;
      worst = std::max(worst, std::abs(value - (rho * rho).trace().real()));
    }
  }
  return {worst <= 1e-10, "max |estimate - tr(rho^2)| = " + fmt(worst)};
}

Outcome criterion_fidelity_identity() {
  Rng rng(1002);
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto ws = w_unitaries(n);
    const int trials = (n == 3) ? 10 : 50;
    for (int t = 0; t < trials; ++t) {
      const Eigen::MatrixXcd rho = oracle::random_density(n, rng);
      const Eigen::VectorXcd psi = oracle::random_pure_state(n, rng);
      const Eigen::MatrixXcd pure = psi * psi.adjoint();
      std::vector<ProbabilityTable> noisy, ideal;
      for (const auto& u : ws) {
        noisy.push_back(
            ProbabilityTable::from_dense(n, (u * rho * u.adjoint()).diagonal().real()));
        ideal.push_back(
            ProbabilityTable::from_dense(n, (u * pure * u.adjoint()).diagonal().real()));
      }
      const double value = fidelity_estimator(0, noisy, ideal, 1).value;
      const double truth = (psi.adjoint() * rho * psi)(0).real();
      worst = std::max(worst, std::abs(value - truth));
    }
  }
  return {worst <= 1e-10, "max |estimate - <psi|rho|psi>| = " + fmt(worst)};
}

// ---------------------------------------------------------------------------
// 3: end-to-end depolarizing recovery.

CoherenceReport run_pipeline(const nlohmann::json& cfg_json) {
  const ExperimentConfig cfg = ExperimentConfig::from_json(cfg_json);
  run_plan(cfg);
  run_simulate(cfg, 0);
  run_estimate(cfg);
  run_fit(cfg);
  return run_report(cfg);
}

nlohmann::json depolarizing_config(const std::string& dir, long n_meas) {
  // K = 1: plain mean, no median-of-means small-group skew. The master seed is
  // pinned; the pipeline is deterministic so the recovery errors are reproducible.
  return {{"topology", "line_2"},
          {"plan",
           {{"depths", {1, 2, 4, 6, 8, 10}},
            {"n_circuits", 30},
            {"n_w", 30},
            {"n_meas", n_meas},
            {"k", 1},
            {"xi", 0.5}}},
          {"noise", {{"layer_depolarizing_p", 0.95}}},
          {"seed", 7},
          {"out", dir}};
}

Outcome criterion_depolarizing_recovery() {
  const CoherenceReport exact = run_pipeline(depolarizing_config(fresh_dir("depol_exact"), 0));
  const double u_err_exact = std::abs(exact.unitarity - 0.9025);
  const double f_err_exact = std::abs(exact.polarization - 0.95);

  const CoherenceReport shots = run_pipeline(depolarizing_config(fresh_dir("depol_shots"), 2048));
  const double u_err_shots = std::abs(shots.unitarity - 0.9025);
  const double f_err_shots = std::abs(shots.polarization - 0.95);

  const bool pass = u_err_exact <= 0.005 && f_err_exact <= 0.003 && u_err_shots <= 0.015 &&
                    f_err_shots <= 0.010;
  return {pass, "exact |du|=" + fmt(u_err_exact) + " |df|=" + fmt(f_err_exact) +
                    "; shots |du|=" + fmt(u_err_shots) + " |df|=" + fmt(f_err_shots)};
}

// ---------------------------------------------------------------------------
// 4: Pauli bound membership for random Pauli channels.

Outcome criterion_pauli_bound_membership() {
  Rng rng(1004);
  int violations = 0;
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const uint64_t count = 1ull << (2 * n);
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<double> alphas(count, 0.0);
      double sum = 0.0;
      if (trial % 3 == 0) {
        // Uniform Dirichlet over the whole simplex.
        for (auto& a : alphas) sum += (a = -std::log(std::max(uniform01(rng), 1e-300)));
      } else if (trial % 3 == 1) {
        // High-fidelity channels: most weight on the identity.
        for (auto& a : alphas) sum += (a = -std::log(std::max(uniform01(rng), 1e-300)));
        alphas[0] += 30.0 * sum / count;
        sum += 30.0 * sum / count;
      } else {
        // Sparse support, including single-error channels that sit on the bound.
        const int support = 1 + static_cast<int>(uniform_below(rng, 3));
        alphas[0] = 10.0 + uniform01(rng);
        sum = alphas[0];
        for (int s = 0; s < support; ++s) {
          const uint64_t idx = 1 + uniform_below(rng, count - 1);
          const double w = uniform01(rng);
          alphas[idx] += w;
          sum += w;
        }
      }
      for (auto& a : alphas) a /= sum;
      const PauliChannel pc(n, alphas);
      const PauliBoundInterval b = pauli_unitarity_bounds(pc.average_gate_fidelity(), n);
      const double u = pc.unitarity();
      const double excess = std::max(b.lower - u, u - b.upper);
      worst = std::max(worst, excess);
      if (excess > 1e-12) ++violations;
    }
  }
  return {violations == 0, "violations=" + std::to_string(violations) +
                               ", worst excursion=" + fmt(worst)};
}

// ---------------------------------------------------------------------------
// 5: coherence detection and twirled consistency.

nlohmann::json coherent_config(const std::string& dir, bool twirl) {
  return {{"topology", "line_1"},
          {"plan",
           {{"depths", {1, 2, 4, 8, 12, 16}},
            {"n_circuits", 50},
            {"n_w", 50},
            {"n_meas", 0},
            {"k", 5},
            {"xi", 0.5}}},
          {"noise", {{"coherent_z", {0.2}}, {"twirl_layer_noise", twirl}}},
          {"seed", 3},
          {"out", dir}};
}

Outcome criterion_coherence_detection() {
  // Exact oracle: the rotation channel itself.
  Eigen::Matrix2cd rz = Eigen::Matrix2cd::Zero();
  const std::complex<double> i(0, 1);
  rz(0, 0) = std::exp(-i * 0.1);
  rz(1, 1) = std::exp(i * 0.1);
  const QuantumChannel ch = QuantumChannel::from_unitary(rz);
  const double u_exact = unitarity(ch);
  const PauliBoundInterval bounds = pauli_unitarity_bounds(average_gate_fidelity(ch), 1);
  const bool oracle_exceeds = u_exact > bounds.upper + 1e-6;

  const CoherenceReport coherent = run_pipeline(coherent_config(fresh_dir("coh"), false));
  const CoherenceReport twirled = run_pipeline(coherent_config(fresh_dir("coh_twirl"), true));

  const bool pass = oracle_exceeds && coherent.region == CoherenceRegion::kCoherent &&
                    twirled.region == CoherenceRegion::kPauliConsistent;
  return {pass, "u_exact=" + fmt(u_exact) + " upper=" + fmt(bounds.upper) +
                    "; pipeline=" + to_string(coherent.region) +
                    ", twirled=" + to_string(twirled.region)};
}

// ---------------------------------------------------------------------------
// 6: unbiased square-probability estimator.

Outcome criterion_unbiased_estimator() {
  double worst = 0.0;
  for (double p : {0.3, 0.5, 0.9}) {
    for (long n : {2L, 4L, 8L}) {
      const double expectation = oracle::binomial_expectation(p, n, unbiased_square);
      worst = std::max(worst, std::abs(expectation - p * p));
    }
  }
  return {worst <= 1e-12, "max |E - P^2| = " + fmt(worst)};
}

// ---------------------------------------------------------------------------
// 7: finite-sample twirl structure by exhaustive subset enumeration.

Outcome criterion_twirl_structure() {
  Rng rng(1007);
  std::vector<QuantumChannel> channels;
  Eigen::Matrix2cd rx;
  const std::complex<double> i(0, 1);
  rx << std::cos(0.05), -i * std::sin(0.05), -i * std::sin(0.05), std::cos(0.05);
  channels.push_back(QuantumChannel::from_unitary(rx));
  channels.push_back(oracle::random_cptp(1, 2, rng));

  double worst_diag = 0.0, worst_ratio = 0.0;
  for (const auto& ch : channels) {
    const Eigen::MatrixXd original = ch.ptm();
    for (uint64_t mask = 1; mask < 16; ++mask) {
      std::vector<uint64_t> subset;
      for (uint64_t q = 0; q < 4; ++q) {
        if (mask & (1ull << q)) subset.push_back(q);
      }
      const uint64_t count = subset.size();
      if (count % 2 == 0) continue;  // the criterion pins odd N
      const Eigen::MatrixXd twirled = pauli_twirl_with(ch, subset).ptm();
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          if (a == b) {
            worst_diag = std::max(worst_diag, std::abs(twirled(a, b) - original(a, b)));
          } else if (std::abs(original(a, b)) > 1e-12) {
            const double scaled = std::abs(twirled(a, b)) / std::abs(original(a, b)) *
                                  static_cast<double>(count);
            worst_ratio = std::max(worst_ratio, std::abs(scaled - std::round(scaled)));
          } else {
            worst_diag = std::max(worst_diag, std::abs(twirled(a, b)));
          }
        }
      }
    }
  }
  // The seeded sampler must preserve the diagonal as well.
  for (uint64_t n_samples : {1ull, 3ull}) {
    const Eigen::MatrixXd sampled = pauli_twirl_sampled(channels[1], n_samples, rng).ptm();
    for (int a = 0; a < 4; ++a) {
      worst_diag = std::max(worst_diag, std::abs(sampled(a, a) - channels[1].ptm()(a, a)));
    }
  }
  const bool pass = worst_diag <= 1e-10 && worst_ratio <= 1e-9;
  return {pass, "diag drift=" + fmt(worst_diag) + ", multiple defect=" + fmt(worst_ratio)};
}

// ---------------------------------------------------------------------------
// 8: unitarity route equivalence on 200 random channels.

Outcome criterion_unitarity_routes() {
  Rng rng(1008);
  double worst = 0.0;
  std::vector<std::vector<Eigen::VectorXcd>> design(3);
  design[1] = oracle::stabilizer_states(1);
  design[2] = oracle::stabilizer_states(2);
  if (design[1].size() != 6 || design[2].size() != 60) {
    return {false, "stabilizer orbit sizes wrong: " + std::to_string(design[1].size()) + ", " +
                       std::to_string(design[2].size())};
  }
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 2;
    QuantumChannel ch = oracle::random_cptp(n, 1 + trial % 3, rng);
    if (trial % 4 == 1) {
      std::vector<Eigen::MatrixXcd> kraus = ch.kraus();
      for (auto& k : kraus) k *= 0.95;  // trace decreasing
      ch = QuantumChannel(n, std::move(kraus));
    } else if (trial % 4 == 2) {
      // Non-unital: amplitude damping on the first qubit.
      Eigen::MatrixXcd k0 = Eigen::MatrixXcd::Identity(1 << n, 1 << n);
      Eigen::MatrixXcd k1 = Eigen::MatrixXcd::Zero(1 << n, 1 << n);
      const uint64_t bit = 1ull << (n - 1);
      for (uint64_t idx = 0; idx < (1ull << n); ++idx) {
        if (idx & bit) {
          k0(idx, idx) = std::sqrt(0.7);
          k1(idx ^ bit, idx) = std::sqrt(0.3);
        }
      }
      ch = QuantumChannel(n, {k0, k1}).compose(ch);
    }
    const double u_definitional = oracle::unitarity_over_states(ch, design[n]);
    const double u_closed_form = unitarity(ch);
    const double u_block = unitarity_ptm(ch);
    worst = std::max({worst, std::abs(u_definitional - u_block),
                      std::abs(u_closed_form - u_block)});
  }
  return {worst <= 1e-9, "max route disagreement = " + fmt(worst)};
}

// ---------------------------------------------------------------------------
// 9: scrambling diagnostic at depth 8.

Outcome criterion_scrambling() {
  const CircuitEnsemble ensemble{Topology::line(2), 0.5, 8, 90210};
  const ScramblingResult r = scrambling_score(ensemble, PauliString::single(2, 0, 'X'),
                                              PauliString::single(2, 1, 'Z'), 200);
  const double err = std::abs(r.score - 1.0 / 16.0);
  return {err <= 0.05, "score=" + fmt(r.score) + ", |score-1/16|=" + fmt(err) +
                           ", samples=" + std::to_string(r.samples)};
}

// ---------------------------------------------------------------------------
// 10: performance envelope for the five-qubit workload.

Outcome criterion_performance() {
  const std::string dir = fresh_dir("fig3_scale");
  const nlohmann::json cfg_json = {
      {"topology", "star5"},
      {"plan",
       {{"depths", {2, 4, 6, 8, 10, 12}},
        {"n_circuits", 12},
        {"n_w", 10},
        {"n_meas", 2048},
        {"k", 2},
        {"xi", 0.5}}},
      {"noise",
       {{"depolarizing_1q_p", 0.999},
        {"depolarizing_2q_p", 0.99},
        {"t1", {30e-6, 35e-6, 28e-6, 40e-6, 32e-6}},
        {"t2", {22e-6, 30e-6, 25e-6, 35e-6, 28e-6}},
        {"duration_1q", 40e-9},
        {"duration_2q", 120e-9},
        {"readout_eps0", 0.02},
        {"readout_eps1", 0.03}}},
      {"seed", 51015},
      {"out", dir}};

  const auto start = std::chrono::steady_clock::now();
  const CoherenceReport report = run_pipeline(cfg_json);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const bool sane = report.unitarity >= 0.0 && report.unitarity <= 1.0 &&
                    report.polarization >= 0.0 && report.polarization <= 1.0 &&
                    !report.unital_assumption_ok;  // T1 damping flags the A1 violation
  return {seconds < 1800.0 && sane,
          "plan->report took " + fmt(seconds) + " s (budget 1800 s), u=" + fmt(report.unitarity) +
              ", f=" + fmt(report.polarization)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exact-average RM purity identity (n<=3, 1e-10)", criterion_purity_identity},
      {"exact-average RM fidelity identity (n<=3, 1e-10)", criterion_fidelity_identity},
      {"end-to-end depolarizing recovery (exact and 2^11 shots)", criterion_depolarizing_recovery},
      {"Pauli bound membership (500 channels per n in {1,2,3})", criterion_pauli_bound_membership},
      {"coherence detection and twirled consistency (Z 0.2 rad)", criterion_coherence_detection},
      {"unbiased square-probability estimator (exhaustive binomial)", criterion_unbiased_estimator},
      {"finite-sample twirl structure (exhaustive odd-N subsets)", criterion_twirl_structure},
      {"unitarity route equivalence (200 channels, n<=2, 1e-9)", criterion_unitarity_routes},
      {"scrambling diagnostic (depth 8, within 0.05 of 1/16)", criterion_scrambling},
      {"performance envelope (n=5 workload under 30 min)", criterion_performance},
  };

  int failures = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[k].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  " << (k + 1) << ". " << criteria[k].first
              << " [" << outcome.details << "] (" << fmt(seconds) << " s)" << std::endl;
    if (!outcome.pass) ++failures;
  }
  if (failures == 0) {
    std::cout << "all " << criteria.size() << " acceptance criteria passed" << std::endl;
  } else {
    std::cout << failures << " acceptance criteria failed" << std::endl;
  }
  return failures;
}
