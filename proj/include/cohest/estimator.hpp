#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "cohest/simulator.hpp"

namespace cohest {

// Sparse outcome distribution for one (circuit, W) pair. n_meas = 0 marks exact
// probabilities; otherwise values are count/n_meas estimates. Absent bit strings
// are exact zeros, so kernel sums may iterate over the support only.
struct ProbabilityTable {
  int n = 0;
  long n_meas = 0;
  std::vector<std::pair<uint64_t, double>> entries;  // sorted by basis index

  static ProbabilityTable from_dense(int n, const Eigen::VectorXd& probs, long n_meas = 0,
                                     double cutoff = 1e-15);
  static ProbabilityTable from_counts(const ShotRecord& record);

  double sum() const;
  void validate() const;
};

// P-hat(s) = count(s)/N_meas.
ProbabilityTable estimate_probabilities(const ShotRecord& record);

// Unbiased estimator of P^2 from the frequency estimate: phat (phat N - 1)/(N - 1).
// Requires N >= 2 and phat*N integral within 1e-9.
double unbiased_square(double phat, long n_meas);

int hamming(const std::string& s, const std::string& t);
inline int hamming(uint64_t a, uint64_t b) { return __builtin_popcountll(a ^ b); }

struct KernelStats {
  size_t diagonal_terms = 0;
  size_t offdiag_pairs = 0;
};

// 2^n sum_{s,s'} (-2)^{-h(s,s')} P(s) P(s'). For shot-based tables the quadratic
// form is replaced by its unbiased multinomial counterpart: diagonal terms via
// unbiased_square and cross terms scaled by N/(N-1), i.e. count_s count_s' /
// (N (N-1)) throughout. Symmetry of h halves the off-diagonal work.
double rm_purity_kernel(const ProbabilityTable& table, KernelStats* stats = nullptr);

// Same kernel with P(s) Q(s') cross products; no diagonal correction (the two
// factors come from independent estimators, or Q is exact).
double rm_fidelity_kernel(const ProbabilityTable& noisy, const ProbabilityTable& ideal,
                          KernelStats* stats = nullptr);

// Median of K group means; even K averages the two middle order statistics.
double median_of_means(std::vector<double> group_means);

// Per-depth estimate: kernel values grouped by table index mod K, group means,
// value = median of means.
struct DepthEstimate {
  int m = 0;
  double value = 0.0;
  std::vector<double> group_means;
  std::vector<double> table_values;  // raw per-(circuit, W) kernel values
  int n_tables = 0;
};

DepthEstimate purity_estimator(int m, const std::vector<ProbabilityTable>& tables, int k);
DepthEstimate fidelity_estimator(int m, const std::vector<ProbabilityTable>& noisy,
                                 const std::vector<ProbabilityTable>& ideal, int k);

}  // namespace cohest
