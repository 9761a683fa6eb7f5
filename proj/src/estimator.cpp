#include "cohest/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "cohest/circuit.hpp"
#include "cohest/errors.hpp"

namespace cohest {

namespace {

double signed_half_power(int h) {
  // (-2)^-h
  const double mag = std::ldexp(1.0, -h);
  return (h & 1) ? -mag : mag;
}

void check_common_n(const std::vector<ProbabilityTable>& tables) {
  for (const auto& t : tables) {
    if (t.n != tables.front().n) throw DataError("estimator: tables mix qubit counts");
  }
}

std::vector<double> group_means_mod_k(const std::vector<double>& values, int k) {
  if (k < 1) throw DataError("estimator: K must be >= 1");
  if (static_cast<size_t>(k) > values.size()) {
    throw DataError("estimator: more MoMs groups than (circuit, W) tables");
  }
  std::vector<double> sums(k, 0.0);
  std::vector<size_t> counts(k, 0);
  for (size_t i = 0; i < values.size(); ++i) {
    sums[i % k] += values[i];
    ++counts[i % k];
  }
  std::vector<double> means(k);
  for (int g = 0; g < k; ++g) means[g] = sums[g] / static_cast<double>(counts[g]);
  return means;
}

DepthEstimate make_estimate(int m, std::vector<double> table_values, int k) {
  DepthEstimate e;
  e.m = m;
  e.n_tables = static_cast<int>(table_values.size());
  e.group_means = group_means_mod_k(table_values, k);
  e.value = median_of_means(e.group_means);
  e.table_values = std::move(table_values);
  return e;
}

}  // namespace

ProbabilityTable ProbabilityTable::from_dense(int n, const Eigen::VectorXd& probs, long n_meas,
                                              double cutoff) {
  ProbabilityTable t;
  t.n = n;
  t.n_meas = n_meas;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (probs[i] > cutoff) t.entries.push_back({static_cast<uint64_t>(i), probs[i]});
  }
  return t;
}

ProbabilityTable ProbabilityTable::from_counts(const ShotRecord& record) {
  record.validate();
  ProbabilityTable t;
  t.n = record.n;
  t.n_meas = record.n_meas;
  const double norm = 1.0 / static_cast<double>(record.n_meas);
  for (const auto& [index, count] : record.counts) {
    if (count > 0) t.entries.push_back({index, count * norm});
  }
  return t;
}

double ProbabilityTable::sum() const {
  double s = 0.0;
  for (const auto& [index, p] : entries) s += p;
  return s;
}

void ProbabilityTable::validate() const {
  uint64_t prev = 0;
  bool first = true;
  for (const auto& [index, p] : entries) {
    if (p < 0.0 || p > 1.0 + 1e-9) throw DataError("probability table: value outside [0, 1]");
    if (!first && index <= prev) throw DataError("probability table: entries not sorted");
    prev = index;
    first = false;
  }
  if (sum() > 1.0 + 1e-9) throw DataError("probability table: probabilities sum beyond 1");
}

ProbabilityTable estimate_probabilities(const ShotRecord& record) {
  return ProbabilityTable::from_counts(record);
}

double unbiased_square(double phat, long n_meas) {
  if (n_meas < 2) throw DataError("unbiased_square: needs n_meas >= 2");
  const double scaled = phat * static_cast<double>(n_meas);
  if (std::abs(scaled - std::round(scaled)) > 1e-9) {
    throw DataError("unbiased_square: phat * n_meas is not integral");
  }
  return phat * (scaled - 1.0) / (static_cast<double>(n_meas) - 1.0);
}

int hamming(const std::string& s, const std::string& t) {
  if (s.size() != t.size()) throw DataError("hamming: length mismatch");
  int h = 0;
  for (size_t i = 0; i < s.size(); ++i) h += (s[i] != t[i]);
  return h;
}

double rm_purity_kernel(const ProbabilityTable& table, KernelStats* stats) {
  const auto& e = table.entries;
  double diag = 0.0, off = 0.0;
  for (size_t i = 0; i < e.size(); ++i) {
    diag += (table.n_meas > 0) ? unbiased_square(e[i].second, table.n_meas)
                               : e[i].second * e[i].second;
    for (size_t j = i + 1; j < e.size(); ++j) {
      off += 2.0 * signed_half_power(hamming(e[i].first, e[j].first)) * e[i].second * e[j].second;
    }
  }
  if (table.n_meas > 0) {
    // Multinomial cross moments satisfy E[phat_s phat_s'] = (1 - 1/N) p_s p_s';
    // together with the corrected diagonal this makes the kernel unbiased.
    off *= static_cast<double>(table.n_meas) / (static_cast<double>(table.n_meas) - 1.0);
  }
  if (stats) {
    stats->diagonal_terms = e.size();
    stats->offdiag_pairs = e.size() * (e.size() - 1) / 2;
  }
  return std::ldexp(diag + off, table.n);
}

double rm_fidelity_kernel(const ProbabilityTable& noisy, const ProbabilityTable& ideal,
                          KernelStats* stats) {
  if (noisy.n != ideal.n) throw DataError("fidelity kernel: qubit count mismatch");
  double acc = 0.0;
  size_t diag = 0;
  for (const auto& [s, p] : noisy.entries) {
    for (const auto& [t, q] : ideal.entries) {
      acc += signed_half_power(hamming(s, t)) * p * q;
      diag += (s == t);
    }
  }
  if (stats) {
    stats->diagonal_terms = diag;
    stats->offdiag_pairs = noisy.entries.size() * ideal.entries.size() - diag;
  }
  return std::ldexp(acc, noisy.n);
}

double median_of_means(std::vector<double> group_means) {
  if (group_means.empty()) throw DataError("median_of_means: empty input");
  std::sort(group_means.begin(), group_means.end());
  const size_t k = group_means.size();
  if (k % 2 == 1) return group_means[k / 2];
  return 0.5 * (group_means[k / 2 - 1] + group_means[k / 2]);
}

DepthEstimate purity_estimator(int m, const std::vector<ProbabilityTable>& tables, int k) {
  if (tables.empty()) throw DataError("purity_estimator: no tables");
  check_common_n(tables);
  std::vector<double> values;
  values.reserve(tables.size());
  for (const auto& t : tables) values.push_back(rm_purity_kernel(t));
  return make_estimate(m, std::move(values), k);
}

DepthEstimate fidelity_estimator(int m, const std::vector<ProbabilityTable>& noisy,
                                 const std::vector<ProbabilityTable>& ideal, int k) {
  if (noisy.empty()) throw DataError("fidelity_estimator: no tables");
  if (noisy.size() != ideal.size()) {
    throw DataError("fidelity_estimator: noisy/ideal table count mismatch");
  }
  check_common_n(noisy);
  check_common_n(ideal);
  std::vector<double> values;
  values.reserve(noisy.size());
  for (size_t i = 0; i < noisy.size(); ++i) {
    values.push_back(rm_fidelity_kernel(noisy[i], ideal[i]));
  }
  return make_estimate(m, std::move(values), k);
}

}  // namespace cohest
