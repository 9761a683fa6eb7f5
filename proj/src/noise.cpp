#include "cohest/noise.hpp"

#include <cmath>

#include "cohest/errors.hpp"

namespace cohest {

namespace {

void check_prob(double p, const char* name) {
  if (p < 0.0 || p > 1.0) throw ConfigError(std::string("noise: ") + name + " must be in [0, 1]");
}

void check_per_qubit(const std::vector<double>& v, int n, const char* name) {
  if (!v.empty() && static_cast<int>(v.size()) != n) {
    throw ConfigError(std::string("noise: ") + name + " must have one entry per qubit");
  }
}

}  // namespace

NoiseModel NoiseModel::noiseless(int n) {
  NoiseModel m;
  m.n = n;
  return m;
}

void NoiseModel::validate() const {
  if (n < 1) throw ConfigError("noise: qubit count must be >= 1");
  check_prob(depol_1q_p, "depolarizing_1q_p");
  check_prob(depol_2q_p, "depolarizing_2q_p");
  check_prob(layer_depol_p, "layer_depolarizing_p");
  check_prob(spam_depol_p, "spam_depolarizing_p");
  check_per_qubit(t1, n, "t1");
  check_per_qubit(t2, n, "t2");
  check_per_qubit(readout_eps0, n, "readout_eps0");
  check_per_qubit(readout_eps1, n, "readout_eps1");
  check_per_qubit(coherent_z, n, "coherent_z");
  if (duration_1q < 0.0 || duration_2q < 0.0) throw ConfigError("noise: negative gate duration");
  for (int q = 0; q < n; ++q) {
    const double q_t1 = t1.empty() ? kNoDecay : t1[q];
    const double q_t2 = t2.empty() ? kNoDecay : t2[q];
    if (q_t1 <= 0.0 || q_t2 <= 0.0) throw ConfigError("noise: relaxation times must be positive");
    if (q_t2 > 2.0 * q_t1 + 1e-12) throw ConfigError("noise: T2 must not exceed 2*T1");
  }
  for (double e : readout_eps0) check_prob(e, "readout_eps0");
  for (double e : readout_eps1) check_prob(e, "readout_eps1");
  if (spam_channel && spam_channel->num_qubits() != n) {
    throw ConfigError("noise: spam channel qubit count mismatch");
  }
}

bool NoiseModel::has_decoherence() const {
  if (duration_1q + duration_2q <= 0.0) return false;
  for (double t : t1) {
    if (std::isfinite(t)) return true;
  }
  for (double t : t2) {
    if (std::isfinite(t)) return true;
  }
  return false;
}

bool NoiseModel::has_readout_error() const {
  for (double e : readout_eps0) {
    if (e > 0.0) return true;
  }
  for (double e : readout_eps1) {
    if (e > 0.0) return true;
  }
  return false;
}

bool NoiseModel::is_noiseless() const {
  if (depol_1q_p < 1.0 || depol_2q_p < 1.0 || layer_depol_p < 1.0 || spam_depol_p < 1.0) {
    return false;
  }
  if (has_decoherence() || has_readout_error() || spam_channel.has_value()) return false;
  for (double z : coherent_z) {
    if (z != 0.0) return false;
  }
  return true;
}

bool NoiseModel::unital_layer_noise() const {
  // Amplitude damping is the only non-unital ingredient in the model.
  if (duration_1q + duration_2q <= 0.0) return true;
  for (double t : t1) {
    if (std::isfinite(t)) return false;
  }
  return true;
}

QuantumChannel decoherence_channel(double t1, double t2, double duration) {
  if (duration < 0.0) throw ConfigError("decoherence_channel: negative duration");
  if (t1 <= 0.0 || t2 <= 0.0) throw ConfigError("decoherence_channel: relaxation times must be positive");
  if (t2 > 2.0 * t1 + 1e-12) throw ConfigError("decoherence_channel: T2 must not exceed 2*T1");

  const double p_amp = 1.0 - std::exp(-duration / t1);
  // Extra dephasing beyond the sqrt(1 - p_amp) = exp(-t/2T1) from damping.
  const double lambda = std::exp(-duration * (1.0 / t2 - 0.5 / t1));
  const double q = 0.5 * (1.0 - std::min(lambda, 1.0));

  Eigen::Matrix2cd a0 = Eigen::Matrix2cd::Zero(), a1 = Eigen::Matrix2cd::Zero();
  a0(0, 0) = 1.0;
  a0(1, 1) = std::sqrt(1.0 - p_amp);
  a1(0, 1) = std::sqrt(p_amp);

  std::vector<Eigen::MatrixXcd> kraus;
  const double keep = std::sqrt(1.0 - q), flip = std::sqrt(q);
  Eigen::Matrix2cd z = Eigen::Matrix2cd::Identity();
  z(1, 1) = -1.0;
  kraus.push_back(keep * a0);
  if (p_amp > 0.0) kraus.push_back(keep * a1);
  if (q > 0.0) {
    kraus.push_back(flip * (z * a0));
    if (p_amp > 0.0) kraus.push_back(flip * (z * a1));
  }
  return QuantumChannel(1, std::move(kraus));
}

}  // namespace cohest
