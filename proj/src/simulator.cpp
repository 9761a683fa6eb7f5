#include "cohest/simulator.hpp"

#include <cmath>
#include <array>
#include <numeric>

#include "cohest/errors.hpp"
#include "cohest/pauli.hpp"

namespace cohest {

namespace {

uint64_t qubit_bit(int n, int q) { return 1ull << (n - 1 - q); }

Eigen::Matrix2cd rz_matrix(double angle) {
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Zero();
  const std::complex<double> i(0.0, 1.0);
  u(0, 0) = std::exp(-i * (0.5 * angle));
  u(1, 1) = std::exp(i * (0.5 * angle));
  return u;
}

std::vector<Eigen::MatrixXcd> local_depolarizing_kraus(double p, int n_local) {
  return depolarizing_channel(p, n_local).kraus();
}

double qubit_time(const std::vector<double>& times, int q) {
  return times.empty() ? kNoDecay : times[q];
}

bool qubit_decoheres(const NoiseModel& model, int q, double duration) {
  if (duration <= 0.0) return false;
  return std::isfinite(qubit_time(model.t1, q)) || std::isfinite(qubit_time(model.t2, q));
}

void apply_decoherence(DensityMatrix& state, const NoiseModel& model, double duration) {
  for (int q = 0; q < model.n; ++q) {
    if (!qubit_decoheres(model, q, duration)) continue;
    const auto channel =
        decoherence_channel(qubit_time(model.t1, q), qubit_time(model.t2, q), duration);
    apply_kraus_1q(state, q, channel.kraus());
  }
}

void apply_gate_noise(DensityMatrix& state, const Layer& layer, const NoiseModel& model) {
  if (model.depol_1q_p < 1.0) {
    const auto kraus = local_depolarizing_kraus(model.depol_1q_p, 1);
    for (const auto& g : layer.gates) {
      if (g.kind == Gate::Kind::kClifford1) apply_kraus_1q(state, g.q0, kraus);
    }
  }
  if (model.depol_2q_p < 1.0) {
    const auto kraus = local_depolarizing_kraus(model.depol_2q_p, 2);
    for (const auto& g : layer.gates) {
      if (g.kind == Gate::Kind::kCz) apply_kraus_2q(state, g.q0, g.q1, kraus);
    }
  }
}

void apply_coherent_z(DensityMatrix& state, const NoiseModel& model) {
  for (int q = 0; q < model.n; ++q) {
    if (!model.coherent_z.empty() && model.coherent_z[q] != 0.0) {
      apply_matrix_1q(state, q, rz_matrix(model.coherent_z[q]));
    }
  }
}

void apply_ideal_layer(DensityMatrix& state, const Layer& layer) {
  for (const auto& g : layer.gates) {
    if (g.kind == Gate::Kind::kClifford1) {
      apply_matrix_1q(state, g.q0, clifford1_table()[g.clifford_index].matrix);
    }
  }
  for (const auto& g : layer.gates) {
    if (g.kind == Gate::Kind::kCz) apply_cz(state, g.q0, g.q1);
  }
}

}  // namespace

Eigen::MatrixXd layer_noise_ptm(const Layer& layer, const NoiseModel& model) {
  const int n = model.n;
  if (n > kMaxPtmQubits) throw CapExceededError("layer_noise_ptm: cap is 6 qubits");
  const uint64_t dim4 = 1ull << (2 * n);
  Eigen::MatrixXd ptm = Eigen::MatrixXd::Identity(dim4, dim4);
  auto push = [&](const Eigen::MatrixXd& local, const std::vector<int>& qubits) {
    ptm = embed_ptm(local, qubits, n) * ptm;
  };
  if (model.depol_1q_p < 1.0) {
    const Eigen::MatrixXd local = depolarizing_channel(model.depol_1q_p, 1).ptm();
    for (const auto& g : layer.gates) {
      if (g.kind == Gate::Kind::kClifford1) push(local, {g.q0});
    }
  }
  if (model.depol_2q_p < 1.0) {
    const Eigen::MatrixXd local = depolarizing_channel(model.depol_2q_p, 2).ptm();
    for (const auto& g : layer.gates) {
      if (g.kind == Gate::Kind::kCz) push(local, {g.q0, g.q1});
    }
  }
  const double duration = model.duration_1q + model.duration_2q;
  for (int q = 0; q < n; ++q) {
    if (qubit_decoheres(model, q, duration)) {
      push(decoherence_channel(qubit_time(model.t1, q), qubit_time(model.t2, q), duration).ptm(),
           {q});
    }
  }
  for (int q = 0; q < n; ++q) {
    if (!model.coherent_z.empty() && model.coherent_z[q] != 0.0) {
      push(ptm_of_unitary(rz_matrix(model.coherent_z[q])), {q});
    }
  }
  if (model.layer_depol_p < 1.0) {
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(dim4, model.layer_depol_p);
    diag(0) = 1.0;
    ptm = diag.asDiagonal() * ptm;
  }
  return ptm;
}

namespace {

PauliChannel twirled_layer_noise(const Layer& layer, const NoiseModel& model) {
  const int n = model.n;
  if (n > kMaxTwirlQubits) {
    throw CapExceededError("twirl_layer_noise: twirl cap is 4 qubits");
  }
  const Eigen::MatrixXd ptm = layer_noise_ptm(layer, model);
  // Twirling keeps only the PTM diagonal; invert lambda -> alpha.
  const uint64_t count = 1ull << (2 * n);
  std::vector<PauliString> paulis;
  paulis.reserve(count);
  for (uint64_t a = 0; a < count; ++a) paulis.push_back(PauliString::from_ptm_index(n, a));
  std::vector<double> alphas(count, 0.0);
  const double scale = 1.0 / static_cast<double>(count);
  for (uint64_t a = 0; a < count; ++a) {
    double acc = 0.0;
    for (uint64_t b = 0; b < count; ++b) {
      const double sign = symplectic_product(paulis[a], paulis[b]) ? -1.0 : 1.0;
      acc += sign * ptm(b, b);
    }
    alphas[a] = std::max(acc * scale, 0.0);
  }
  return PauliChannel(n, std::move(alphas));
}

}  // namespace

DensityMatrix::DensityMatrix(int n_qubits) : n(n_qubits) {
  if (n < 1 || n > kMaxDenseQubits) throw CapExceededError("DensityMatrix: cap is 12 qubits");
  rho = Eigen::MatrixXcd::Zero(dim(), dim());
  rho(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(int n_qubits, Eigen::MatrixXcd matrix) : n(n_qubits), rho(std::move(matrix)) {
  if (n < 1 || n > kMaxDenseQubits) throw CapExceededError("DensityMatrix: cap is 12 qubits");
  if (rho.rows() != static_cast<Eigen::Index>(dim()) || rho.cols() != rho.rows()) {
    throw DataError("DensityMatrix: dimension mismatch");
  }
}

double DensityMatrix::purity() const { return (rho * rho).trace().real(); }

void DensityMatrix::validate(double tol) const {
  if (std::abs(trace_real() - 1.0) > tol) throw DataError("density matrix: trace != 1");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw DataError("density matrix: not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw DataError("density matrix: negative eigenvalue beyond tolerance");
  }
}

void apply_matrix_1q(DensityMatrix& state, int qubit, const Eigen::Matrix2cd& u) {
  const uint64_t dim = state.dim();
  const uint64_t bit = qubit_bit(state.n, qubit);
  auto& rho = state.rho;
  for (uint64_t c = 0; c < dim; ++c) {
    for (uint64_t r = 0; r < dim; ++r) {
      if (r & bit) continue;
      const std::complex<double> a = rho(r, c), b = rho(r | bit, c);
      rho(r, c) = u(0, 0) * a + u(0, 1) * b;
      rho(r | bit, c) = u(1, 0) * a + u(1, 1) * b;
    }
  }
  for (uint64_t c = 0; c < dim; ++c) {
    if (c & bit) continue;
    for (uint64_t r = 0; r < dim; ++r) {
      const std::complex<double> a = rho(r, c), b = rho(r, c | bit);
      rho(r, c) = a * std::conj(u(0, 0)) + b * std::conj(u(0, 1));
      rho(r, c | bit) = a * std::conj(u(1, 0)) + b * std::conj(u(1, 1));
    }
  }
}

void apply_matrix_2q(DensityMatrix& state, int qa, int qb, const Eigen::Matrix4cd& u) {
  const uint64_t dim = state.dim();
  const uint64_t bit_a = qubit_bit(state.n, qa), bit_b = qubit_bit(state.n, qb);
  const uint64_t mask = bit_a | bit_b;
  auto& rho = state.rho;
  std::array<std::complex<double>, 4> v;
  for (uint64_t c = 0; c < dim; ++c) {
    for (uint64_t r = 0; r < dim; ++r) {
      if (r & mask) continue;
      const uint64_t rows[4] = {r, r | bit_b, r | bit_a, r | mask};
      for (int i = 0; i < 4; ++i) v[i] = rho(rows[i], c);
      for (int i = 0; i < 4; ++i) {
        rho(rows[i], c) = u(i, 0) * v[0] + u(i, 1) * v[1] + u(i, 2) * v[2] + u(i, 3) * v[3];
      }
    }
  }
  for (uint64_t c = 0; c < dim; ++c) {
    if (c & mask) continue;
    const uint64_t cols[4] = {c, c | bit_b, c | bit_a, c | mask};
    for (uint64_t r = 0; r < dim; ++r) {
      for (int i = 0; i < 4; ++i) v[i] = rho(r, cols[i]);
      for (int i = 0; i < 4; ++i) {
        rho(r, cols[i]) = v[0] * std::conj(u(i, 0)) + v[1] * std::conj(u(i, 1)) +
                          v[2] * std::conj(u(i, 2)) + v[3] * std::conj(u(i, 3));
      }
    }
  }
}

void apply_cz(DensityMatrix& state, int qa, int qb) {
  const uint64_t dim = state.dim();
  const uint64_t mask = qubit_bit(state.n, qa) | qubit_bit(state.n, qb);
  auto& rho = state.rho;
  for (uint64_t c = 0; c < dim; ++c) {
    const bool flip_c = (c & mask) == mask;
    for (uint64_t r = 0; r < dim; ++r) {
      if (((r & mask) == mask) != flip_c) rho(r, c) = -rho(r, c);
    }
  }
}

void apply_kraus_1q(DensityMatrix& state, int qubit, const std::vector<Eigen::MatrixXcd>& kraus) {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(state.dim(), state.dim());
  for (const auto& k : kraus) {
    DensityMatrix branch(state.n, state.rho);
    apply_matrix_1q(branch, qubit, k);  // K rho K^dag; K need not be unitary
    acc += branch.rho;
  }
  state.rho = std::move(acc);
}

void apply_kraus_2q(DensityMatrix& state, int qa, int qb,
                    const std::vector<Eigen::MatrixXcd>& kraus) {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(state.dim(), state.dim());
  for (const auto& k : kraus) {
    DensityMatrix branch(state.n, state.rho);
    apply_matrix_2q(branch, qa, qb, k);
    acc += branch.rho;
  }
  state.rho = std::move(acc);
}

void apply_global_depolarizing(DensityMatrix& state, double p) {
  if (p >= 1.0) return;
  const double d = static_cast<double>(state.dim());
  const double mix = (1.0 - p) * state.trace_real() / d;
  state.rho *= p;
  state.rho.diagonal().array() += mix;
}

void apply_pauli_channel(DensityMatrix& state, const PauliChannel& channel) {
  const uint64_t dim = state.dim();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  for (uint64_t a = 0; a < channel.alphas().size(); ++a) {
    const double alpha = channel.alphas()[a];
    if (alpha <= 0.0) continue;
    const PauliString p = PauliString::from_ptm_index(state.n, a);
    const uint64_t flip = p.flip_mask();
    for (uint64_t c = 0; c < dim; ++c) {
      const std::complex<double> col_phase = p.phase(c);
      for (uint64_t r = 0; r < dim; ++r) {
        acc(r, c) += alpha * std::conj(p.phase(r)) * col_phase * state.rho(r ^ flip, c ^ flip);
      }
    }
  }
  state.rho = std::move(acc);
}

void apply_channel_dense(DensityMatrix& state, const QuantumChannel& channel) {
  if (channel.num_qubits() != state.n) throw DataError("apply_channel_dense: qubit mismatch");
  state.rho = channel.apply(state.rho);
}

void noisy_layer_apply(DensityMatrix& state, const Layer& layer, const NoiseModel& model) {
  apply_ideal_layer(state, layer);
  if (model.twirl_layer_noise) {
    apply_pauli_channel(state, twirled_layer_noise(layer, model));
    return;
  }
  apply_gate_noise(state, layer, model);
  apply_decoherence(state, model, model.duration_1q + model.duration_2q);
  apply_coherent_z(state, model);
  apply_global_depolarizing(state, model.layer_depol_p);
}

DensityMatrix simulate_circuit(const OmegaCircuit& circuit, const NoiseModel& model) {
  if (circuit.n != model.n) throw DataError("simulate_circuit: model/circuit qubit mismatch");
  DensityMatrix state(circuit.n);
  apply_ideal_layer(state, circuit.v_layer);
  apply_global_depolarizing(state, model.spam_depol_p);
  if (model.spam_channel) apply_channel_dense(state, *model.spam_channel);
  for (const auto& layer : circuit.layers) noisy_layer_apply(state, layer, model);
  return state;
}

Eigen::VectorXd measurement_distribution(const DensityMatrix& state, const Layer& w_layer,
                                         const NoiseModel& model) {
  DensityMatrix work(state.n, state.rho);
  apply_ideal_layer(work, w_layer);
  if (model.depol_1q_p < 1.0) {
    const auto kraus = local_depolarizing_kraus(model.depol_1q_p, 1);
    for (const auto& g : w_layer.gates) apply_kraus_1q(work, g.q0, kraus);
  }
  apply_decoherence(work, model, model.duration_1q);

  Eigen::VectorXd probs = work.rho.diagonal().real().cwiseMax(0.0);

  // Readout confusion, applied qubit by qubit to the probability vector.
  for (int q = 0; q < model.n; ++q) {
    const double e0 = model.readout_eps0.empty() ? 0.0 : model.readout_eps0[q];
    const double e1 = model.readout_eps1.empty() ? 0.0 : model.readout_eps1[q];
    if (e0 == 0.0 && e1 == 0.0) continue;
    const uint64_t bit = qubit_bit(state.n, q);
    for (uint64_t i = 0; i < state.dim(); ++i) {
      if (i & bit) continue;
      const double p0 = probs[i], p1 = probs[i | bit];
      probs[i] = (1.0 - e0) * p0 + e1 * p1;
      probs[i | bit] = e0 * p0 + (1.0 - e1) * p1;
    }
  }
  return probs;
}

void ShotRecord::validate() const {
  long total = 0;
  for (const auto& [index, count] : counts) {
    if (count < 0) throw DataError("shot record: negative count");
    if (index >= (1ull << n)) throw DataError("shot record: outcome index out of range");
    total += count;
  }
  if (total != n_meas) throw DataError("shot record: counts do not sum to n_meas");
}

ShotRecord sample_shots(const Eigen::VectorXd& dist, long n_meas, Rng& rng) {
  if (n_meas < 1) throw DataError("sample_shots: n_meas must be >= 1");
  std::vector<double> cdf(dist.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < dist.size(); ++i) {
    acc += std::max(dist[i], 0.0);
    cdf[i] = acc;
  }
  if (acc <= 0.0) throw DataError("sample_shots: distribution sums to zero");

  ShotRecord record;
  record.n_meas = n_meas;
  for (long s = 0; s < n_meas; ++s) {
    const double u = uniform01(rng) * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const uint64_t index = static_cast<uint64_t>(std::min<std::ptrdiff_t>(
        std::distance(cdf.begin(), it), static_cast<std::ptrdiff_t>(cdf.size() - 1)));
    ++record.counts[index];
  }
  return record;
}

nlohmann::json to_json(const ShotRecord& record) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [index, count] : record.counts) {
    counts[index_to_bitstring(index, record.n)] = count;
  }
  return {{"n", record.n},     {"m", record.m},           {"circuit_id", record.circuit_id},
          {"w_id", record.w_id}, {"n_meas", record.n_meas}, {"counts", counts}};
}

ShotRecord shot_record_from_json(const nlohmann::json& j) {
  ShotRecord r;
  r.n = j.at("n").get<int>();
  r.m = j.at("m").get<int>();
  r.circuit_id = j.at("circuit_id").get<int>();
  r.w_id = j.at("w_id").get<int>();
  r.n_meas = j.at("n_meas").get<long>();
  for (const auto& [bits, count] : j.at("counts").items()) {
    if (static_cast<int>(bits.size()) != r.n) throw DataError("shot record: bad bitstring length");
    r.counts[bitstring_to_index(bits)] = count.get<long>();
  }
  r.validate();
  return r;
}

}  // namespace cohest
