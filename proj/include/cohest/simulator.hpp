#pragma once

#include <Eigen/Dense>

#include <map>

#include "json.hpp"

#include "cohest/circuit.hpp"
#include "cohest/noise.hpp"
#include "cohest/rng.hpp"

namespace cohest {

struct DensityMatrix {
  int n = 0;
  Eigen::MatrixXcd rho;

  explicit DensityMatrix(int n_qubits);  // |0...0><0...0|
  DensityMatrix(int n_qubits, Eigen::MatrixXcd matrix);

  uint64_t dim() const { return 1ull << n; }
  double trace_real() const { return rho.trace().real(); }
  double purity() const;
  void validate(double tol = 1e-9) const;  // unit trace and positivity
};

// Local conjugations rho -> M rho M^dag; qubit 0 is the most significant index
// bit and M need not be unitary (Kraus branches use the same path).
void apply_matrix_1q(DensityMatrix& state, int qubit, const Eigen::Matrix2cd& u);
void apply_matrix_2q(DensityMatrix& state, int qa, int qb, const Eigen::Matrix4cd& u);
void apply_cz(DensityMatrix& state, int qa, int qb);
void apply_kraus_1q(DensityMatrix& state, int qubit, const std::vector<Eigen::MatrixXcd>& kraus);
void apply_kraus_2q(DensityMatrix& state, int qa, int qb,
                    const std::vector<Eigen::MatrixXcd>& kraus);
void apply_global_depolarizing(DensityMatrix& state, double p);
void apply_pauli_channel(DensityMatrix& state, const PauliChannel& channel);
void apply_channel_dense(DensityMatrix& state, const QuantumChannel& channel);

// Ideal layer unitary followed by the layer's noise per the NoiseModel contract.
// Trace is preserved within tolerance for TP models.
void noisy_layer_apply(DensityMatrix& state, const Layer& layer, const NoiseModel& model);

// Transfer matrix of the noise a composite layer applies (everything after the
// ideal unitary). Cap kMaxPtmQubits; used by the twirled path and the oracle.
Eigen::MatrixXd layer_noise_ptm(const Layer& layer, const NoiseModel& model);

// rho_m for one circuit realization: V (with SPAM noise) then the m composite
// layers with their noise. W is applied separately at measurement.
DensityMatrix simulate_circuit(const OmegaCircuit& circuit, const NoiseModel& model);

// Applies the noisy W layer, projects onto the computational basis and passes the
// probability vector through the per-qubit readout confusion matrices.
Eigen::VectorXd measurement_distribution(const DensityMatrix& state, const Layer& w_layer,
                                         const NoiseModel& model);

struct ShotRecord {
  int n = 0;
  int m = 0;
  int circuit_id = 0;
  int w_id = 0;
  long n_meas = 0;
  std::map<uint64_t, long> counts;  // keyed by basis index

  void validate() const;  // counts sum to n_meas
};

ShotRecord sample_shots(const Eigen::VectorXd& dist, long n_meas, Rng& rng);

nlohmann::json to_json(const ShotRecord& record);
ShotRecord shot_record_from_json(const nlohmann::json& j);

}  // namespace cohest
