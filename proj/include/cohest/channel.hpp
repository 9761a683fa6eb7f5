#pragma once

#include <Eigen/Dense>

#include <memory>
#include <mutex>
#include <vector>

#include "cohest/pauli.hpp"
#include "cohest/rng.hpp"

namespace cohest {

// A Markovian noise map held in Kraus form. The Pauli transfer matrix (PTM) is
// derived lazily and cached; all other state is immutable after construction, so
// instances can be shared freely across threads.
class QuantumChannel {
public:
  QuantumChannel(int n, std::vector<Eigen::MatrixXcd> kraus);
  QuantumChannel(const QuantumChannel& other);
  QuantumChannel(QuantumChannel&& other) noexcept;
  QuantumChannel& operator=(const QuantumChannel& other);
  QuantumChannel& operator=(QuantumChannel&& other) noexcept;

  static QuantumChannel identity(int n);
  static QuantumChannel from_unitary(const Eigen::MatrixXcd& u);

  int num_qubits() const { return n_; }
  uint64_t dim() const { return 1ull << n_; }
  const std::vector<Eigen::MatrixXcd>& kraus() const { return kraus_; }

  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;
  Eigen::MatrixXcd apply_to_identity() const;  // E(1), not normalized

  QuantumChannel adjoint() const;                             // Kraus operators daggered
  QuantumChannel compose(const QuantumChannel& inner) const;  // this after inner

  // E_ab = 2^-n tr[P_a E(P_b)]; real within numerical tolerance (cap kMaxPtmQubits).
  const Eigen::MatrixXd& ptm() const;

  Eigen::MatrixXcd choi() const;  // sum_mu vec(K_mu) vec(K_mu)^dag, column-major vec

  bool is_trace_preserving(double tol = 1e-9) const;
  bool is_unital(double tol = 1e-9) const;
  // Complete positivity is structural in Kraus form; this checks the trace-nonincreasing
  // invariant sum K^dag K <= 1 and Choi positivity of the stored operators.
  void validate(double tol = 1e-9) const;

private:
  int n_;
  std::vector<Eigen::MatrixXcd> kraus_;
  mutable std::mutex ptm_mutex_;
  mutable std::shared_ptr<const Eigen::MatrixXd> ptm_cache_;
};

// Global depolarizing channel E_p(rho) = p rho + (1-p) tr(rho) 1/2^n in Kraus form.
// CP requires -1/(4^n-1) <= p <= 1. Kraus materialization is capped at kMaxTwirlQubits;
// larger systems use the direct mixing rule in the simulator or PTM-level composition.
QuantumChannel depolarizing_channel(double p, int n);

// Channel with Pauli error probabilities alpha_a, indexed by PTM index.
// PTM is diagonal with eigenvalues lambda_a = sum_b (-1)^<a,b> alpha_b.
class PauliChannel {
public:
  PauliChannel(int n, std::vector<double> alphas);

  int num_qubits() const { return n_; }
  const std::vector<double>& alphas() const { return alphas_; }
  double alpha(const PauliString& p) const { return alphas_[p.ptm_index()]; }

  std::vector<double> ptm_eigenvalues() const;
  double alpha_sum() const;
  bool is_trace_preserving(double tol = 1e-9) const;

  double average_gate_fidelity() const;  // (2^n alpha_0 + 1)/(2^n + 1)
  double unitarity() const;              // sum_{a!=0} lambda_a^2 / (4^n - 1)

  QuantumChannel to_channel() const;  // Kraus {sqrt(alpha_a) P_a}, cap kMaxTwirlQubits

private:
  int n_;
  std::vector<double> alphas_;
};

// PTM-level helpers. PTM composition is matrix product in application order:
// ptm(B after A) = ptm(B) * ptm(A).
Eigen::MatrixXd ptm_of_unitary(const Eigen::MatrixXcd& u);
// Embeds a local PTM acting on `qubits` (in local qubit order) into n qubits.
Eigen::MatrixXd embed_ptm(const Eigen::MatrixXd& local, const std::vector<int>& qubits, int n);

double ptm_trace_preservation_defect(const Eigen::MatrixXd& ptm);  // max |first row - e_0|

}  // namespace cohest
