#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace cohest {

// Size caps for dense representations. Beyond these a CapExceededError is thrown.
inline constexpr int kMaxDenseQubits = 12;  // 2^n x 2^n operators
inline constexpr int kMaxPtmQubits = 6;     // 4^n x 4^n transfer matrices
inline constexpr int kMaxTwirlQubits = 4;   // 4^n-term twirl sums / Kraus sets

// Conventions used throughout the library:
//  - Qubit q occupies bit (n-1-q) of a computational-basis index, so the n-character
//    bit string of an index reads qubit 0 leftmost.
//  - An n-qubit Pauli is a 2n-bit string a1 a2 ... a_2n with the X exponent of qubit j
//    at position 2j-1 and the Z exponent at position 2j (1-based). The operator is
//    i^(sum_j x_j z_j) * prod_j X_j^x_j Z_j^z_j, which is Hermitian and unitary.
//  - Pauli basis index ("PTM index"): per-qubit digits {I:0, X:1, Y:2, Z:3} with
//    qubit 0 most significant. Index 0 is always the identity.
class PauliString {
public:
  PauliString(int n, uint32_t x_mask, uint32_t z_mask);

  static PauliString identity(int n) { return PauliString(n, 0, 0); }
  static PauliString from_bits(std::string_view bits);
  static PauliString from_ptm_index(int n, uint64_t index);
  static PauliString single(int n, int qubit, char axis);  // axis in {'X','Y','Z'}

  int num_qubits() const { return n_; }
  uint32_t x_mask() const { return x_; }  // bit q set iff qubit q has an X exponent
  uint32_t z_mask() const { return z_; }

  std::string bits() const;
  std::string label() const;  // e.g. "IXZ", character i is qubit i
  uint64_t ptm_index() const;
  bool is_identity() const { return x_ == 0 && z_ == 0; }
  int weight() const;  // number of non-identity tensor factors

  // Sparse action: P |j> = phase(j) |j ^ flip_mask()>.
  uint64_t flip_mask() const { return flip_; }
  std::complex<double> phase(uint64_t index) const;

  Eigen::MatrixXcd matrix() const;

  bool operator==(const PauliString& other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
  }

private:
  int n_;
  uint32_t x_ = 0;
  uint32_t z_ = 0;
  uint64_t flip_ = 0;    // x mask mapped to index-bit positions
  uint64_t zphase_ = 0;  // z mask mapped to index-bit positions
  int y_count_ = 0;
};

// <a,b> mod 2; zero iff P_a and P_b commute.
int symplectic_product(const PauliString& a, const PauliString& b);

// Dense Hermitian unitary for P_a (cap kMaxDenseQubits).
Eigen::MatrixXcd pauli_matrix(const PauliString& a);

// tr(P_a M) in O(2^n) using the sparse action.
std::complex<double> pauli_trace(const PauliString& a, const Eigen::MatrixXcd& m);

}  // namespace cohest
