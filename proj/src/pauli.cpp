#include "cohest/pauli.hpp"

#include <bit>

#include "cohest/errors.hpp"

namespace cohest {

namespace {

uint64_t to_index_bits(uint32_t qubit_mask, int n) {
  uint64_t out = 0;
  for (int q = 0; q < n; ++q) {
    if (qubit_mask & (1u << q)) out |= 1ull << (n - 1 - q);
  }
  return out;
}

}  // namespace

PauliString::PauliString(int n, uint32_t x_mask, uint32_t z_mask) : n_(n), x_(x_mask), z_(z_mask) {
  if (n < 1 || n > 26) throw CapExceededError("PauliString: qubit count out of range");
  const uint32_t valid = (n >= 32) ? ~0u : ((1u << n) - 1);
  if ((x_ & ~valid) || (z_ & ~valid)) throw DataError("PauliString: mask exceeds qubit count");
  flip_ = to_index_bits(x_, n_);
  zphase_ = to_index_bits(z_, n_);
  y_count_ = std::popcount(x_ & z_);
}

PauliString PauliString::from_bits(std::string_view bits) {
  if (bits.empty() || bits.size() % 2 != 0) {
    throw DataError("PauliString: bit string length must be 2n");
  }
  const int n = static_cast<int>(bits.size() / 2);
  uint32_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    const char xc = bits[2 * q], zc = bits[2 * q + 1];
    if ((xc != '0' && xc != '1') || (zc != '0' && zc != '1')) {
      throw DataError("PauliString: bit string must contain only 0/1");
    }
    if (xc == '1') x |= 1u << q;
    if (zc == '1') z |= 1u << q;
  }
  return PauliString(n, x, z);
}

PauliString PauliString::from_ptm_index(int n, uint64_t index) {
  uint32_t x = 0, z = 0;
  for (int q = n - 1; q >= 0; --q) {
    const int digit = static_cast<int>(index & 3u);
    index >>= 2;
    // digits: 0 = I, 1 = X, 2 = Y, 3 = Z
    if (digit == 1 || digit == 2) x |= 1u << q;
    if (digit == 2 || digit == 3) z |= 1u << q;
  }
  if (index != 0) throw DataError("PauliString: PTM index exceeds 4^n");
  return PauliString(n, x, z);
}

PauliString PauliString::single(int n, int qubit, char axis) {
  if (qubit < 0 || qubit >= n) throw DataError("PauliString: qubit index out of range");
  uint32_t x = 0, z = 0;
  switch (axis) {
    case 'X': x = 1u << qubit; break;
    case 'Y': x = 1u << qubit; z = 1u << qubit; break;
    case 'Z': z = 1u << qubit; break;
    default: throw DataError("PauliString: axis must be X, Y or Z");
  }
  return PauliString(n, x, z);
}

std::string PauliString::bits() const {
  std::string out(2 * static_cast<size_t>(n_), '0');
  for (int q = 0; q < n_; ++q) {
    if (x_ & (1u << q)) out[2 * q] = '1';
    if (z_ & (1u << q)) out[2 * q + 1] = '1';
  }
  return out;
}

std::string PauliString::label() const {
  std::string out(static_cast<size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) {
    const bool x = x_ & (1u << q), z = z_ & (1u << q);
    if (x && z) out[q] = 'Y';
    else if (x) out[q] = 'X';
    else if (z) out[q] = 'Z';
  }
  return out;
}

uint64_t PauliString::ptm_index() const {
  uint64_t index = 0;
  for (int q = 0; q < n_; ++q) {
    const bool x = x_ & (1u << q), z = z_ & (1u << q);
    const uint64_t digit = (x && z) ? 2 : (x ? 1 : (z ? 3 : 0));
    index = index * 4 + digit;
  }
  return index;
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

std::complex<double> PauliString::phase(uint64_t index) const {
  // Per qubit: Z contributes (-1)^bit, Y contributes an extra factor i.
  static const std::complex<double> kQuarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int sign = std::popcount(index & zphase_) & 1;
  return kQuarter[(y_count_ + 2 * sign) & 3];
}

Eigen::MatrixXcd PauliString::matrix() const {
  if (n_ > kMaxDenseQubits) throw CapExceededError("pauli_matrix: dense cap is 12 qubits");
  const uint64_t dim = 1ull << n_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (uint64_t j = 0; j < dim; ++j) m(j ^ flip_, j) = phase(j);
  return m;
}

int symplectic_product(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DataError("symplectic_product: mismatched qubit counts");
  }
  const uint32_t cross = (a.x_mask() & b.z_mask()) ^ (a.z_mask() & b.x_mask());
  return std::popcount(cross) & 1;
}

Eigen::MatrixXcd pauli_matrix(const PauliString& a) { return a.matrix(); }

std::complex<double> pauli_trace(const PauliString& a, const Eigen::MatrixXcd& m) {
  const uint64_t dim = static_cast<uint64_t>(m.rows());
  const uint64_t flip = a.flip_mask();
  std::complex<double> sum = 0.0;
  for (uint64_t j = 0; j < dim; ++j) sum += std::conj(a.phase(j)) * m(j ^ flip, j);
  return sum;
}

}  // namespace cohest
