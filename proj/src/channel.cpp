#include "cohest/channel.hpp"

#include <cmath>

#include "cohest/errors.hpp"

namespace cohest {

namespace {

constexpr double kRealityTol = 1e-9;

void check_square(const Eigen::MatrixXcd& m, uint64_t dim, const char* where) {
  if (m.rows() != static_cast<Eigen::Index>(dim) || m.cols() != static_cast<Eigen::Index>(dim)) {
    throw DataError(std::string(where) + ": operator dimension mismatch");
  }
}

}  // namespace

QuantumChannel::QuantumChannel(int n, std::vector<Eigen::MatrixXcd> kraus)
    : n_(n), kraus_(std::move(kraus)) {
  if (n < 1 || n > kMaxDenseQubits) {
    throw CapExceededError("QuantumChannel: dense Kraus cap is 12 qubits");
  }
  if (kraus_.empty()) throw DataError("QuantumChannel: needs at least one Kraus operator");
  for (const auto& k : kraus_) check_square(k, dim(), "QuantumChannel");
}

QuantumChannel::QuantumChannel(const QuantumChannel& other) : n_(other.n_) {
  std::lock_guard<std::mutex> lock(other.ptm_mutex_);
  kraus_ = other.kraus_;
  ptm_cache_ = other.ptm_cache_;
}

QuantumChannel::QuantumChannel(QuantumChannel&& other) noexcept : n_(other.n_) {
  std::lock_guard<std::mutex> lock(other.ptm_mutex_);
  kraus_ = std::move(other.kraus_);
  ptm_cache_ = std::move(other.ptm_cache_);
}

QuantumChannel& QuantumChannel::operator=(const QuantumChannel& other) {
  if (this != &other) {
    std::scoped_lock lock(ptm_mutex_, other.ptm_mutex_);
    n_ = other.n_;
    kraus_ = other.kraus_;
    ptm_cache_ = other.ptm_cache_;
  }
  return *this;
}

QuantumChannel& QuantumChannel::operator=(QuantumChannel&& other) noexcept {
  if (this != &other) {
    std::scoped_lock lock(ptm_mutex_, other.ptm_mutex_);
    n_ = other.n_;
    kraus_ = std::move(other.kraus_);
    ptm_cache_ = std::move(other.ptm_cache_);
  }
  return *this;
}

QuantumChannel QuantumChannel::identity(int n) {
  return QuantumChannel(n, {Eigen::MatrixXcd::Identity(1ll << n, 1ll << n)});
}

QuantumChannel QuantumChannel::from_unitary(const Eigen::MatrixXcd& u) {
  const uint64_t dim = static_cast<uint64_t>(u.rows());
  int n = 0;
  while ((1ull << n) < dim) ++n;
  if ((1ull << n) != dim || u.cols() != u.rows()) {
    throw DataError("from_unitary: operator must be square with power-of-two dimension");
  }
  return QuantumChannel(n, {u});
}

Eigen::MatrixXcd QuantumChannel::apply(const Eigen::MatrixXcd& rho) const {
  check_square(rho, dim(), "apply");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  for (const auto& k : kraus_) out.noalias() += k * rho * k.adjoint();
  return out;
}

Eigen::MatrixXcd QuantumChannel::apply_to_identity() const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
  for (const auto& k : kraus_) out.noalias() += k * k.adjoint();
  return out;
}

QuantumChannel QuantumChannel::adjoint() const {
  std::vector<Eigen::MatrixXcd> daggered;
  daggered.reserve(kraus_.size());
  for (const auto& k : kraus_) daggered.push_back(k.adjoint());
  return QuantumChannel(n_, std::move(daggered));
}

QuantumChannel QuantumChannel::compose(const QuantumChannel& inner) const {
  if (inner.n_ != n_) throw DataError("compose: qubit count mismatch");
  std::vector<Eigen::MatrixXcd> product;
  product.reserve(kraus_.size() * inner.kraus_.size());
  for (const auto& a : kraus_) {
    for (const auto& b : inner.kraus_) product.push_back(a * b);
  }
  return QuantumChannel(n_, std::move(product));
}

const Eigen::MatrixXd& QuantumChannel::ptm() const {
  std::lock_guard<std::mutex> lock(ptm_mutex_);
  if (ptm_cache_) return *ptm_cache_;
  if (n_ > kMaxPtmQubits) throw CapExceededError("ptm: cap is 6 qubits");

  const uint64_t d = dim();
  const uint64_t d2 = d * d;
  auto out = std::make_shared<Eigen::MatrixXd>(d2, d2);
  Eigen::MatrixXcd image(d, d), kp(d, d);
  for (uint64_t b = 0; b < d2; ++b) {
    const PauliString pb = PauliString::from_ptm_index(n_, b);
    const uint64_t flip = pb.flip_mask();
    image.setZero();
    for (const auto& k : kraus_) {
      // Column c of K * P_b is phase(c) times column (c ^ flip) of K.
      for (uint64_t c = 0; c < d; ++c) kp.col(c) = pb.phase(c) * k.col(c ^ flip);
      image.noalias() += kp * k.adjoint();
    }
    for (uint64_t a = 0; a < d2; ++a) {
      const std::complex<double> t = pauli_trace(PauliString::from_ptm_index(n_, a), image);
      if (std::abs(t.imag()) > kRealityTol * d) {
        throw DataError("ptm: non-negligible imaginary entry; channel is not Hermiticity-preserving");
      }
      (*out)(a, b) = t.real() / static_cast<double>(d);
    }
  }
  ptm_cache_ = std::move(out);
  return *ptm_cache_;
}

Eigen::MatrixXcd QuantumChannel::choi() const {
  if (n_ > kMaxPtmQubits) throw CapExceededError("choi: cap is 6 qubits");
  const uint64_t d2 = dim() * dim();
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(d2, d2);
  for (const auto& k : kraus_) {
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(k.data(), d2);
    j.noalias() += v * v.adjoint();
  }
  return j;
}

bool QuantumChannel::is_trace_preserving(double tol) const {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim(), dim());
  for (const auto& k : kraus_) s.noalias() += k.adjoint() * k;
  s -= Eigen::MatrixXcd::Identity(dim(), dim());
  return s.cwiseAbs().maxCoeff() <= tol;
}

bool QuantumChannel::is_unital(double tol) const {
  Eigen::MatrixXcd s = apply_to_identity();
  s -= Eigen::MatrixXcd::Identity(dim(), dim());
  return s.cwiseAbs().maxCoeff() <= tol;
}

void QuantumChannel::validate(double tol) const {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim(), dim());
  for (const auto& k : kraus_) s.noalias() += k.adjoint() * k;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
  if (es.eigenvalues().maxCoeff() > 1.0 + tol) {
    throw DataError("validate: channel increases trace beyond tolerance");
  }
  if (n_ <= kMaxPtmQubits) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ec(choi());
    if (ec.eigenvalues().minCoeff() < -tol) {
      throw DataError("validate: Choi operator has a negative eigenvalue beyond tolerance");
    }
  }
}

QuantumChannel depolarizing_channel(double p, int n) {
  if (n > kMaxTwirlQubits) {
    throw CapExceededError("depolarizing_channel: Kraus materialization cap is 4 qubits");
  }
  const double dim4 = std::pow(4.0, n);
  if (p < -1.0 / (dim4 - 1.0) - 1e-12 || p > 1.0 + 1e-12) {
    throw DataError("depolarizing_channel: p outside the CP range");
  }
  const uint64_t count = 1ull << (2 * n);
  std::vector<double> alphas(count, (1.0 - p) / dim4);
  alphas[0] = (1.0 + (dim4 - 1.0) * p) / dim4;
  return PauliChannel(n, std::move(alphas)).to_channel();
}

PauliChannel::PauliChannel(int n, std::vector<double> alphas) : n_(n), alphas_(std::move(alphas)) {
  if (n < 1 || n > kMaxPtmQubits) throw CapExceededError("PauliChannel: cap is 6 qubits");
  if (alphas_.size() != (1ull << (2 * n))) {
    throw DataError("PauliChannel: needs 4^n error probabilities");
  }
  double sum = 0.0;
  for (double& a : alphas_) {
    if (a < -1e-12) throw DataError("PauliChannel: negative error probability");
    if (a < 0) a = 0.0;
    sum += a;
  }
  if (sum > 1.0 + 1e-9) throw DataError("PauliChannel: error probabilities sum beyond 1");
}

std::vector<double> PauliChannel::ptm_eigenvalues() const {
  const uint64_t count = alphas_.size();
  std::vector<double> lambda(count, 0.0);
  std::vector<PauliString> paulis;
  paulis.reserve(count);
  for (uint64_t a = 0; a < count; ++a) paulis.push_back(PauliString::from_ptm_index(n_, a));
  for (uint64_t a = 0; a < count; ++a) {
    double acc = 0.0;
    for (uint64_t b = 0; b < count; ++b) {
      const double sign = symplectic_product(paulis[a], paulis[b]) ? -1.0 : 1.0;
      acc += sign * alphas_[b];
    }
    lambda[a] = acc;
  }
  return lambda;
}

double PauliChannel::alpha_sum() const {
  double s = 0.0;
  for (double a : alphas_) s += a;
  return s;
}

bool PauliChannel::is_trace_preserving(double tol) const {
  return std::abs(alpha_sum() - 1.0) <= tol;
}

double PauliChannel::average_gate_fidelity() const {
  const double d = std::pow(2.0, n_);
  return (d * alphas_[0] + 1.0) / (d + 1.0);
}

double PauliChannel::unitarity() const {
  const auto lambda = ptm_eigenvalues();
  double acc = 0.0;
  for (size_t a = 1; a < lambda.size(); ++a) acc += lambda[a] * lambda[a];
  return acc / (std::pow(4.0, n_) - 1.0);
}

QuantumChannel PauliChannel::to_channel() const {
  if (n_ > kMaxTwirlQubits) {
    throw CapExceededError("PauliChannel::to_channel: Kraus materialization cap is 4 qubits");
  }
  std::vector<Eigen::MatrixXcd> kraus;
  for (uint64_t a = 0; a < alphas_.size(); ++a) {
    if (alphas_[a] <= 0.0) continue;
    kraus.push_back(std::sqrt(alphas_[a]) * PauliString::from_ptm_index(n_, a).matrix());
  }
  if (kraus.empty()) {
    kraus.push_back(Eigen::MatrixXcd::Zero(1ll << n_, 1ll << n_));
  }
  return QuantumChannel(n_, std::move(kraus));
}

Eigen::MatrixXd ptm_of_unitary(const Eigen::MatrixXcd& u) {
  return QuantumChannel::from_unitary(u).ptm();
}

Eigen::MatrixXd embed_ptm(const Eigen::MatrixXd& local, const std::vector<int>& qubits, int n) {
  if (n > kMaxPtmQubits) throw CapExceededError("embed_ptm: cap is 6 qubits");
  const int k = static_cast<int>(qubits.size());
  const uint64_t local_dim = 1ull << (2 * k);
  if (local.rows() != static_cast<Eigen::Index>(local_dim) || local.cols() != local.rows()) {
    throw DataError("embed_ptm: local PTM dimension mismatch");
  }
  const uint64_t global_dim = 1ull << (2 * n);
  const uint64_t rest_count = 1ull << (2 * (n - k));

  std::vector<int> rest;
  for (int q = 0; q < n; ++q) {
    if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) rest.push_back(q);
  }

  auto digit_shift = [n](int q) { return 2 * (n - 1 - q); };
  auto compose_index = [&](uint64_t local_idx, uint64_t rest_idx) {
    uint64_t g = 0;
    for (int i = k - 1; i >= 0; --i) {
      g |= (local_idx & 3ull) << digit_shift(qubits[i]);
      local_idx >>= 2;
    }
    for (int i = static_cast<int>(rest.size()) - 1; i >= 0; --i) {
      g |= (rest_idx & 3ull) << digit_shift(rest[i]);
      rest_idx >>= 2;
    }
    return g;
  };

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(global_dim, global_dim);
  for (uint64_t la = 0; la < local_dim; ++la) {
    for (uint64_t lb = 0; lb < local_dim; ++lb) {
      const double v = local(la, lb);
      if (v == 0.0) continue;
      for (uint64_t r = 0; r < rest_count; ++r) {
        out(compose_index(la, r), compose_index(lb, r)) = v;
      }
    }
  }
  return out;
}

double ptm_trace_preservation_defect(const Eigen::MatrixXd& ptm) {
  double defect = std::abs(ptm(0, 0) - 1.0);
  for (Eigen::Index b = 1; b < ptm.cols(); ++b) defect = std::max(defect, std::abs(ptm(0, b)));
  return defect;
}

}  // namespace cohest
