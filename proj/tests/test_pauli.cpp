#include <catch2/catch_amalgamated.hpp>

#include "cohest/errors.hpp"
#include "cohest/pauli.hpp"
#include "oracles.hpp"

using namespace cohest;

TEST_CASE("symplectic product matches (anti)commutation", "[pauli]") {
  CHECK(symplectic_product(PauliString::from_bits("10"), PauliString::from_bits("01")) == 1);
  CHECK(symplectic_product(PauliString::from_bits("11"), PauliString::identity(1)) == 0);
  CHECK(symplectic_product(PauliString::from_bits("1001"), PauliString::from_bits("0110")) == 0);

  // Commutator oracle: PQ -/+ QP vanishes according to <a,b> for every 2-qubit pair.
  for (uint64_t a = 0; a < 16; ++a) {
    for (uint64_t b = 0; b < 16; ++b) {
      const PauliString pa = PauliString::from_ptm_index(2, a);
      const PauliString pb = PauliString::from_ptm_index(2, b);
      const Eigen::MatrixXcd ma = pa.matrix(), mb = pb.matrix();
      const int sign = symplectic_product(pa, pb);
      const Eigen::MatrixXcd defect = ma * mb - (sign ? -1.0 : 1.0) * mb * ma;
      CHECK(defect.cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  CHECK_THROWS_AS(symplectic_product(PauliString::identity(1), PauliString::identity(2)),
                  DataError);
}

TEST_CASE("pauli matrices follow the Hermitian phase convention", "[pauli]") {
  CHECK(PauliString::from_bits("00").matrix().isApprox(Eigen::MatrixXcd::Identity(2, 2)));

  Eigen::Matrix2cd x, z;
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  CHECK(PauliString::from_bits("10").matrix().isApprox(x));
  CHECK(PauliString::from_bits("01").matrix().isApprox(z));

  // "11" is i * X * Z, Hermitian and traceless.
  const Eigen::MatrixXcd y = PauliString::from_bits("11").matrix();
  CHECK((y - std::complex<double>(0, 1) * x * z).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((y - y.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(y.trace()) < 1e-12);

  for (uint64_t idx = 0; idx < 64; ++idx) {
    const Eigen::MatrixXcd p = PauliString::from_ptm_index(3, idx).matrix();
    CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((p * p - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("pauli basis is trace-orthogonal", "[pauli]") {
  for (uint64_t a = 0; a < 16; ++a) {
    for (uint64_t b = 0; b < 16; ++b) {
      const auto pa = PauliString::from_ptm_index(2, a);
      const auto pb = PauliString::from_ptm_index(2, b);
      const std::complex<double> t = (pa.matrix() * pb.matrix()).trace();
      if (a == b) {
        CHECK(std::abs(t - 4.0) < 1e-12);
      } else {
        CHECK(std::abs(t) < 1e-12);
      }
    }
  }
}

TEST_CASE("pauli representations round-trip", "[pauli]") {
  for (uint64_t idx = 0; idx < 64; ++idx) {
    const PauliString p = PauliString::from_ptm_index(3, idx);
    CHECK(p.ptm_index() == idx);
    CHECK(PauliString::from_bits(p.bits()) == p);
  }
  CHECK(PauliString::from_ptm_index(1, 0).label() == "I");
  CHECK(PauliString::from_ptm_index(1, 1).label() == "X");
  CHECK(PauliString::from_ptm_index(1, 2).label() == "Y");
  CHECK(PauliString::from_ptm_index(1, 3).label() == "Z");
  CHECK(PauliString::from_bits("1001").label() == "XZ");
  CHECK(PauliString::from_bits("1001").weight() == 2);

  CHECK_THROWS_AS(PauliString::from_bits("101"), DataError);
  CHECK_THROWS_AS(PauliString::from_bits("1x"), DataError);
}

TEST_CASE("sparse pauli trace agrees with dense", "[pauli]") {
  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::MatrixXcd m = oracle::random_density(2, rng);
    for (uint64_t idx = 0; idx < 16; ++idx) {
      const PauliString p = PauliString::from_ptm_index(2, idx);
      const std::complex<double> dense = (p.matrix() * m).trace();
      CHECK(std::abs(pauli_trace(p, m) - dense) < 1e-12);
    }
  }
}
