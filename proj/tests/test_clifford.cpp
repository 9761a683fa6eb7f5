#include <catch2/catch_amalgamated.hpp>

#include "cohest/clifford1.hpp"
#include "cohest/metrics.hpp"
#include "oracles.hpp"

using namespace cohest;

TEST_CASE("clifford table basics", "[clifford]") {
  const auto& table = clifford1_table();
  REQUIRE(table.size() == 24);
  CHECK(table[0].matrix.isApprox(Eigen::Matrix2cd::Identity()));
  CHECK(table[0].word.empty());

  for (size_t i = 0; i < table.size(); ++i) {
    for (size_t j = i + 1; j < table.size(); ++j) {
      CHECK_FALSE(equal_up_to_phase(table[i].matrix, table[j].matrix));
    }
  }
}

TEST_CASE("clifford table is closed under multiplication", "[clifford]") {
  const auto& table = clifford1_table();
  for (const auto& a : table) {
    for (const auto& b : table) {
      CHECK(clifford1_index_of(a.matrix * b.matrix) >= 0);
    }
  }
}

TEST_CASE("clifford group is a single-qubit 2-design", "[clifford]") {
  const auto& table = clifford1_table();
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const QuantumChannel x = oracle::random_cptp(1, 1 + trial % 3, rng);
    const Eigen::MatrixXd& xptm = x.ptm();
    Eigen::MatrixXd twirl = Eigen::MatrixXd::Zero(4, 4);
    for (const auto& c : table) {
      const Eigen::MatrixXd r = ptm_of_unitary(c.matrix);
      twirl += r.transpose() * xptm * r;
    }
    twirl /= 24.0;
    CHECK(twirl.isApprox(oracle::haar_twirl_ptm_1q(xptm), 1e-9));
  }
}

TEST_CASE("native rotation decomposition reproduces each clifford", "[clifford]") {
  for (const auto& entry : clifford1_table()) {
    REQUIRE(entry.rotations.size() <= 3);
    Eigen::Matrix2cd product = Eigen::Matrix2cd::Identity();
    for (const auto& [theta, phi] : entry.rotations) {
      product = rotation_xy(theta, phi) * product;  // application order
    }
    CHECK(equal_up_to_phase(product, entry.matrix, 1e-9));
  }
}
