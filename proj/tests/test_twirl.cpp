#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cohest/errors.hpp"
#include "cohest/metrics.hpp"
#include "cohest/twirl.hpp"
#include "oracles.hpp"

using namespace cohest;

namespace {

// Direct 4^n-term twirl sum as a dense channel: 4^-n sum_P P E(P . P) P.
QuantumChannel twirl_sum_oracle(const QuantumChannel& ch) {
  const int n = ch.num_qubits();
  const uint64_t count = 1ull << (2 * n);
  std::vector<Eigen::MatrixXcd> kraus;
  const double scale = 1.0 / std::sqrt(static_cast<double>(count));
  for (uint64_t q = 0; q < count; ++q) {
    const Eigen::MatrixXcd p = PauliString::from_ptm_index(n, q).matrix();
    for (const auto& k : ch.kraus()) kraus.push_back(scale * (p * k * p));
  }
  return QuantumChannel(n, std::move(kraus));
}

Eigen::Matrix2cd rx(double theta) {
  Eigen::Matrix2cd x;
  x << 0, 1, 1, 0;
  const std::complex<double> i(0, 1);
  return std::cos(0.5 * theta) * Eigen::Matrix2cd::Identity() - i * std::sin(0.5 * theta) * x;
}

}  // namespace

TEST_CASE("exact twirl of a pauli channel is itself", "[twirl]") {
  const PauliChannel input(1, {0.7, 0.1, 0.05, 0.15});
  const PauliChannel twirled = pauli_twirl_exact(input.to_channel());
  for (int a = 0; a < 4; ++a) {
    CHECK(twirled.alphas()[a] == Catch::Approx(input.alphas()[a]).margin(1e-12));
  }
}

TEST_CASE("exact twirl error rates against the direct sum oracle", "[twirl]") {
  SECTION("R_X(pi/2)") {
    const QuantumChannel ch = QuantumChannel::from_unitary(rx(M_PI / 2));
    const PauliChannel twirled = pauli_twirl_exact(ch);
    CHECK(twirled.alphas()[0] == Catch::Approx(0.5).margin(1e-12));
    CHECK(twirled.alphas()[1] == Catch::Approx(0.5).margin(1e-12));
    CHECK(twirled.alphas()[2] == Catch::Approx(0.0).margin(1e-12));
    CHECK(twirled.alphas()[3] == Catch::Approx(0.0).margin(1e-12));
    CHECK(twirled.to_channel().ptm().isApprox(twirl_sum_oracle(ch).ptm(), 1e-10));
  }
  SECTION("depolarizing") {
    const double p = 0.85;
    const PauliChannel twirled = pauli_twirl_exact(depolarizing_channel(p, 1));
    CHECK(twirled.alphas()[0] == Catch::Approx((1 + 3 * p) / 4).margin(1e-12));
    for (int a = 1; a < 4; ++a) {
      CHECK(twirled.alphas()[a] == Catch::Approx((1 - p) / 4).margin(1e-12));
    }
  }
  SECTION("random channels, n <= 2") {
    Rng rng(21);
    for (int trial = 0; trial < 6; ++trial) {
      const int n = 1 + trial % 2;
      const QuantumChannel ch = oracle::random_cptp(n, 2, rng);
      const QuantumChannel twirled = pauli_twirl_exact(ch).to_channel();
      CHECK(twirled.ptm().isApprox(twirl_sum_oracle(ch).ptm(), 1e-9));
    }
  }
}

TEST_CASE("twirl preserves the PTM diagonal and fidelity", "[twirl]") {
  Rng rng(22);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 1 + trial % 2;
    const QuantumChannel ch = oracle::random_cptp(n, 3, rng);
    const PauliChannel twirled = pauli_twirl_exact(ch);

    const auto lambda = twirled.ptm_eigenvalues();
    const Eigen::MatrixXd& ptm = ch.ptm();
    for (uint64_t a = 0; a < lambda.size(); ++a) {
      CHECK(lambda[a] == Catch::Approx(ptm(a, a)).margin(1e-10));
    }
    CHECK(twirled.average_gate_fidelity() ==
          Catch::Approx(average_gate_fidelity(ch)).margin(1e-9));
    // For TP channels the Pauli-unitarity formula matches the PTM route.
    CHECK(twirled.unitarity() ==
          Catch::Approx(unitarity_ptm(twirled.to_channel())).margin(1e-9));
    const double sum_sq = [&] {
      double s = 0.0;
      for (double a : twirled.alphas()) s += a * a;
      return s;
    }();
    const double dim4 = std::pow(4.0, n);
    CHECK(twirled.unitarity() == Catch::Approx((dim4 * sum_sq - 1.0) / (dim4 - 1.0)).margin(1e-9));
  }
}

TEST_CASE("sampled twirl structure", "[twirl]") {
  const QuantumChannel coherent = QuantumChannel::from_unitary(rx(0.1));
  const Eigen::MatrixXd original = coherent.ptm();

  SECTION("full enumeration equals the exact twirl") {
    Rng rng(23);
    const QuantumChannel full = pauli_twirl_sampled(coherent, 4, rng);
    CHECK(full.ptm().isApprox(pauli_twirl_exact(coherent).to_channel().ptm(), 1e-10));
  }

  SECTION("N = 1 keeps off-diagonal magnitudes") {
    Rng rng(24);
    const QuantumChannel once = pauli_twirl_sampled(coherent, 1, rng);
    const Eigen::MatrixXd& ptm = once.ptm();
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        CHECK(std::abs(ptm(a, b)) == Catch::Approx(std::abs(original(a, b))).margin(1e-10));
      }
    }
  }

  SECTION("odd N scales off-diagonals by integer multiples of 1/N") {
    // All 3-subsets of the four single-qubit Paulis.
    const std::vector<std::vector<uint64_t>> subsets = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    for (const auto& subset : subsets) {
      const Eigen::MatrixXd ptm = pauli_twirl_with(coherent, subset).ptm();
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          if (a == b) {
            CHECK(ptm(a, b) == Catch::Approx(original(a, b)).margin(1e-10));
            continue;
          }
          if (std::abs(original(a, b)) < 1e-12) {
            CHECK(std::abs(ptm(a, b)) < 1e-10);
            continue;
          }
          const double ratio = std::abs(ptm(a, b)) / std::abs(original(a, b));
          const double scaled = ratio * 3.0;
          CHECK(std::abs(scaled - std::round(scaled)) < 1e-9);
        }
      }
    }
    // The sampled variant lands on one of the enumerated subsets.
    Rng rng(25);
    const Eigen::MatrixXd sampled = pauli_twirl_sampled(coherent, 3, rng).ptm();
    bool matched = false;
    for (const auto& subset : subsets) {
      matched = matched || sampled.isApprox(pauli_twirl_with(coherent, subset).ptm(), 1e-10);
    }
    CHECK(matched);
  }

  SECTION("sample count range") {
    Rng rng(26);
    CHECK_THROWS_AS(pauli_twirl_sampled(coherent, 0, rng), DataError);
    CHECK_THROWS_AS(pauli_twirl_sampled(coherent, 5, rng), DataError);
  }
}
