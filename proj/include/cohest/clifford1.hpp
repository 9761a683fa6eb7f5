#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "cohest/rng.hpp"

namespace cohest {

// One entry of the canonical single-qubit Clifford enumeration. The table is the
// closure of the generators {H, S} explored breadth-first by word length with H
// before S as the tie-break; index 0 is the identity. `rotations` is a hardware-
// style decomposition into at most three rotations r(theta, phi) about the axis
// cos(phi) X + sin(phi) Y, listed in application order (matrix equals the reversed
// product, up to a global phase).
struct Clifford1 {
  Eigen::Matrix2cd matrix;
  std::string word;
  std::vector<std::pair<double, double>> rotations;
};

inline constexpr int kClifford1Count = 24;

const std::vector<Clifford1>& clifford1_table();

// Index of a unitary in the table, matching up to a global phase; -1 if absent.
int clifford1_index_of(const Eigen::Matrix2cd& u, double tol = 1e-9);

inline int sample_clifford1(Rng& rng) {
  return static_cast<int>(uniform_below(rng, kClifford1Count));
}

Eigen::Matrix2cd rotation_xy(double theta, double phi);

bool equal_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol = 1e-9);

}  // namespace cohest
