#include "cohest/clifford1.hpp"

#include <cmath>
#include <deque>

#include "cohest/errors.hpp"

namespace cohest {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd h;
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

Eigen::Matrix2cd phase_gate() {
  Eigen::Matrix2cd s;
  s << 1.0, 0.0, 0.0, std::complex<double>(0.0, 1.0);
  return s;
}

double wrap_angle(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a <= -kPi) a += 2.0 * kPi;
  return a;
}

// ZYZ Euler angles of a 2x2 unitary, global phase discarded.
void zyz_angles(const Eigen::Matrix2cd& u, double* alpha, double* beta, double* gamma) {
  Eigen::Matrix2cd su = u / std::sqrt(u.determinant());
  const std::complex<double> a = su(0, 0), c = su(1, 0);
  *beta = 2.0 * std::atan2(std::abs(c), std::abs(a));
  double sum, diff;
  if (std::abs(a) < 1e-12) {
    sum = 0.0;
    diff = 2.0 * std::arg(c);
  } else if (std::abs(c) < 1e-12) {
    sum = -2.0 * std::arg(a);
    diff = 0.0;
  } else {
    sum = -2.0 * std::arg(a);
    diff = 2.0 * std::arg(c);
  }
  *alpha = wrap_angle(0.5 * (sum + diff));
  *gamma = wrap_angle(0.5 * (sum - diff));
}

std::vector<std::pair<double, double>> decompose_rotations(const Eigen::Matrix2cd& u) {
  double alpha, beta, gamma;
  zyz_angles(u, &alpha, &beta, &gamma);
  std::vector<std::pair<double, double>> rot;
  const double lambda = wrap_angle(alpha + gamma);
  if (std::abs(lambda) > 1e-9) {
    // RZ(lambda) as two pi pulses with axis offset lambda/2.
    rot.push_back({kPi, 0.0});
    rot.push_back({kPi, wrap_angle(0.5 * lambda)});
  }
  if (std::abs(beta) > 1e-9) rot.push_back({beta, wrap_angle(0.5 * kPi + alpha)});
  return rot;
}

std::vector<Clifford1> build_table() {
  const Eigen::Matrix2cd gens[2] = {hadamard(), phase_gate()};
  const char gen_names[2] = {'H', 'S'};

  std::vector<Clifford1> table;
  table.push_back({Eigen::Matrix2cd::Identity(), "", {}});

  std::deque<size_t> frontier{0};
  while (!frontier.empty() && table.size() < kClifford1Count) {
    const size_t at = frontier.front();
    frontier.pop_front();
    for (int g = 0; g < 2; ++g) {
      const Eigen::Matrix2cd candidate = gens[g] * table[at].matrix;
      bool seen = false;
      for (const auto& entry : table) {
        if (equal_up_to_phase(candidate, entry.matrix)) {
          seen = true;
          break;
        }
      }
      if (seen) continue;
      Clifford1 entry;
      entry.matrix = candidate;
      entry.word = std::string(1, gen_names[g]) + table[at].word;
      entry.rotations = decompose_rotations(candidate);
      table.push_back(std::move(entry));
      frontier.push_back(table.size() - 1);
    }
  }
  if (table.size() != kClifford1Count) {
    throw DataError("clifford1_table: closure did not yield 24 elements");
  }
  return table;
}

}  // namespace

Eigen::Matrix2cd rotation_xy(double theta, double phi) {
  const std::complex<double> i(0.0, 1.0);
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  Eigen::Matrix2cd r;
  r << c, -i * std::exp(-i * phi) * s, -i * std::exp(i * phi) * s, c;
  return r;
}

bool equal_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(b(r, c)) < tol) return a.cwiseAbs().maxCoeff() < tol;
  const std::complex<double> phase = a(r, c) / b(r, c);
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  return (a - phase * b).cwiseAbs().maxCoeff() <= tol;
}

const std::vector<Clifford1>& clifford1_table() {
  static const std::vector<Clifford1> table = build_table();
  return table;
}

int clifford1_index_of(const Eigen::Matrix2cd& u, double tol) {
  const auto& table = clifford1_table();
  for (size_t i = 0; i < table.size(); ++i) {
    if (equal_up_to_phase(u, table[i].matrix, tol)) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace cohest
