#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cohest/estimator.hpp"

namespace cohest {

enum class DecayKind { kPurity, kFidelity };

// Least-squares fit of value ~= amplitude * rate^m + 2^-n with the offset fixed.
// The rate is the average layer unitarity (purity) or polarization (fidelity).
struct DecayFit {
  DecayKind kind = DecayKind::kPurity;
  double amplitude = 0.0;
  double rate = 0.0;
  double offset = 0.0;
  double residual_norm = 0.0;
  double bootstrap_se = 0.0;  // standard error of the rate; 0 when not estimated
  int n_points = 0;
};

// Requires >= 3 distinct depths. Throws SpamDominatedError when every value sits
// at or below the offset (no decay signal to fit). Parameters are clamped to [0,1].
DecayFit fit_decay(const std::vector<std::pair<int, double>>& points, int n, DecayKind kind);

// Fit of the per-depth MoMs values plus a bootstrap standard error of the rate:
// each replica resamples every depth's group means with replacement, takes the
// median, refits. Deterministic given the seed.
DecayFit fit_decay_bootstrap(const std::vector<DepthEstimate>& estimates, int n, DecayKind kind,
                             int replicas = 200, uint64_t seed = 1);

}  // namespace cohest
