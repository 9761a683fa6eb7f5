#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cohest/errors.hpp"
#include "cohest/fit.hpp"
#include "cohest/rng.hpp"

using namespace cohest;

namespace {

std::vector<std::pair<int, double>> synthetic(double a, double r, double offset,
                                              const std::vector<int>& depths) {
  std::vector<std::pair<int, double>> pts;
  for (int m : depths) pts.push_back({m, a * std::pow(r, m) + offset});
  return pts;
}

}  // namespace

TEST_CASE("noiseless decay inversion", "[fit]") {
  const DecayFit f =
      fit_decay(synthetic(0.8, 0.81, 0.25, {1, 2, 3, 4, 5, 6, 7, 8}), 2, DecayKind::kPurity);
  CHECK(f.amplitude == Catch::Approx(0.8).margin(1e-9));
  CHECK(f.rate == Catch::Approx(0.81).margin(1e-9));
  CHECK(f.offset == Catch::Approx(0.25));
  CHECK(f.residual_norm < 1e-9);

  const DecayFit g =
      fit_decay(synthetic(0.75, 0.9, 0.25, {1, 2, 4, 8, 12}), 2, DecayKind::kFidelity);
  CHECK(g.rate == Catch::Approx(0.9).margin(1e-9));
  CHECK(g.amplitude == Catch::Approx(0.75).margin(1e-9));
}

TEST_CASE("fit handles noisy inputs and clamps", "[fit]") {
  Rng rng(101);
  std::vector<std::pair<int, double>> pts;
  for (int m : {1, 2, 4, 6, 8, 10}) {
    pts.push_back({m, 0.7 * std::pow(0.92, m) + 0.5 + 2e-3 * (uniform01(rng) - 0.5)});
  }
  const DecayFit f = fit_decay(pts, 1, DecayKind::kPurity);
  CHECK(f.rate == Catch::Approx(0.92).margin(0.02));
  CHECK(f.rate <= 1.0);
  CHECK(f.amplitude <= 1.0);
}

TEST_CASE("fit error paths", "[fit]") {
  CHECK_THROWS_AS(fit_decay(synthetic(0.8, 0.9, 0.5, {1, 2}), 1, DecayKind::kPurity), DataError);
  // Duplicated depths do not count as distinct.
  CHECK_THROWS_AS(fit_decay({{1, 0.9}, {1, 0.9}, {2, 0.8}}, 1, DecayKind::kPurity), DataError);
  // Values at the offset carry no signal.
  CHECK_THROWS_AS(fit_decay({{1, 0.5}, {2, 0.5}, {3, 0.49}}, 1, DecayKind::kPurity),
                  SpamDominatedError);
}

TEST_CASE("bootstrap standard error", "[fit]") {
  std::vector<DepthEstimate> estimates;
  Rng rng(102);
  for (int m : {1, 2, 4, 6, 8}) {
    DepthEstimate e;
    e.m = m;
    const double truth = 0.8 * std::pow(0.9, m) + 0.5;
    for (int g = 0; g < 6; ++g) e.group_means.push_back(truth + 0.01 * (uniform01(rng) - 0.5));
    e.value = median_of_means(e.group_means);
    e.n_tables = 6;
    estimates.push_back(e);
  }
  const DecayFit a = fit_decay_bootstrap(estimates, 1, DecayKind::kPurity, 200, 42);
  const DecayFit b = fit_decay_bootstrap(estimates, 1, DecayKind::kPurity, 200, 42);
  CHECK(a.bootstrap_se > 0.0);
  CHECK(a.bootstrap_se < 0.05);
  CHECK(a.bootstrap_se == Catch::Approx(b.bootstrap_se));  // deterministic given the seed
  CHECK(a.rate == Catch::Approx(0.9).margin(0.03));
}
