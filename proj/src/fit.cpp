#include "cohest/fit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cohest/errors.hpp"
#include "cohest/rng.hpp"

namespace cohest {

namespace {

struct Model {
  double a;
  double r;
};

double residual_norm(const std::vector<std::pair<int, double>>& pts, const Model& m, double c) {
  double acc = 0.0;
  for (const auto& [depth, y] : pts) {
    const double e = m.a * std::pow(m.r, depth) + c - y;
    acc += e * e;
  }
  return std::sqrt(acc);
}

Model initial_guess(const std::vector<std::pair<int, double>>& pts, double offset) {
  // Linear regression of log(max(y - offset, 1e-6)) on depth.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double npts = static_cast<double>(pts.size());
  for (const auto& [depth, y] : pts) {
    const double ly = std::log(std::max(y - offset, 1e-6));
    sx += depth;
    sy += ly;
    sxx += static_cast<double>(depth) * depth;
    sxy += depth * ly;
  }
  const double denom = npts * sxx - sx * sx;
  double slope = 0.0, intercept = std::log(0.5);
  if (std::abs(denom) > 1e-12) {
    slope = (npts * sxy - sx * sy) / denom;
    intercept = (sy - slope * sx) / npts;
  }
  Model m;
  m.a = std::clamp(std::exp(intercept), 1e-9, 1.0);
  m.r = std::clamp(std::exp(slope), 1e-9, 1.0);
  return m;
}

Model refine(const std::vector<std::pair<int, double>>& pts, Model m, double c) {
  // Levenberg-Marquardt on (a, r); the 2x2 normal equations are solved directly.
  double lambda = 1e-3;
  double best = residual_norm(pts, m, c);
  for (int iter = 0; iter < 200; ++iter) {
    double jtj00 = 0, jtj01 = 0, jtj11 = 0, jte0 = 0, jte1 = 0;
    for (const auto& [depth, y] : pts) {
      const double rm1 = (depth >= 1) ? std::pow(m.r, depth - 1) : 0.0;
      const double rm = (depth >= 1) ? rm1 * m.r : 1.0;
      const double e = m.a * rm + c - y;
      const double ja = rm;
      const double jr = m.a * depth * rm1;
      jtj00 += ja * ja;
      jtj01 += ja * jr;
      jtj11 += jr * jr;
      jte0 += ja * e;
      jte1 += jr * e;
    }
    const double d00 = jtj00 + lambda, d11 = jtj11 + lambda;
    const double det = d00 * d11 - jtj01 * jtj01;
    if (std::abs(det) < 1e-300) break;
    const double da = (-jte0 * d11 + jte1 * jtj01) / det;
    const double dr = (-jte1 * d00 + jte0 * jtj01) / det;
    Model trial;
    trial.a = std::clamp(m.a + da, 0.0, 1.5);
    trial.r = std::clamp(m.r + dr, 0.0, 1.5);
    const double trial_norm = residual_norm(pts, trial, c);
    if (trial_norm < best) {
      const double step = std::abs(trial.a - m.a) + std::abs(trial.r - m.r);
      m = trial;
      best = trial_norm;
      lambda = std::max(lambda * 0.3, 1e-12);
      if (step < 1e-15) break;
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }
  return m;
}

}  // namespace

DecayFit fit_decay(const std::vector<std::pair<int, double>>& points, int n, DecayKind kind) {
  std::set<int> depths;
  for (const auto& [m, y] : points) depths.insert(m);
  if (depths.size() < 3) throw DataError("fit_decay: needs at least 3 distinct depths");

  const double offset = std::ldexp(1.0, -n);
  bool any_signal = false;
  for (const auto& [m, y] : points) any_signal = any_signal || (y > offset + 1e-12);
  if (!any_signal) {
    throw SpamDominatedError("fit_decay: every value is at or below the 2^-n offset");
  }

  Model m = refine(points, initial_guess(points, offset), offset);
  DecayFit fit;
  fit.kind = kind;
  fit.amplitude = std::clamp(m.a, 0.0, 1.0);
  fit.rate = std::clamp(m.r, 0.0, 1.0);
  fit.offset = offset;
  fit.residual_norm = residual_norm(points, {fit.amplitude, fit.rate}, offset);
  fit.n_points = static_cast<int>(points.size());
  return fit;
}

DecayFit fit_decay_bootstrap(const std::vector<DepthEstimate>& estimates, int n, DecayKind kind,
                             int replicas, uint64_t seed) {
  std::vector<std::pair<int, double>> points;
  points.reserve(estimates.size());
  for (const auto& e : estimates) points.push_back({e.m, e.value});
  DecayFit fit = fit_decay(points, n, kind);

  if (replicas < 2) return fit;
  Rng rng = make_rng(seed, {0xB007u, static_cast<uint64_t>(kind)});
  std::vector<double> rates;
  rates.reserve(replicas);
  std::vector<std::pair<int, double>> replica = points;
  std::vector<double> resampled;
  for (int rep = 0; rep < replicas; ++rep) {
    for (size_t d = 0; d < estimates.size(); ++d) {
      const auto& groups = estimates[d].group_means;
      resampled.resize(groups.size());
      for (size_t g = 0; g < groups.size(); ++g) {
        resampled[g] = groups[uniform_below(rng, groups.size())];
      }
      replica[d].second = median_of_means(resampled);
    }
    try {
      rates.push_back(fit_decay(replica, n, kind).rate);
    } catch (const Error&) {
      // A degenerate resample carries no decay signal; skip it.
    }
  }
  if (rates.size() >= 2) {
    double mean = 0.0;
    for (double r : rates) mean += r;
    mean /= static_cast<double>(rates.size());
    double var = 0.0;
    for (double r : rates) var += (r - mean) * (r - mean);
    fit.bootstrap_se = std::sqrt(var / static_cast<double>(rates.size() - 1));
  }
  return fit;
}

}  // namespace cohest
