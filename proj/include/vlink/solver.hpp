#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "vlink/vertex_model.hpp"

namespace vlink {

/// r1 + r2 + r3; zero exactly on R-matrices.
inline double objective(const VertexModel& r) {
  auto res = residuals(r);
  return res.r1 + res.r2 + res.r3;
}

/// Analytic gradient of objective() with respect to all n^4 raw entries,
/// treating R_ijkl and R_klij as independent variables.
inline std::vector<double> objective_raw_gradient(const VertexModel& r) {
  const int n = r.n();
  std::vector<double> g(r.size(), 0.0);
  auto at = [&](int i, int j, int k, int l) -> double& { return g[r.flat(i, j, k, l)]; };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double d = i == j ? -1.0 : 0.0;
      for (int a = 0; a < n; ++a) d += r(i, a, a, j);
      for (int a = 0; a < n; ++a) at(i, a, a, j) += 2.0 * d;
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double d = i == k && j == l ? -1.0 : 0.0;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) d += r(i, j, a, b) * r(a, l, k, b);
          const double w = 2.0 * d;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
              at(i, j, a, b) += w * r(a, l, k, b);
              at(a, l, k, b) += w * r(i, j, a, b);
            }
        }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int m = 0; m < n; ++m)
            for (int h = 0; h < n; ++h) {
              double d = 0.0;
              for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                  for (int c = 0; c < n; ++c)
                    d += r(i, a, b, h) * r(j, k, c, a) * r(b, c, l, m) - r(i, j, b, c) * r(b, k, l, a) * r(c, a, m, h);
              if (d == 0.0) continue;
              const double w = 2.0 * d;
              for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                  for (int c = 0; c < n; ++c) {
                    at(i, a, b, h) += w * r(j, k, c, a) * r(b, c, l, m);
                    at(j, k, c, a) += w * r(i, a, b, h) * r(b, c, l, m);
                    at(b, c, l, m) += w * r(i, a, b, h) * r(j, k, c, a);
                    at(i, j, b, c) -= w * r(b, k, l, a) * r(c, a, m, h);
                    at(b, k, l, a) -= w * r(i, j, b, c) * r(c, a, m, h);
                    at(c, a, m, h) -= w * r(i, j, b, c) * r(b, k, l, a);
                  }
            }
  return g;
}

/// Gradient of objective() in the orthonormal coordinates of symmetric_basis(n).
inline std::vector<double> objective_gradient(const VertexModel& r) {
  return project_raw_gradient(r.n(), objective_raw_gradient(r));
}

struct SolverConfig {
  int n = 2;
  std::uint64_t seed = 1;
  int max_iterations = 200000;
  /// Stop once the objective is at or below this value.
  double threshold = 1e-12;
  /// Start coordinates are uniform on [−scale, scale].
  double init_scale = 1.0;
  double armijo = 1e-4;
  double initial_step = 1.0;
  double min_step = 1e-20;
  /// Record every log_every-th iteration (plus the first and last).
  int log_every = 100;
  /// Overrides the seeded random start.
  std::optional<VertexModel> start;
};

struct IterationRecord {
  int iteration;
  double objective;
  double step;
};

struct SolverResult {
  VertexModel model;
  double objective = 0.0;
  int accepted_steps = 0;
  bool converged = false;
  /// Set when the iteration budget ran out (or the line search stalled)
  /// before reaching the threshold; `model` is then the best iterate.
  bool max_iterations_reached = false;
  std::vector<IterationRecord> log;
};

/// Seeded random start in S2-invariant coordinates.
inline VertexModel random_model(int n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> coords(symmetric_dimension(n));
  for (auto& c : coords) c = dist(rng);
  return from_coordinates(n, coords);
}

/// Gradient descent with Armijo backtracking (halving) on the sum-of-squares
/// objective. The iterate lives in symmetric coordinates, so every accepted
/// model is exactly S2-invariant and the objective never increases.
inline SolverResult solve(const SolverConfig& config) {
  const int n = config.n;
  VertexModel model = config.start ? *config.start : random_model(n, config.seed, config.init_scale);
  std::vector<double> x = coordinates(model);
  double f = objective(model);
  double step = config.initial_step;

  SolverResult out;
  out.log.push_back({0, f, 0.0});
  int iter = 0;
  bool stalled = false;
  for (; iter < config.max_iterations && f > config.threshold; ++iter) {
    const auto g = objective_gradient(model);
    double gg = 0.0;
    for (double v : g) gg += v * v;
    if (gg == 0.0) break;

    step = std::min(config.initial_step, 2.0 * step);
    std::vector<double> trial(x.size());
    VertexModel candidate;
    double f_new = f;
    bool accepted = false;
    while (step >= config.min_step) {
      for (std::size_t t = 0; t < x.size(); ++t) trial[t] = x[t] - step * g[t];
      candidate = from_coordinates(n, trial);
      f_new = objective(candidate);
      if (f_new <= f - config.armijo * step * gg) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      stalled = true;
      break;
    }
    x = std::move(trial);
    model = std::move(candidate);
    f = f_new;
    ++out.accepted_steps;
    if ((iter + 1) % config.log_every == 0) out.log.push_back({iter + 1, f, step});
  }
  if (out.log.back().iteration != iter) out.log.push_back({iter, f, step});
  out.model = std::move(model);
  out.objective = f;
  out.converged = f <= config.threshold;
  out.max_iterations_reached = !out.converged && (stalled || iter >= config.max_iterations);
  return out;
}

}  // namespace vlink
