#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing here
// calls canonical_form or the contraction code, so the oracles stay
// independent of the paths they check.

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "vlink/vlink.hpp"

namespace vlink::testing {

inline Diagram curl_12_34() { return Diagram::from_edges(1, 0, {{{1, 1}, {1, 2}}, {{1, 3}, {1, 4}}}); }
inline Diagram curl_13_24() { return Diagram::from_edges(1, 0, {{{1, 1}, {1, 3}}, {{1, 2}, {1, 4}}}); }
inline Diagram curl_14_23() { return Diagram::from_edges(1, 0, {{{1, 1}, {1, 4}}, {{1, 2}, {1, 3}}}); }

/// Uniform random perfect matching on the 4c slots.
inline Diagram random_diagram(std::mt19937_64& rng, int crossings, int circles = 0) {
  std::vector<int> slots(static_cast<std::size_t>(4 * crossings));
  std::iota(slots.begin(), slots.end(), 0);
  std::shuffle(slots.begin(), slots.end(), rng);
  std::vector<int> mate(slots.size());
  for (std::size_t i = 0; i < slots.size(); i += 2) {
    mate[slots[i]] = slots[i + 1];
    mate[slots[i + 1]] = slots[i];
  }
  return Diagram::from_mates(std::move(mate), circles);
}

/// Applies crossing relabeling `perm` (old -> new) and rotation-by-2 bits
/// `rot_mask` (indexed by old crossing) to the mate array.
inline std::vector<int> transformed_mates(const Diagram& d, const std::vector<int>& perm, unsigned rot_mask) {
  auto map = [&](int s) {
    int v = s / 4, p = s % 4;
    int r = (rot_mask >> v) & 1u ? 2 : 0;
    return 4 * perm[v] + (p + r) % 4;
  };
  std::vector<int> out(d.mates().size());
  for (int s = 0; s < d.slot_count(); ++s) out[map(s)] = map(d.mate(s));
  return out;
}

/// Exhaustive isomorphism test over all |V|!·2^|V| candidate maps.
inline bool brute_force_isomorphic(const Diagram& a, const Diagram& b) {
  if (a.crossing_count() != b.crossing_count() || a.circles() != b.circles()) return false;
  const int c = a.crossing_count();
  std::vector<int> perm(static_cast<std::size_t>(c));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (unsigned mask = 0; mask < (1u << c); ++mask)
      if (transformed_mates(a, perm, mask) == b.mates()) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// True lexicographic minimum of the mate array over the whole orbit.
inline std::vector<int> brute_force_orbit_min(const Diagram& d) {
  const int c = d.crossing_count();
  std::vector<int> perm(static_cast<std::size_t>(c));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = d.mates();
  do {
    for (unsigned mask = 0; mask < (1u << c); ++mask) best = std::min(best, transformed_mates(d, perm, mask));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline VertexModel random_symmetric(int n, std::mt19937_64& rng, double scale = 1.0) {
  return random_model(n, rng(), scale);
}

inline Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ();
}

/// Central finite differences of `f` in the symmetric coordinates of `r`.
inline std::vector<double> finite_difference_gradient(const VertexModel& r,
                                                      const std::function<double(const VertexModel&)>& f,
                                                      double step = 1e-5) {
  auto x = coordinates(r);
  std::vector<double> out(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    auto plus = x, minus = x;
    plus[t] += step;
    minus[t] -= step;
    out[t] = (f(from_coordinates(r.n(), plus)) - f(from_coordinates(r.n(), minus))) / (2 * step);
  }
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace vlink::testing
