#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "vlink/diagram.hpp"
#include "vlink/error.hpp"
#include "vlink/quantum_diagram.hpp"

namespace vlink {

/// How the eight slots of a deleted crossing pair (u, v) are glued together:
/// Identity joins (u,p) to (v,p); Shifted joins (u,p) to (v,p+2).
enum class Reconnection { Identity, Shifted };

namespace detail {

/// All ordered k-tuples of distinct elements of [0, count).
inline std::vector<std::vector<int>> ordered_tuples(int count, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<char> used(static_cast<std::size_t>(count), 0);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v < count; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      cur.push_back(v);
      self(self);
      cur.pop_back();
      used[v] = 0;
    }
  };
  rec(rec);
  return out;
}

}  // namespace detail

/// Deletes each crossing pair (left[i], right[i]) of `d` and glues their
/// slots according to `patterns[i]`. Paths through deleted crossings merge
/// into single edges; closed paths become free circles.
inline Diagram reconnect(const Diagram& d, std::span<const int> left, std::span<const int> right,
                         std::span<const Reconnection> patterns) {
  const int slots = d.slot_count();
  std::vector<int> glue(static_cast<std::size_t>(slots), -1);
  std::vector<char> removed_crossing(static_cast<std::size_t>(d.crossing_count()), 0);
  for (std::size_t i = 0; i < left.size(); ++i) {
    removed_crossing[left[i]] = removed_crossing[right[i]] = 1;
    const int shift = patterns[i] == Reconnection::Shifted ? 2 : 0;
    for (int p = 0; p < 4; ++p) {
      int a = 4 * left[i] + p;
      int b = 4 * right[i] + (p + shift) % 4;
      glue[a] = b;
      glue[b] = a;
    }
  }
  std::vector<int> new_label(static_cast<std::size_t>(d.crossing_count()), -1);
  int kept = 0;
  for (int v = 0; v < d.crossing_count(); ++v)
    if (!removed_crossing[v]) new_label[v] = kept++;

  std::vector<char> visited(static_cast<std::size_t>(slots), 0);
  std::vector<int> mate(static_cast<std::size_t>(4 * kept), -1);
  for (int s = 0; s < slots; ++s) {
    if (removed_crossing[s / 4]) continue;
    int t = d.mate(s);
    while (removed_crossing[t / 4]) {
      visited[t] = 1;
      int g = glue[t];
      visited[g] = 1;
      t = d.mate(g);
    }
    mate[4 * new_label[s / 4] + s % 4] = 4 * new_label[t / 4] + t % 4;
  }
  int circles = d.circles();
  for (int s = 0; s < slots; ++s) {
    if (!removed_crossing[s / 4] || visited[s]) continue;
    ++circles;
    int t = s;
    do {
      visited[t] = 1;
      int g = glue[t];
      visited[g] = 1;
      t = d.mate(g);
    } while (t != s);
  }
  return Diagram::from_mates(std::move(mate), circles);
}

/// The k-join G ⋈_k H: the sum over ordered k-tuples of distinct crossings
/// (u_1..u_k) of G and (v_1..v_k) of H, and over both reconnections of every
/// pair (u_i, v_i), each with weight 1/2. For k = 0 this is G ⊔ H.
inline QuantumDiagram k_join(const Diagram& g, const Diagram& h, int k) {
  if (k < 0 || k > g.crossing_count() || k > h.crossing_count())
    throw Error(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " with " + std::to_string(g.crossing_count()) +
                                          " and " + std::to_string(h.crossing_count()) + " crossings");
  const Diagram both = disjoint_union(g, h);
  const int offset = g.crossing_count();
  const auto left_tuples = detail::ordered_tuples(g.crossing_count(), k);
  auto right_tuples = detail::ordered_tuples(h.crossing_count(), k);
  for (auto& t : right_tuples)
    for (int& v : t) v += offset;

  mpz_class denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), 2, static_cast<unsigned long>(k));
  const Rational weight(mpz_class(1), denominator);

  // Multiplicities are collected first so each distinct term is canonicalized once.
  std::map<Diagram, long> counts;
  std::vector<Reconnection> patterns(static_cast<std::size_t>(k));
  for (const auto& left : left_tuples)
    for (const auto& right : right_tuples)
      for (unsigned mask = 0; mask < (1u << k); ++mask) {
        for (int i = 0; i < k; ++i) patterns[i] = (mask >> i) & 1u ? Reconnection::Shifted : Reconnection::Identity;
        ++counts[reconnect(both, left, right, patterns)];
      }
  QuantumDiagram out;
  for (const auto& [d, count] : counts) out.add(weight * count, d);
  return out;
}

/// Bilinear extension of k_join to quantum diagrams.
inline QuantumDiagram k_join_quantum(const QuantumDiagram& x, const QuantumDiagram& y, int k) {
  QuantumDiagram out;
  for (const auto& [dx, qx] : x.terms())
    for (const auto& [dy, qy] : y.terms()) {
      Rational scale = qx * qy;
      out += scale * k_join(dx, dy, k);
    }
  return out;
}

}  // namespace vlink
