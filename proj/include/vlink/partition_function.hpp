#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "vlink/diagram.hpp"
#include "vlink/error.hpp"
#include "vlink/quantum_diagram.hpp"
#include "vlink/vertex_model.hpp"

namespace vlink {

struct EvalLimits {
  /// Cap on n^{|E|} for the brute-force coloring sum.
  double max_colorings = 1e8;
  /// Cap on the entry count of any intermediate tensor during contraction.
  std::size_t max_tensor_entries = std::size_t{1} << 26;
};

namespace detail {

inline std::vector<int> slot_edge_ids(const Diagram& d) {
  std::vector<int> id(d.mates().size(), -1);
  int next = 0;
  for (int s = 0; s < d.slot_count(); ++s)
    if (id[s] < 0) id[s] = id[d.mate(s)] = next++;
  return id;
}

template <class Scalar>
Scalar power(const Scalar& base, int exponent) {
  Scalar out(1);
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

/// Dense tensor over edge labels; every leg has dimension n and the last leg
/// varies fastest.
template <class Scalar>
struct NetTensor {
  std::vector<int> legs;
  std::vector<Scalar> data;
};

inline std::size_t checked_volume(int n, std::size_t rank, std::size_t cap) {
  double vol = std::pow(static_cast<double>(n), static_cast<double>(rank));
  if (vol > static_cast<double>(cap))
    throw Error(ErrorCode::ContractionTooLarge,
                "intermediate tensor of rank " + std::to_string(rank) + " exceeds " + std::to_string(cap) + " entries");
  return static_cast<std::size_t>(vol);
}

/// Tensor of one crossing: legs are the crossing's edges in slot order, with
/// loop edges traced out.
template <class Scalar>
NetTensor<Scalar> crossing_tensor(int n, std::span<const int, 4> slot_edges, const Scalar* entries) {
  NetTensor<Scalar> t;
  for (int p = 0; p < 4; ++p) {
    int occurrences = 0;
    for (int q = 0; q < 4; ++q) occurrences += slot_edges[q] == slot_edges[p];
    bool first = true;
    for (int q = 0; q < p; ++q) first = first && slot_edges[q] != slot_edges[p];
    if (occurrences == 1 && first) t.legs.push_back(slot_edges[p]);
  }
  std::size_t vol = 1;
  for (std::size_t i = 0; i < t.legs.size(); ++i) vol *= static_cast<std::size_t>(n);
  t.data.assign(vol, Scalar(0));
  const std::size_t nn = static_cast<std::size_t>(n);
  for (std::size_t f = 0; f < nn * nn * nn * nn; ++f) {
    const std::size_t color[4] = {f / (nn * nn * nn), (f / (nn * nn)) % nn, (f / nn) % nn, f % nn};
    bool consistent = true;
    for (int p = 0; p < 4 && consistent; ++p)
      for (int q = p + 1; q < 4; ++q)
        if (slot_edges[p] == slot_edges[q] && color[p] != color[q]) consistent = false;
    if (!consistent) continue;
    std::size_t offset = 0;
    for (int leg : t.legs) {
      int p = 0;
      while (slot_edges[p] != leg) ++p;
      offset = offset * nn + color[p];
    }
    t.data[offset] += entries[f];
  }
  return t;
}

/// Contracts all legs shared by `a` and `b`.
template <class Scalar>
NetTensor<Scalar> contract_pair(const NetTensor<Scalar>& a, const NetTensor<Scalar>& b, int n, std::size_t cap) {
  std::vector<int> shared, free_a, free_b;
  for (int leg : a.legs) (std::find(b.legs.begin(), b.legs.end(), leg) != b.legs.end() ? shared : free_a).push_back(leg);
  for (int leg : b.legs)
    if (std::find(a.legs.begin(), a.legs.end(), leg) == a.legs.end()) free_b.push_back(leg);

  NetTensor<Scalar> out;
  out.legs = free_a;
  out.legs.insert(out.legs.end(), free_b.begin(), free_b.end());
  const std::size_t out_vol = checked_volume(n, out.legs.size(), cap);
  out.data.assign(out_vol, Scalar(0));

  auto strides_of = [n](const std::vector<int>& legs) {
    std::vector<std::size_t> s(legs.size());
    std::size_t st = 1;
    for (std::size_t i = legs.size(); i-- > 0;) {
      s[i] = st;
      st *= static_cast<std::size_t>(n);
    }
    return s;
  };
  const auto sa = strides_of(a.legs), sb = strides_of(b.legs), so = strides_of(out.legs);
  auto stride_in = [](const std::vector<int>& legs, const std::vector<std::size_t>& strides, int leg) -> std::size_t {
    for (std::size_t i = 0; i < legs.size(); ++i)
      if (legs[i] == leg) return strides[i];
    return 0;
  };

  // Odometer over (out legs ++ shared legs).
  std::vector<int> all = out.legs;
  all.insert(all.end(), shared.begin(), shared.end());
  const std::size_t rank = all.size();
  std::vector<std::size_t> da(rank), db(rank), dout(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    da[i] = stride_in(a.legs, sa, all[i]);
    db[i] = stride_in(b.legs, sb, all[i]);
    dout[i] = stride_in(out.legs, so, all[i]);
  }
  std::vector<int> digit(rank, 0);
  std::size_t ia = 0, ib = 0, io = 0;
  while (true) {
    out.data[io] += a.data[ia] * b.data[ib];
    std::size_t pos = rank;
    while (pos-- > 0) {
      if (++digit[pos] < n) {
        ia += da[pos];
        ib += db[pos];
        io += dout[pos];
        break;
      }
      digit[pos] = 0;
      ia -= da[pos] * static_cast<std::size_t>(n - 1);
      ib -= db[pos] * static_cast<std::size_t>(n - 1);
      io -= dout[pos] * static_cast<std::size_t>(n - 1);
    }
    if (pos == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

/// Contracts the network with `crossing_entries[v]` (n^4 dense entries) at
/// crossing v. Pairs are merged greedily by smallest resulting rank, ties
/// broken by lowest tensor positions.
template <class Scalar>
Scalar contract_network(const Diagram& d, int n, std::span<const Scalar* const> crossing_entries,
                        const EvalLimits& limits) {
  const auto edge_id = slot_edge_ids(d);
  std::vector<NetTensor<Scalar>> tensors;
  for (int v = 0; v < d.crossing_count(); ++v) {
    std::span<const int, 4> slots(edge_id.data() + 4 * v, 4);
    tensors.push_back(crossing_tensor<Scalar>(n, slots, crossing_entries[v]));
  }
  Scalar product(1);
  while (true) {
    // Fold finished scalars.
    for (std::size_t t = 0; t < tensors.size();) {
      if (tensors[t].legs.empty()) {
        product *= tensors[t].data[0];
        tensors.erase(tensors.begin() + static_cast<std::ptrdiff_t>(t));
      } else {
        ++t;
      }
    }
    if (tensors.empty()) break;
    std::size_t best_a = 0, best_b = 0;
    std::size_t best_rank = std::numeric_limits<std::size_t>::max();
    for (std::size_t x = 0; x < tensors.size(); ++x)
      for (std::size_t y = x + 1; y < tensors.size(); ++y) {
        std::size_t shared = 0;
        for (int leg : tensors[x].legs)
          shared += std::count(tensors[y].legs.begin(), tensors[y].legs.end(), leg);
        if (shared == 0) continue;
        std::size_t rank = tensors[x].legs.size() + tensors[y].legs.size() - 2 * shared;
        if (rank < best_rank) {
          best_rank = rank;
          best_a = x;
          best_b = y;
        }
      }
    auto merged = contract_pair(tensors[best_a], tensors[best_b], n, limits.max_tensor_entries);
    tensors.erase(tensors.begin() + static_cast<std::ptrdiff_t>(best_b));
    tensors[best_a] = std::move(merged);
  }
  return product * power(Scalar(n), d.circles());
}

}  // namespace detail

/// f_R(G) as the explicit sum over all n^{|E|} edge colorings.
template <class Scalar>
Scalar eval_bruteforce(const BasicVertexModel<Scalar>& r, const Diagram& d, const EvalLimits& limits = {}) {
  const int n = r.n();
  const auto edge_id = detail::slot_edge_ids(d);
  const int edges = d.slot_count() / 2;
  if (std::pow(static_cast<double>(n), edges) > limits.max_colorings)
    throw Error(ErrorCode::SizeLimit, std::to_string(n) + "^" + std::to_string(edges) + " colorings exceed the cap");
  std::vector<int> color(static_cast<std::size_t>(edges), 0);
  Scalar total(0);
  Scalar term;
  while (true) {
    term = Scalar(1);
    for (int v = 0; v < d.crossing_count(); ++v) {
      term *= r(color[edge_id[4 * v]], color[edge_id[4 * v + 1]], color[edge_id[4 * v + 2]], color[edge_id[4 * v + 3]]);
    }
    total += term;
    int pos = edges;
    while (pos-- > 0) {
      if (++color[pos] < n) break;
      color[pos] = 0;
    }
    if (pos < 0) break;
  }
  return total * detail::power(Scalar(n), d.circles());
}

/// f_R(G) by tensor-network contraction.
template <class Scalar>
Scalar eval(const BasicVertexModel<Scalar>& r, const Diagram& d, const EvalLimits& limits = {}) {
  std::vector<const Scalar*> per_crossing(static_cast<std::size_t>(d.crossing_count()), r.entries().data());
  return detail::contract_network<Scalar>(d, r.n(), per_crossing, limits);
}

/// f_R applied linearly to a quantum diagram.
template <class Scalar>
Scalar eval(const BasicVertexModel<Scalar>& r, const QuantumDiagram& x, const EvalLimits& limits = {}) {
  Scalar total(0);
  for (const auto& [d, q] : x.terms()) {
    if constexpr (std::is_same_v<Scalar, Rational>) {
      total += q * eval(r, d, limits);
    } else {
      total += q.get_d() * eval(r, d, limits);
    }
  }
  return total;
}

/// Derivative of f_R(G) in the orthonormal basis symmetric_basis(n). Each
/// component sums, over crossings v, the network value with v's tensor
/// replaced by the basis element.
inline std::vector<double> gradient(const VertexModel& r, const Diagram& d, const EvalLimits& limits = {}) {
  const int n = r.n();
  const auto basis = symmetric_basis(n);
  std::vector<double> out(basis.size(), 0.0);
  if (d.crossing_count() == 0) return out;
  std::vector<double> element(r.size(), 0.0);
  std::vector<const double*> per_crossing(static_cast<std::size_t>(d.crossing_count()), r.entries().data());
  for (std::size_t t = 0; t < basis.size(); ++t) {
    const auto& e = basis[t];
    const double w = e.a == e.b ? 1.0 : 1.0 / std::sqrt(2.0);
    element[e.a] = element[e.b] = w;
    double s = 0.0;
    for (int v = 0; v < d.crossing_count(); ++v) {
      per_crossing[v] = element.data();
      s += detail::contract_network<double>(d, n, per_crossing, limits);
      per_crossing[v] = r.entries().data();
    }
    out[t] = s;
    element[e.a] = element[e.b] = 0.0;
  }
  return out;
}

}  // namespace vlink
