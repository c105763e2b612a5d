#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vlink/diagram.hpp"
#include "vlink/error.hpp"
#include "vlink/join.hpp"
#include "vlink/linalg.hpp"
#include "vlink/quantum_diagram.hpp"
#include "vlink/rational.hpp"

// Perfect matchings, the matrices A(x) = (x^{c(M,N)}) and their
// Q-symmetrization, Hanlon–Wales eigenvalues and tableau eigenvectors.
// Ground elements are 0-based internally; printed pairs are 1-based.

namespace vlink {

/// perm[i] is the image of i.
using Permutation = std::vector<int>;

inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i])];
  return out;
}

inline Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return out;
}

inline Permutation identity_permutation(int size) {
  Permutation p(static_cast<std::size_t>(size));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline int sign(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

/// A perfect matching on a ground set of 2m elements.
class Matching {
 public:
  Matching() = default;

  /// Pairs are 1-based.
  static Matching from_pairs(int ground, const std::vector<std::pair<int, int>>& pairs) {
    if (ground < 0 || ground % 2 != 0) throw Error(ErrorCode::GroundMismatch, "ground size must be even");
    std::vector<int> partner(static_cast<std::size_t>(ground), -1);
    for (auto [a, b] : pairs) {
      if (a < 1 || a > ground || b < 1 || b > ground || a == b)
        throw Error(ErrorCode::IndexOutOfRange, "pair {" + std::to_string(a) + "," + std::to_string(b) + "}");
      if (partner[a - 1] >= 0 || partner[b - 1] >= 0)
        throw Error(ErrorCode::DuplicateSlot, "element covered twice in {" + std::to_string(a) + "," + std::to_string(b) + "}");
      partner[a - 1] = b - 1;
      partner[b - 1] = a - 1;
    }
    for (int i = 0; i < ground; ++i)
      if (partner[i] < 0) throw Error(ErrorCode::MissingSlot, "element " + std::to_string(i + 1) + " unmatched");
    return Matching(std::move(partner));
  }

  static Matching from_partners(std::vector<int> partner) { return Matching(std::move(partner)); }

  /// F = {{i, half + i}}.
  static Matching paired(int half) {
    std::vector<int> partner(static_cast<std::size_t>(2 * half));
    for (int i = 0; i < half; ++i) {
      partner[i] = half + i;
      partner[half + i] = i;
    }
    return Matching(std::move(partner));
  }

  int ground() const { return static_cast<int>(partner_.size()); }
  int partner(int i) const { return partner_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& partners() const { return partner_; }

  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < ground(); ++i)
      if (i < partner_[i]) out.emplace_back(i + 1, partner_[i] + 1);
    return out;
  }

  /// π·M = {π(e) | e ∈ M}.
  Matching permuted(const Permutation& pi) const {
    std::vector<int> out(partner_.size());
    for (std::size_t i = 0; i < partner_.size(); ++i)
      out[static_cast<std::size_t>(pi[i])] = pi[static_cast<std::size_t>(partner_[i])];
    return Matching(std::move(out));
  }

  friend auto operator<=>(const Matching&, const Matching&) = default;
  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  explicit Matching(std::vector<int> partner) : partner_(std::move(partner)) {}
  std::vector<int> partner_;
};

/// All (2m−1)!! matchings in lexicographic order of their sorted pair lists.
inline std::vector<Matching> enumerate_matchings(int ground) {
  if (ground < 0 || ground % 2 != 0) throw Error(ErrorCode::GroundMismatch, "ground size must be even");
  if (ground > 12) throw Error(ErrorCode::SizeLimit, "ground size " + std::to_string(ground) + " exceeds 12");
  std::vector<Matching> out;
  std::vector<int> partner(static_cast<std::size_t>(ground), -1);
  auto rec = [&](auto&& self) -> void {
    int first = -1;
    for (int i = 0; i < ground; ++i)
      if (partner[i] < 0) {
        first = i;
        break;
      }
    if (first < 0) {
      out.push_back(Matching::from_partners(partner));
      return;
    }
    for (int j = first + 1; j < ground; ++j) {
      if (partner[j] >= 0) continue;
      partner[first] = j;
      partner[j] = first;
      self(self);
      partner[first] = partner[j] = -1;
    }
  };
  rec(rec);
  return out;
}

/// c(M, N): connected components of the multigraph (ground, M ∪ N).
inline int components(const Matching& m1, const Matching& m2) {
  if (m1.ground() != m2.ground())
    throw Error(ErrorCode::GroundMismatch, std::to_string(m1.ground()) + " vs " + std::to_string(m2.ground()));
  std::vector<char> seen(static_cast<std::size_t>(m1.ground()), 0);
  int count = 0;
  for (int s = 0; s < m1.ground(); ++s) {
    if (seen[s]) continue;
    ++count;
    // M ∪ N is a disjoint union of alternating cycles.
    int t = s;
    do {
      seen[t] = 1;
      int u = m1.partner(t);
      seen[u] = 1;
      t = m2.partner(u);
    } while (t != s);
  }
  return count;
}

/// Matchings of one ground set with index lookup.
class MatchingSpace {
 public:
  explicit MatchingSpace(int ground) : ground_(ground), matchings_(enumerate_matchings(ground)) {
    for (std::size_t i = 0; i < matchings_.size(); ++i) index_.emplace(matchings_[i].partners(), i);
  }

  int ground() const { return ground_; }
  std::size_t size() const { return matchings_.size(); }
  const Matching& operator[](std::size_t i) const { return matchings_[i]; }
  const std::vector<Matching>& matchings() const { return matchings_; }
  std::size_t index_of(const Matching& m) const { return index_.at(m.partners()); }

 private:
  int ground_;
  std::vector<Matching> matchings_;
  std::map<std::vector<int>, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Even partitions and μ_λ

/// A partition with even parts in weakly decreasing order.
class EvenPartition {
 public:
  EvenPartition() = default;
  explicit EvenPartition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw Error(ErrorCode::InvalidPartition, "empty partition");
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0 || parts_[i] % 2 != 0)
        throw Error(ErrorCode::InvalidPartition, "part " + std::to_string(parts_[i]) + " is not a positive even number");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw Error(ErrorCode::InvalidPartition, "parts are not weakly decreasing");
    }
  }

  const std::vector<int>& parts() const { return parts_; }
  int total() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + ")";
  }

  friend auto operator<=>(const EvenPartition&, const EvenPartition&) = default;
  friend bool operator==(const EvenPartition&, const EvenPartition&) = default;

 private:
  std::vector<int> parts_;
};

/// Every even partition of `total`, in reverse lexicographic order.
inline std::vector<EvenPartition> even_partitions(int total) {
  std::vector<EvenPartition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 2; p -= 2) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  if (total > 0 && total % 2 == 0) rec(rec, total, total);
  return out;
}

/// μ_λ(x) = Π_{a=1}^{m} Π_{b=1}^{t_a/2} (x − a + 2b − 1).
template <class Scalar>
Scalar mu(const EvenPartition& lambda, const Scalar& x) {
  Scalar out(1);
  for (std::size_t a0 = 0; a0 < lambda.parts().size(); ++a0) {
    const int a = static_cast<int>(a0) + 1;
    for (int b = 1; b <= lambda.parts()[a0] / 2; ++b) out *= x + Scalar(2 * b - 1 - a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// A(x), Q and A^Q(x)

template <class Scalar>
SquareMatrix<Scalar> a_matrix(const MatchingSpace& space, const Scalar& x) {
  if (space.ground() > 10) throw Error(ErrorCode::SizeLimit, "dense A(x) is capped at ground size 10");
  std::vector<Scalar> powers(static_cast<std::size_t>(space.ground() / 2 + 1));
  powers[0] = Scalar(1);
  for (std::size_t i = 1; i < powers.size(); ++i) powers[i] = powers[i - 1] * x;
  SquareMatrix<Scalar> a(space.size());
  for (std::size_t i = 0; i < space.size(); ++i)
    for (std::size_t j = i; j < space.size(); ++j)
      a(i, j) = a(j, i) = powers[static_cast<std::size_t>(components(space[i], space[j]))];
  return a;
}

template <class Scalar>
SquareMatrix<Scalar> a_matrix(const Scalar& x, int ground) {
  return a_matrix(MatchingSpace(ground), x);
}

/// Q = BD on [8k]: B_j swaps the opposite slots of crossing j, and D permutes
/// whole blocks {4j−3..4j}. |Q| = 2^{2k}(2k)!.
inline std::vector<Permutation> q_group(int k) {
  if (k < 0 || k > 2) throw Error(ErrorCode::SizeLimit, "q_group is capped at k = 2");
  const int blocks = 2 * k, ground = 8 * k;
  std::vector<Permutation> bs;
  for (unsigned mask = 0; mask < (1u << blocks); ++mask) {
    Permutation b = identity_permutation(ground);
    for (int j = 0; j < blocks; ++j)
      if ((mask >> j) & 1u) {
        std::swap(b[4 * j], b[4 * j + 2]);
        std::swap(b[4 * j + 1], b[4 * j + 3]);
      }
    bs.push_back(std::move(b));
  }
  std::vector<Permutation> ds;
  std::vector<int> pi(static_cast<std::size_t>(blocks));
  std::iota(pi.begin(), pi.end(), 0);
  do {
    Permutation d(static_cast<std::size_t>(ground));
    for (int j = 0; j < blocks; ++j)
      for (int p = 0; p < 4; ++p) d[4 * j + p] = 4 * pi[j] + p;
    ds.push_back(std::move(d));
  } while (std::next_permutation(pi.begin(), pi.end()));
  std::set<Permutation> q;
  for (const auto& b : bs)
    for (const auto& d : ds) q.insert(compose(b, d));
  return {q.begin(), q.end()};
}

/// (A^Q(x))_{M,N} = Σ_{s∈Q} x^{c(M, s·N)} on the matchings of [8k], k = 1.
template <class Scalar>
SquareMatrix<Scalar> aq_matrix(const MatchingSpace& space, const Scalar& x) {
  if (space.ground() != 8) throw Error(ErrorCode::SizeLimit, "A^Q(x) is only assembled for k = 1 (ground 8)");
  const auto q = q_group(1);
  std::vector<Scalar> powers(5);
  powers[0] = Scalar(1);
  for (std::size_t i = 1; i < powers.size(); ++i) powers[i] = powers[i - 1] * x;
  SquareMatrix<Scalar> out(space.size());
  for (std::size_t i = 0; i < space.size(); ++i)
    for (std::size_t j = 0; j < space.size(); ++j) {
      Scalar s(0);
      for (const auto& g : q) s += powers[static_cast<std::size_t>(components(space[i], space[j].permuted(g)))];
      out(i, j) = s;
    }
  return out;
}

template <class Scalar>
SquareMatrix<Scalar> aq_matrix(const Scalar& x, int k) {
  if (k != 1) throw Error(ErrorCode::SizeLimit, "A^Q(x) is only assembled for k = 1");
  return aq_matrix(MatchingSpace(8), x);
}

// ---------------------------------------------------------------------------
// Paired tableaux and eigenvectors

/// A Young tableau whose rows read i1, ī1, i2, ī2, ... with ī = half + i.
/// Rows store the unbarred entries (1-based); together they use each of
/// 1..half exactly once.
class Tableau {
 public:
  Tableau(int half, std::vector<std::vector<int>> rows) : half_(half), rows_(std::move(rows)) {
    std::vector<int> count(static_cast<std::size_t>(half) + 1, 0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].empty()) throw Error(ErrorCode::InvalidTableau, "empty row");
      if (r > 0 && rows_[r].size() > rows_[r - 1].size())
        throw Error(ErrorCode::InvalidTableau, "row lengths must be weakly decreasing");
      for (int i : rows_[r]) {
        if (i < 1 || i > half) throw Error(ErrorCode::InvalidTableau, "entry " + std::to_string(i) + " outside [1,half]");
        if (++count[static_cast<std::size_t>(i)] > 1) throw Error(ErrorCode::InvalidTableau, "entry " + std::to_string(i) + " repeated");
      }
    }
    for (int i = 1; i <= half; ++i)
      if (count[static_cast<std::size_t>(i)] == 0) throw Error(ErrorCode::InvalidTableau, "entry " + std::to_string(i) + " missing");
  }

  /// Rows filled with 1..half in order along the shape.
  static Tableau sequential(const EvenPartition& shape) {
    std::vector<std::vector<int>> rows;
    int next = 1;
    for (int t : shape.parts()) {
      rows.emplace_back();
      for (int b = 0; b < t / 2; ++b) rows.back().push_back(next++);
    }
    return Tableau(shape.total() / 2, std::move(rows));
  }

  int half() const { return half_; }
  int ground() const { return 2 * half_; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }

  EvenPartition shape() const {
    std::vector<int> parts;
    for (const auto& r : rows_) parts.push_back(2 * static_cast<int>(r.size()));
    return EvenPartition(parts);
  }

  /// Row r as 0-based ground elements i1, ī1, i2, ī2, ...
  std::vector<int> row_cells(std::size_t r) const {
    std::vector<int> out;
    for (int i : rows_[r]) {
      out.push_back(i - 1);
      out.push_back(half_ + i - 1);
    }
    return out;
  }

  std::vector<std::vector<int>> column_cells() const {
    std::vector<std::vector<int>> cols;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      auto cells = row_cells(r);
      if (cols.size() < cells.size()) cols.resize(cells.size());
      for (std::size_t c = 0; c < cells.size(); ++c) cols[c].push_back(cells[c]);
    }
    return cols;
  }

 private:
  int half_;
  std::vector<std::vector<int>> rows_;
};

namespace detail {

inline double factorial(std::size_t n) {
  double f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

/// Calls `visit(perm)` for every permutation of the ground set that permutes
/// each block within itself (the product group of the blocks' symmetric groups).
template <class Visit>
void for_each_block_permutation(int ground, const std::vector<std::vector<int>>& blocks, Visit&& visit) {
  Permutation perm = identity_permutation(ground);
  std::vector<std::vector<int>> images = blocks;
  for (auto& b : images) std::sort(b.begin(), b.end());
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == blocks.size()) {
      visit(static_cast<const Permutation&>(perm));
      return;
    }
    auto& img = images[depth];
    std::sort(img.begin(), img.end());
    do {
      for (std::size_t i = 0; i < img.size(); ++i) perm[static_cast<std::size_t>(blocks[depth][i])] = img[i];
      self(self, depth + 1);
    } while (std::next_permutation(img.begin(), img.end()));
    for (int e : blocks[depth]) perm[static_cast<std::size_t>(e)] = e;
  };
  rec(rec, 0);
}

inline double group_order(const std::vector<std::vector<int>>& blocks) {
  double out = 1;
  for (const auto& b : blocks) out *= factorial(b.size());
  return out;
}

inline std::vector<std::vector<int>> row_blocks(const Tableau& t) {
  std::vector<std::vector<int>> out;
  for (std::size_t r = 0; r < t.rows().size(); ++r) out.push_back(t.row_cells(r));
  return out;
}

}  // namespace detail

/// v = Σ_{c∈C, r∈R} sgn(c) c r·F, an integer vector over space's matchings.
inline std::vector<long long> tableau_eigenvector(const Tableau& t, const MatchingSpace& space) {
  if (space.ground() != t.ground()) throw Error(ErrorCode::GroundMismatch, "tableau and matching ground sizes differ");
  const auto rows = detail::row_blocks(t);
  const auto cols = t.column_cells();
  if (detail::group_order(rows) * detail::group_order(cols) > 1e7)
    throw Error(ErrorCode::SizeLimit, "|C|·|R| exceeds 1e7 terms");
  const Matching f = Matching::paired(t.half());

  std::vector<long long> row_sum(space.size(), 0);
  detail::for_each_block_permutation(t.ground(), rows, [&](const Permutation& r) { ++row_sum[space.index_of(f.permuted(r))]; });

  std::vector<long long> v(space.size(), 0);
  detail::for_each_block_permutation(t.ground(), cols, [&](const Permutation& c) {
    const int sg = sign(c);
    for (std::size_t i = 0; i < space.size(); ++i)
      if (row_sum[i] != 0) v[space.index_of(space[i].permuted(c))] += sg * row_sum[i];
  });
  return v;
}

/// u = Σ_{q∈Q} q·v on the matchings of [8k].
inline std::vector<long long> symmetrized_u(const std::vector<long long>& v, const MatchingSpace& space, int k) {
  if (space.ground() != 8 * k) throw Error(ErrorCode::GroundMismatch, "space is not the matchings of [8k]");
  std::vector<long long> u(space.size(), 0);
  for (const auto& q : q_group(k))
    for (std::size_t i = 0; i < space.size(); ++i)
      if (v[i] != 0) u[space.index_of(space[i].permuted(q))] += v[i];
  return u;
}

/// u_F = Σ over (q, c, r) ∈ Q×C×R with qcr·F = F of sgn(c), by direct enumeration.
inline long long u_f_coefficient(const Tableau& t, int k) {
  if (t.ground() != 8 * k) throw Error(ErrorCode::GroundMismatch, "tableau is not on [8k]");
  const auto rows = detail::row_blocks(t);
  const auto cols = t.column_cells();
  const auto q = q_group(k);
  if (detail::group_order(rows) * detail::group_order(cols) * static_cast<double>(q.size()) > 1e8)
    throw Error(ErrorCode::SizeLimit, "|Q|·|C|·|R| exceeds 1e8 terms");
  const Matching f = Matching::paired(t.half());
  // Precompute r·F once; the sum then runs over (c, distinct r·F with multiplicity).
  std::map<Matching, long long> row_images;
  detail::for_each_block_permutation(t.ground(), rows, [&](const Permutation& r) { ++row_images[f.permuted(r)]; });
  long long total = 0;
  detail::for_each_block_permutation(t.ground(), cols, [&](const Permutation& c) {
    const int sg = sign(c);
    for (const auto& [rf, mult] : row_images) {
      const Matching crf = rf.permuted(c);
      for (const auto& g : q)
        if (crf.permuted(g) == f) total += sg * mult;
    }
  });
  return total;
}

// ---------------------------------------------------------------------------
// Bridge to diagrams

/// G_M: crossing j carries ground elements 4j−3..4j on positions 1..4, and
/// the pairs of M become edges.
inline Diagram matching_diagram(const Matching& m) {
  if (m.ground() % 4 != 0) throw Error(ErrorCode::GroundNotDivisible, "ground size " + std::to_string(m.ground()));
  return Diagram::from_mates(m.partners(), 0);
}

/// Right-hand side 2^{−2k}(2k)! Σ_{s∈Q} ○^{c(M, s·N)} for k = 1.
inline QuantumDiagram join_formula_rhs(const Matching& m1, const Matching& m2) {
  if (m1.ground() != 8 || m2.ground() != 8) throw Error(ErrorCode::GroundMismatch, "join formula is checked on [8]");
  QuantumDiagram out;
  const Rational weight(1, 2);  // 2^{-2} · 2!
  for (const auto& s : q_group(1)) out.add_canonical(weight, Diagram::unknots(components(m1, m2.permuted(s))));
  return out;
}

/// G_M ⋈_2 G_N == 2^{−2}·2!·Σ_{s∈Q} ○^{c(M, s·N)} as quantum diagrams.
inline bool join_formula_check(const Matching& m1, const Matching& m2) {
  return k_join(matching_diagram(m1), matching_diagram(m2), 2) == join_formula_rhs(m1, m2);
}

}  // namespace vlink
