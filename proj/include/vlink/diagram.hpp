#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vlink/error.hpp"

namespace vlink {

/// A half-edge slot at a crossing. Both fields are 1-based; positions run
/// clockwise and {1,3} is the overcrossing pair.
struct SlotRef {
  int crossing = 1;
  int position = 1;

  friend auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

using EdgeRef = std::pair<SlotRef, SlotRef>;

inline std::string to_string(const SlotRef& s) {
  return "(" + std::to_string(s.crossing) + "," + std::to_string(s.position) + ")";
}

/// Throws Error{DuplicateSlot | MissingSlot | NegativeCount | IndexOutOfRange}
/// unless every slot of every crossing is covered by exactly one edge.
inline void validate(int crossings, int circles, std::span<const EdgeRef> edges) {
  if (crossings < 0) throw Error(ErrorCode::NegativeCount, "crossing_count = " + std::to_string(crossings));
  if (circles < 0) throw Error(ErrorCode::NegativeCount, "circles = " + std::to_string(circles));
  std::vector<int> seen(static_cast<std::size_t>(crossings) * 4, 0);
  auto mark = [&](const SlotRef& s) {
    if (s.crossing < 1 || s.crossing > crossings || s.position < 1 || s.position > 4)
      throw Error(ErrorCode::IndexOutOfRange, "slot " + to_string(s));
    auto& count = seen[static_cast<std::size_t>(4 * (s.crossing - 1) + s.position - 1)];
    if (++count > 1) throw Error(ErrorCode::DuplicateSlot, "slot " + to_string(s) + " used twice");
  };
  for (const auto& [a, b] : edges) {
    mark(a);
    mark(b);
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i] == 0)
      throw Error(ErrorCode::MissingSlot,
                  "slot " + to_string(SlotRef{static_cast<int>(i / 4) + 1, static_cast<int>(i % 4) + 1}) +
                      " not covered");
}

/// A virtual link diagram: crossings with four cyclically ordered slots, a
/// perfect matching of the slots, and a number of crossing-free circles.
///
/// Slots are stored 0-based as `4 * crossing + position`; `mate(s)` is the
/// slot at the other end of the edge through `s`. A loop joins two slots of
/// the same crossing.
class Diagram {
 public:
  Diagram() = default;

  static Diagram from_edges(int crossings, int circles, std::span<const EdgeRef> edges) {
    validate(crossings, circles, edges);
    Diagram d;
    d.circles_ = circles;
    d.mate_.assign(static_cast<std::size_t>(crossings) * 4, -1);
    for (const auto& [a, b] : edges) {
      int sa = 4 * (a.crossing - 1) + a.position - 1;
      int sb = 4 * (b.crossing - 1) + b.position - 1;
      d.mate_[sa] = sb;
      d.mate_[sb] = sa;
    }
    return d;
  }

  static Diagram from_edges(int crossings, int circles, std::initializer_list<EdgeRef> edges) {
    return from_edges(crossings, circles, std::span<const EdgeRef>(edges.begin(), edges.size()));
  }

  /// Builds a diagram from a 0-based slot matching; `mate` must be an
  /// involution without fixed points.
  static Diagram from_mates(std::vector<int> mate, int circles) {
    if (mate.size() % 4 != 0) throw Error(ErrorCode::MissingSlot, "slot count not divisible by 4");
    if (circles < 0) throw Error(ErrorCode::NegativeCount, "circles = " + std::to_string(circles));
    const int slots = static_cast<int>(mate.size());
    for (int s = 0; s < slots; ++s) {
      int t = mate[s];
      if (t < 0 || t >= slots || t == s || mate[t] != s)
        throw Error(ErrorCode::DuplicateSlot,
                    "slot " + to_string(SlotRef{s / 4 + 1, s % 4 + 1}) + " is not matched exactly once");
    }
    Diagram d;
    d.mate_ = std::move(mate);
    d.circles_ = circles;
    return d;
  }

  static Diagram unknots(int count) {
    if (count < 0) throw Error(ErrorCode::NegativeCount, "circles = " + std::to_string(count));
    Diagram d;
    d.circles_ = count;
    return d;
  }

  int crossing_count() const { return static_cast<int>(mate_.size() / 4); }
  int circles() const { return circles_; }
  int slot_count() const { return static_cast<int>(mate_.size()); }
  int mate(int slot) const { return mate_[static_cast<std::size_t>(slot)]; }
  const std::vector<int>& mates() const { return mate_; }
  bool empty() const { return mate_.empty() && circles_ == 0; }

  /// Edges with the smaller slot first, sorted lexicographically.
  std::vector<EdgeRef> edges() const {
    std::vector<EdgeRef> out;
    for (int s = 0; s < slot_count(); ++s) {
      int t = mate_[s];
      if (s < t) out.push_back({SlotRef{s / 4 + 1, s % 4 + 1}, SlotRef{t / 4 + 1, t % 4 + 1}});
    }
    return out;
  }

  /// `new_label[v]` is the new 0-based index of crossing v.
  Diagram relabeled(std::span<const int> new_label) const {
    const int c = crossing_count();
    std::vector<int> mate(mate_.size());
    for (int s = 0; s < 4 * c; ++s) {
      int t = mate_[s];
      mate[4 * new_label[s / 4] + s % 4] = 4 * new_label[t / 4] + t % 4;
    }
    return from_mates(std::move(mate), circles_);
  }

  /// Rotates crossing `v` (0-based) by two positions, which keeps the
  /// overcrossing pair in place.
  Diagram rotated(int v) const {
    auto map = [v](int s) { return s / 4 == v ? 4 * v + (s % 4 + 2) % 4 : s; };
    std::vector<int> mate(mate_.size());
    for (int s = 0; s < slot_count(); ++s) mate[map(s)] = map(mate_[s]);
    return from_mates(std::move(mate), circles_);
  }

  Diagram with_circles(int circles) const {
    Diagram d = *this;
    if (circles < 0) throw Error(ErrorCode::NegativeCount, "circles = " + std::to_string(circles));
    d.circles_ = circles;
    return d;
  }

  friend bool operator==(const Diagram&, const Diagram&) = default;
  friend auto operator<=>(const Diagram& a, const Diagram& b) {
    if (auto c = a.crossing_count() <=> b.crossing_count(); c != 0) return c;
    if (auto c = a.circles_ <=> b.circles_; c != 0) return c;
    return a.mate_ <=> b.mate_;
  }

 private:
  int circles_ = 0;
  std::vector<int> mate_;
};

/// G ⊔ H: crossings of `b` are appended after those of `a`.
inline Diagram disjoint_union(const Diagram& a, const Diagram& b) {
  std::vector<int> mate = a.mates();
  const int offset = a.slot_count();
  for (int t : b.mates()) mate.push_back(t + offset);
  return Diagram::from_mates(std::move(mate), a.circles() + b.circles());
}

namespace detail {

/// Crossings of each connected component, in increasing order.
inline std::vector<std::vector<int>> crossing_components(const Diagram& d) {
  const int c = d.crossing_count();
  std::vector<int> parent(c);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int s = 0; s < d.slot_count(); ++s) parent[find(s / 4)] = find(d.mate(s) / 4);
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < c; ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

/// Breadth-first relabeling of one component from a given start crossing and
/// start rotation. Every newly reached crossing is rotated so that its entry
/// slot lands on position 1 or 2, so the labeling depends only on the
/// structure. Returns the component's local mate code.
inline std::vector<int> traversal_code(const Diagram& d, int start, int start_rotation,
                                       std::vector<int>& label, std::vector<int>& rotation,
                                       std::vector<int>& order) {
  order.clear();
  label[start] = 0;
  rotation[start] = start_rotation;
  order.push_back(start);
  for (std::size_t head = 0; head < order.size(); ++head) {
    int v = order[head];
    for (int q = 0; q < 4; ++q) {
      int t = d.mate(4 * v + (q + 2 * rotation[v]) % 4);
      int w = t / 4;
      if (label[w] < 0) {
        label[w] = static_cast<int>(order.size());
        rotation[w] = (t % 4) >= 2 ? 1 : 0;
        order.push_back(w);
      }
    }
  }
  std::vector<int> code(order.size() * 4);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (int q = 0; q < 4; ++q) {
      int t = d.mate(4 * v + (q + 2 * rotation[v]) % 4);
      int w = t / 4;
      code[4 * i + q] = 4 * label[w] + ((t % 4) - 2 * rotation[w] + 4) % 4;
    }
  }
  for (int v : order) label[v] = -1;
  return code;
}

}  // namespace detail

/// Canonical representative of the isomorphism class of `d` under crossing
/// relabelings and per-crossing rotations by two positions.
///
/// Each connected component is encoded by the lexicographically smallest
/// breadth-first traversal code over all start crossings and both start
/// rotations; components are then laid out in sorted order.
inline Diagram canonical_form(const Diagram& d) {
  const int c = d.crossing_count();
  std::vector<int> label(c, -1), rotation(c, 0), order;
  std::vector<std::vector<int>> codes;
  for (const auto& comp : detail::crossing_components(d)) {
    std::vector<int> best;
    for (int start : comp)
      for (int r = 0; r < 2; ++r) {
        auto code = detail::traversal_code(d, start, r, label, rotation, order);
        if (best.empty() || code < best) best = std::move(code);
      }
    codes.push_back(std::move(best));
  }
  std::sort(codes.begin(), codes.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<int> mate;
  mate.reserve(d.mates().size());
  for (const auto& code : codes) {
    const int offset = static_cast<int>(mate.size());
    for (int t : code) mate.push_back(t + offset);
  }
  return Diagram::from_mates(std::move(mate), d.circles());
}

inline bool isomorphic(const Diagram& a, const Diagram& b) {
  return canonical_form(a) == canonical_form(b);
}

/// β: two crossings joined by four parallel edges (a,p)-(b,p).
inline Diagram fixture_beta() {
  return Diagram::from_edges(2, 0, {{{1, 1}, {2, 1}}, {{1, 2}, {2, 2}}, {{1, 3}, {2, 3}}, {{1, 4}, {2, 4}}});
}

/// Closed diagram of an index contraction: factor i becomes crossing i with
/// its four index names on positions 1..4, and every name, which must occur
/// exactly twice, becomes an edge.
inline Diagram contraction_diagram(std::span<const std::array<std::string, 4>> factors) {
  std::map<std::string, std::vector<SlotRef>> where;
  for (std::size_t v = 0; v < factors.size(); ++v)
    for (int p = 0; p < 4; ++p) where[factors[v][p]].push_back({static_cast<int>(v) + 1, p + 1});
  std::vector<EdgeRef> edges;
  for (const auto& [name, slots] : where) {
    if (slots.size() != 2)
      throw Error(ErrorCode::DuplicateSlot, "index '" + name + "' occurs " + std::to_string(slots.size()) + " times");
    edges.push_back({slots[0], slots[1]});
  }
  return Diagram::from_edges(static_cast<int>(factors.size()), 0, edges);
}

inline Diagram contraction_diagram(std::initializer_list<std::array<std::string, 4>> factors) {
  return contraction_diagram(std::span<const std::array<std::string, 4>>(factors.begin(), factors.size()));
}

/// Number of closed strands: traversal goes straight through each crossing
/// (slot p to slot p+2), plus the free circles.
inline int strand_count(const Diagram& d) {
  std::vector<char> seen(d.mates().size(), 0);
  int strands = 0;
  for (int s0 = 0; s0 < d.slot_count(); ++s0) {
    if (seen[s0]) continue;
    ++strands;
    int s = s0;
    while (!seen[s]) {
      int through = 4 * (s / 4) + (s % 4 + 2) % 4;
      seen[s] = seen[through] = 1;
      s = d.mate(through);
    }
  }
  return strands + d.circles();
}

/// Every canonical diagram with 1..max_crossings crossings and no circles,
/// preceded by ∅ and ○ when `with_unknot_family` is set. Sorted.
inline std::vector<Diagram> all_canonical_diagrams(int max_crossings, bool with_unknot_family = true) {
  if (max_crossings > 4)
    throw Error(ErrorCode::SizeLimit, "exhaustive enumeration is capped at 4 crossings");
  std::set<Diagram> found;
  if (with_unknot_family) {
    found.insert(Diagram{});
    found.insert(Diagram::unknots(1));
  }
  for (int c = 1; c <= max_crossings; ++c) {
    const int slots = 4 * c;
    std::vector<int> mate(slots, -1);
    // Recursive perfect-matching enumeration: pair the lowest free slot with each later free slot.
    auto rec = [&](auto&& self) -> void {
      int first = -1;
      for (int s = 0; s < slots; ++s)
        if (mate[s] < 0) {
          first = s;
          break;
        }
      if (first < 0) {
        found.insert(canonical_form(Diagram::from_mates(mate, 0)));
        return;
      }
      for (int t = first + 1; t < slots; ++t) {
        if (mate[t] >= 0) continue;
        mate[first] = t;
        mate[t] = first;
        self(self);
        mate[first] = mate[t] = -1;
      }
    };
    rec(rec);
  }
  return {found.begin(), found.end()};
}

// ---------------------------------------------------------------------------
// Text format

namespace detail {

inline std::vector<std::vector<std::string>> tokenize_lines(std::istream& in) {
  std::vector<std::vector<std::string>> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  return lines;
}

inline int parse_int(const std::string& tok, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, "expected integer for " + what + ", got '" + tok + "'");
  }
}

inline void expect(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::Parse, what);
}

/// Parses one diagram block starting at `lines[pos]`, advancing `pos`.
inline Diagram parse_diagram_block(const std::vector<std::vector<std::string>>& lines, std::size_t& pos) {
  expect(pos < lines.size() && lines[pos] == std::vector<std::string>{"diagram", "v1"},
         "expected header 'diagram v1'");
  ++pos;
  expect(pos < lines.size() && lines[pos].size() == 2 && lines[pos][0] == "crossings", "expected 'crossings <c>'");
  const int crossings = parse_int(lines[pos][1], "crossings");
  ++pos;
  expect(pos < lines.size() && lines[pos].size() == 2 && lines[pos][0] == "circles", "expected 'circles <u>'");
  const int circles = parse_int(lines[pos][1], "circles");
  ++pos;
  if (crossings < 0) throw Error(ErrorCode::NegativeCount, "crossing_count = " + std::to_string(crossings));
  std::vector<EdgeRef> edges;
  for (int i = 0; i < 2 * crossings; ++i, ++pos) {
    expect(pos < lines.size() && lines[pos].size() == 5 && lines[pos][0] == "edge",
           "expected " + std::to_string(2 * crossings) + " lines 'edge <v1> <p1> <v2> <p2>'");
    const auto& t = lines[pos];
    edges.push_back({SlotRef{parse_int(t[1], "v1"), parse_int(t[2], "p1")},
                     SlotRef{parse_int(t[3], "v2"), parse_int(t[4], "p2")}});
  }
  return Diagram::from_edges(crossings, circles, edges);
}

}  // namespace detail

/// Serializes the canonical form of `d`.
inline std::string serialize_diagram(const Diagram& d) {
  const Diagram c = canonical_form(d);
  std::ostringstream out;
  out << "diagram v1\n"
      << "crossings " << c.crossing_count() << "\n"
      << "circles " << c.circles() << "\n";
  for (const auto& [a, b] : c.edges())
    out << "edge " << a.crossing << ' ' << a.position << ' ' << b.crossing << ' ' << b.position << "\n";
  return out.str();
}

inline Diagram parse_diagram(std::istream& in) {
  auto lines = detail::tokenize_lines(in);
  std::size_t pos = 0;
  Diagram d = detail::parse_diagram_block(lines, pos);
  detail::expect(pos == lines.size(), "trailing content after diagram");
  return d;
}

inline Diagram parse_diagram(const std::string& text) {
  std::istringstream in(text);
  return parse_diagram(in);
}

}  // namespace vlink
