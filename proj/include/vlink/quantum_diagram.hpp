#pragma once

#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vlink/diagram.hpp"
#include "vlink/rational.hpp"

namespace vlink {

/// Formal finite linear combination of canonical diagrams with exact
/// rational coefficients. Zero coefficients are never stored.
class QuantumDiagram {
 public:
  using Terms = std::map<Diagram, Rational>;

  QuantumDiagram() = default;

  /// Adds `coefficient * d`; `d` is canonicalized here.
  void add(const Rational& coefficient, const Diagram& d) { add_canonical(coefficient, canonical_form(d)); }

  /// As add(), for a diagram already in canonical form.
  void add_canonical(const Rational& coefficient, const Diagram& canonical) {
    if (coefficient == 0) return;
    auto [it, inserted] = terms_.try_emplace(canonical, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second == 0) terms_.erase(it);
    }
  }

  QuantumDiagram& operator+=(const QuantumDiagram& other) {
    for (const auto& [d, q] : other.terms_) add_canonical(q, d);
    return *this;
  }

  QuantumDiagram& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [d, q] : terms_) q *= s;
    return *this;
  }

  friend QuantumDiagram operator+(QuantumDiagram a, const QuantumDiagram& b) { return a += b; }
  friend QuantumDiagram operator*(const Rational& s, QuantumDiagram a) { return a *= s; }

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Diagram& d) const {
    auto it = terms_.find(canonical_form(d));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational coefficient_sum() const {
    Rational s = 0;
    for (const auto& [d, q] : terms_) s += q;
    return s;
  }

  friend bool operator==(const QuantumDiagram&, const QuantumDiagram&) = default;

 private:
  Terms terms_;
};

/// Groups by canonical form and sums coefficients exactly.
inline QuantumDiagram qd_combine(const std::vector<std::pair<Rational, Diagram>>& items) {
  QuantumDiagram out;
  for (const auto& [q, d] : items) out.add(q, d);
  return out;
}

inline std::string serialize_quantum(const QuantumDiagram& x) {
  std::ostringstream out;
  for (const auto& [d, q] : x.terms()) {
    out << "term " << q.get_num().get_str() << "/" << q.get_den().get_str() << "\n";
    out << serialize_diagram(d);
  }
  return out.str();
}

inline QuantumDiagram parse_quantum(std::istream& in) {
  auto lines = detail::tokenize_lines(in);
  QuantumDiagram out;
  std::size_t pos = 0;
  while (pos < lines.size()) {
    detail::expect(lines[pos].size() == 2 && lines[pos][0] == "term", "expected 'term <p>/<q>'");
    Rational q = parse_rational(lines[pos][1]);
    ++pos;
    out.add(q, detail::parse_diagram_block(lines, pos));
  }
  return out;
}

inline QuantumDiagram parse_quantum(const std::string& text) {
  std::istringstream in(text);
  return parse_quantum(in);
}

}  // namespace vlink
