#pragma once

#include <cmath>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlink/diagram.hpp"
#include "vlink/join.hpp"
#include "vlink/linalg.hpp"
#include "vlink/partition_function.hpp"
#include "vlink/quantum_diagram.hpp"
#include "vlink/vertex_model.hpp"

namespace vlink {

/// f(G) = 0 if G has a crossing, else value^{circles}.
struct CirclePower {
  double value;
};

/// A multiplicative diagram invariant: either the partition function of a
/// vertex model or a pure circle power.
class InvariantFunction {
 public:
  static InvariantFunction from_model(VertexModel r) { return InvariantFunction(std::move(r)); }
  static InvariantFunction circle_power(double c) { return InvariantFunction(CirclePower{c}); }

  double operator()(const Diagram& d) const {
    if (const auto* r = std::get_if<VertexModel>(&impl_)) return eval(*r, d, limits_);
    const auto& cp = std::get<CirclePower>(impl_);
    return d.crossing_count() > 0 ? 0.0 : std::pow(cp.value, d.circles());
  }

  double operator()(const QuantumDiagram& x) const {
    double total = 0.0;
    for (const auto& [d, q] : x.terms()) total += q.get_d() * (*this)(d);
    return total;
  }

  std::string describe() const {
    if (const auto* r = std::get_if<VertexModel>(&impl_)) return "f_R (n=" + std::to_string(r->n()) + ")";
    return "circle_power(" + std::to_string(std::get<CirclePower>(impl_).value) + ")";
  }

 private:
  explicit InvariantFunction(std::variant<VertexModel, CirclePower> impl) : impl_(std::move(impl)) {}
  std::variant<VertexModel, CirclePower> impl_;
  EvalLimits limits_{};
};

struct GramReport {
  std::vector<Diagram> family;
  int k = 0;
  Eigen::MatrixXd matrix;
  std::vector<double> eigenvalues;
  double min_eigenvalue = 0.0;
  double norm = 0.0;

  /// min_eigenvalue ≥ −tol·‖M‖.
  bool is_psd(double relative_tol = 1e-10) const { return min_eigenvalue >= -relative_tol * norm; }
};

/// Canonical forms of `family` with duplicates removed, first occurrence order kept.
inline std::vector<Diagram> dedupe_family(const std::vector<Diagram>& family) {
  std::vector<Diagram> out;
  std::set<Diagram> seen;
  for (const auto& d : family) {
    Diagram c = canonical_form(d);
    if (seen.insert(c).second) out.push_back(std::move(c));
  }
  return out;
}

/// M_{f,k} = (f(G ⋈_k H)) over the deduplicated family. Entries where k
/// exceeds either crossing count are 0.
inline GramReport gram_matrix(const InvariantFunction& f, const std::vector<Diagram>& family, int k) {
  GramReport rep;
  rep.family = dedupe_family(family);
  rep.k = k;
  const auto size = static_cast<Eigen::Index>(rep.family.size());
  rep.matrix = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = i; j < size; ++j) {
      const auto& g = rep.family[static_cast<std::size_t>(i)];
      const auto& h = rep.family[static_cast<std::size_t>(j)];
      double value = 0.0;
      if (k <= g.crossing_count() && k <= h.crossing_count()) value = f(k_join(g, h, k));
      rep.matrix(i, j) = rep.matrix(j, i) = value;
    }
  rep.eigenvalues = symmetric_eigenvalues(rep.matrix);
  rep.min_eigenvalue = rep.eigenvalues.empty() ? 0.0 : rep.eigenvalues.front();
  rep.norm = spectral_norm(rep.eigenvalues);
  return rep;
}

inline nlohmann::json to_json(const GramReport& rep) {
  nlohmann::json j;
  j["k"] = rep.k;
  j["family"] = nlohmann::json::array();
  for (const auto& d : rep.family) j["family"].push_back(serialize_diagram(d));
  j["matrix"] = nlohmann::json::array();
  for (Eigen::Index r = 0; r < rep.matrix.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < rep.matrix.cols(); ++c) row.push_back(rep.matrix(r, c));
    j["matrix"].push_back(row);
  }
  j["min_eigenvalue"] = rep.min_eigenvalue;
  j["norm"] = rep.norm;
  return j;
}

/// |f_R(G ⋈_1 H) − ⟨d f_R(G), d f_R(H)⟩|.
inline double derivative_identity_gap(const VertexModel& r, const Diagram& g, const Diagram& h) {
  double lhs = 0.0;
  if (g.crossing_count() >= 1 && h.crossing_count() >= 1) lhs = eval(r, k_join(g, h, 1));
  const auto dg = gradient(r, g);
  const auto dh = gradient(r, h);
  double rhs = 0.0;
  for (std::size_t i = 0; i < dg.size(); ++i) rhs += dg[i] * dh[i];
  return std::abs(lhs - rhs);
}

}  // namespace vlink
