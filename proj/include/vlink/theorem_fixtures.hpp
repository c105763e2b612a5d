#pragma once

#include <array>
#include <cmath>
#include <string>

#include "vlink/diagram.hpp"
#include "vlink/partition_function.hpp"
#include "vlink/vertex_model.hpp"

namespace vlink {

/// Closed diagrams whose values under f_R expand the three R-matrix
/// residuals. Each one is the contraction pattern of a monomial in R: every
/// repeated index is an edge between the corresponding slots.
struct TheoremFixtures {
  Diagram d1;    ///< Σ R_iaai
  Diagram d2;    ///< Σ R_iaaj R_ibbj
  Diagram d3;    ///< Σ R_ijab R_ajib
  Diagram d4;    ///< Σ R_ijab R_alkb R_ijcd R_clkd
  Diagram d5l;   ///< Σ L_ijklmh L_ijklmh   (L = left side of Yang–Baxter)
  Diagram d5r;   ///< Σ L_ijklmh Rt_ijklmh  (Rt = right side)
  Diagram d5rr;  ///< Σ Rt_ijklmh Rt_ijklmh
};

inline TheoremFixtures build_fixtures() {
  using F = std::array<std::string, 4>;
  TheoremFixtures fx;
  fx.d1 = contraction_diagram({F{"i", "a", "a", "i"}});
  fx.d2 = contraction_diagram({F{"i", "a", "a", "j"}, F{"i", "b", "b", "j"}});
  fx.d3 = contraction_diagram({F{"i", "j", "a", "b"}, F{"a", "j", "i", "b"}});
  fx.d4 = contraction_diagram({F{"i", "j", "a", "b"}, F{"a", "l", "k", "b"}, F{"i", "j", "c", "d"}, F{"c", "l", "k", "d"}});
  // L_ijklmh = Σ R_iabh R_jkca R_bclm, Rt_ijklmh = Σ R_ijbc R_bkla R_camh.
  const F l1{"i", "a", "b", "h"}, l2{"j", "k", "c", "a"}, l3{"b", "c", "l", "m"};
  const F l1p{"i", "A", "B", "h"}, l2p{"j", "k", "C", "A"}, l3p{"B", "C", "l", "m"};
  const F t1{"i", "j", "B", "C"}, t2{"B", "k", "l", "A"}, t3{"C", "A", "m", "h"};
  const F t1p{"i", "j", "b", "c"}, t2p{"b", "k", "l", "a"}, t3p{"c", "a", "m", "h"};
  fx.d5l = contraction_diagram({l1, l2, l3, l1p, l2p, l3p});
  fx.d5r = contraction_diagram({l1, l2, l3, t1, t2, t3});
  fx.d5rr = contraction_diagram({t1p, t2p, t3p, t1, t2, t3});
  return fx;
}

struct TheoremGaps {
  double gap1, gap2, gap3;
};

/// (|f(D2)+f(○)−2f(D1)|, |f(D4)+f(○)²−2f(D3)|, |f(D5L)−f(D5R)|) for f = f_R.
inline TheoremGaps check_theorem_conditions(const VertexModel& r) {
  static const TheoremFixtures fx = build_fixtures();
  const double circle = r.n();
  return {std::abs(eval(r, fx.d2) + circle - 2.0 * eval(r, fx.d1)),
          std::abs(eval(r, fx.d4) + circle * circle - 2.0 * eval(r, fx.d3)),
          std::abs(eval(r, fx.d5l) - eval(r, fx.d5r))};
}

/// The residuals rebuilt from fixture values by expanding each square:
///   r1 = f(D2) − 2f(D1) + n,  r2 = f(D4) − 2f(D3) + n²,
///   r3 = f(D5L) − 2f(D5R) + f(D5RR).
template <class Scalar>
ResidualTriple<Scalar> residuals_from_fixtures(const BasicVertexModel<Scalar>& r) {
  static const TheoremFixtures fx = build_fixtures();
  const Scalar n(r.n());
  ResidualTriple<Scalar> out;
  out.r1 = eval(r, fx.d2) - Scalar(2) * eval(r, fx.d1) + n;
  out.r2 = eval(r, fx.d4) - Scalar(2) * eval(r, fx.d3) + n * n;
  out.r3 = eval(r, fx.d5l) - Scalar(2) * eval(r, fx.d5r) + eval(r, fx.d5rr);
  return out;
}

}  // namespace vlink
