#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vlink/error.hpp"
#include "vlink/rational.hpp"

namespace vlink {

/// An element R of the S2-invariant subspace of (R^n)^{⊗4}: a dense rank-4
/// tensor with R(i,j,k,l) == R(k,l,i,j). Indices are 0-based in the API.
template <class Scalar>
class BasicVertexModel {
 public:
  BasicVertexModel() = default;

  static BasicVertexModel zero(int n) {
    if (n < 1) throw Error(ErrorCode::IndexOutOfRange, "dimension n = " + std::to_string(n));
    BasicVertexModel r;
    r.n_ = n;
    r.entries_.assign(static_cast<std::size_t>(n) * n * n * n, Scalar(0));
    return r;
  }

  /// (R_id)_{ijkl} = δ_ik δ_jl.
  static BasicVertexModel identity(int n) {
    auto r = zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.entries_[r.flat(i, j, i, j)] = Scalar(1);
    return r;
  }

  /// Wraps a dense array laid out as ((i*n + j)*n + k)*n + l. Rejects
  /// asymmetric or non-finite data.
  static BasicVertexModel from_dense(int n, std::vector<Scalar> entries) {
    auto r = zero(n);
    if (entries.size() != r.entries_.size())
      throw Error(ErrorCode::IndexOutOfRange, "expected n^4 = " + std::to_string(r.entries_.size()) + " entries");
    r.entries_ = std::move(entries);
    r.check_finite();
    r.check_symmetric();
    return r;
  }

  int n() const { return n_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Scalar>& entries() const { return entries_; }

  std::size_t flat(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }

  const Scalar& operator()(int i, int j, int k, int l) const { return entries_[flat(i, j, k, l)]; }

  /// Sets R(i,j,k,l) and its S2 partner R(k,l,i,j).
  void set(int i, int j, int k, int l, const Scalar& value) {
    entries_[flat(i, j, k, l)] = value;
    entries_[flat(k, l, i, j)] = value;
  }

  friend bool operator==(const BasicVertexModel&, const BasicVertexModel&) = default;

 private:
  void check_finite() const {
    if constexpr (std::is_floating_point_v<Scalar>) {
      for (std::size_t f = 0; f < entries_.size(); ++f)
        if (!std::isfinite(entries_[f])) throw Error(ErrorCode::IndexOutOfRange, "non-finite entry");
    }
  }

  void check_symmetric() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
          for (int l = 0; l < n_; ++l)
            if ((*this)(i, j, k, l) != (*this)(k, l, i, j))
              throw Error(ErrorCode::SymmetryViolation,
                          "R(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                              "," + std::to_string(l + 1) + ") != R(" + std::to_string(k + 1) + "," +
                              std::to_string(l + 1) + "," + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  }

  int n_ = 0;
  std::vector<Scalar> entries_;
};

using VertexModel = BasicVertexModel<double>;
using ExactVertexModel = BasicVertexModel<Rational>;

/// Sparse input entry; indices are 1-based as in the tensor file format.
template <class Scalar>
struct ModelEntry {
  int i, j, k, l;
  Scalar value;
};

/// Builds a model from sparse entries (omitted entries are 0; a repeated index
/// keeps the last value). With `symmetrize`, every entry becomes
/// (R_ijkl + R_klij)/2; otherwise any asymmetry raises SymmetryViolation.
template <class Scalar>
BasicVertexModel<Scalar> make_model(int n, std::span<const ModelEntry<Scalar>> entries, bool symmetrize) {
  auto r = BasicVertexModel<Scalar>::zero(n);
  std::vector<Scalar> dense = r.entries();
  for (const auto& e : entries) {
    for (int idx : {e.i, e.j, e.k, e.l})
      if (idx < 1 || idx > n)
        throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(idx) + " outside [1," + std::to_string(n) + "]");
    dense[r.flat(e.i - 1, e.j - 1, e.k - 1, e.l - 1)] = e.value;
  }
  if (symmetrize) {
    std::vector<Scalar> sym(dense.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            sym[r.flat(i, j, k, l)] = (dense[r.flat(i, j, k, l)] + dense[r.flat(k, l, i, j)]) / Scalar(2);
    dense = std::move(sym);
  }
  return BasicVertexModel<Scalar>::from_dense(n, std::move(dense));
}

template <class Scalar>
BasicVertexModel<Scalar> make_model(int n, std::initializer_list<ModelEntry<Scalar>> entries, bool symmetrize) {
  return make_model<Scalar>(n, std::span<const ModelEntry<Scalar>>(entries.begin(), entries.size()), symmetrize);
}

inline VertexModel to_double(const ExactVertexModel& r) {
  std::vector<double> dense;
  dense.reserve(r.size());
  for (const auto& q : r.entries()) dense.push_back(q.get_d());
  return VertexModel::from_dense(r.n(), std::move(dense));
}

// ---------------------------------------------------------------------------
// Orthonormal basis of the S2-invariant subspace

/// One basis element: e_a if a == b, else (e_a + e_b)/√2, with a < b the flat
/// indices of (i,j,k,l) and (k,l,i,j).
struct BasisElement {
  std::size_t a;
  std::size_t b;
};

inline std::size_t symmetric_dimension(int n) {
  const std::size_t n2 = static_cast<std::size_t>(n) * n;
  return (n2 * n2 + n2) / 2;
}

inline std::vector<BasisElement> symmetric_basis(int n) {
  std::vector<BasisElement> basis;
  basis.reserve(symmetric_dimension(n));
  const std::size_t n2 = static_cast<std::size_t>(n) * n;
  // flat = p * n2 + q with p = (i,j), q = (k,l); the partner is q * n2 + p.
  for (std::size_t p = 0; p < n2; ++p)
    for (std::size_t q = p; q < n2; ++q) basis.push_back({p * n2 + q, q * n2 + p});
  return basis;
}

/// Coordinates of `r` in symmetric_basis(n).
inline std::vector<double> coordinates(const VertexModel& r) {
  std::vector<double> out;
  for (const auto& e : symmetric_basis(r.n()))
    out.push_back(e.a == e.b ? r.entries()[e.a] : std::sqrt(2.0) * r.entries()[e.a]);
  return out;
}

inline VertexModel from_coordinates(int n, std::span<const double> coords) {
  auto basis = symmetric_basis(n);
  if (coords.size() != basis.size())
    throw Error(ErrorCode::IndexOutOfRange, "expected " + std::to_string(basis.size()) + " coordinates");
  std::vector<double> dense(static_cast<std::size_t>(n) * n * n * n, 0.0);
  for (std::size_t t = 0; t < basis.size(); ++t) {
    const auto& e = basis[t];
    if (e.a == e.b) {
      dense[e.a] = coords[t];
    } else {
      dense[e.a] = dense[e.b] = coords[t] / std::sqrt(2.0);
    }
  }
  return VertexModel::from_dense(n, std::move(dense));
}

/// Projects a gradient taken over all n^4 raw entries onto symmetric_basis.
inline std::vector<double> project_raw_gradient(int n, std::span<const double> raw) {
  std::vector<double> out;
  for (const auto& e : symmetric_basis(n))
    out.push_back(e.a == e.b ? raw[e.a] : (raw[e.a] + raw[e.b]) / std::sqrt(2.0));
  return out;
}

// ---------------------------------------------------------------------------
// R-matrix residuals

/// The three sums of squares whose vanishing is equivalent to the trace,
/// inverse and Yang–Baxter conditions.
template <class Scalar>
struct ResidualTriple {
  Scalar r1{0};
  Scalar r2{0};
  Scalar r3{0};
};

/// Residuals summed in lexicographic order of the free indices.
///   r1 = Σ_ij (Σ_a R_iaaj − δ_ij)²
///   r2 = Σ_ijkl (Σ_ab R_ijab R_alkb − δ_ik δ_jl)²
///   r3 = Σ_ijklmh (Σ_abc R_iabh R_jkca R_bclm − Σ_abc R_ijbc R_bkla R_camh)²
template <class Scalar>
ResidualTriple<Scalar> residuals(const BasicVertexModel<Scalar>& r) {
  const int n = r.n();
  ResidualTriple<Scalar> out;
  Scalar acc;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      acc = Scalar(i == j ? -1 : 0);
      for (int a = 0; a < n; ++a) acc += r(i, a, a, j);
      out.r1 += acc * acc;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          acc = Scalar(i == k && j == l ? -1 : 0);
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) acc += r(i, j, a, b) * r(a, l, k, b);
          out.r2 += acc * acc;
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int m = 0; m < n; ++m)
            for (int h = 0; h < n; ++h) {
              acc = Scalar(0);
              for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                  for (int c = 0; c < n; ++c) {
                    acc += r(i, a, b, h) * r(j, k, c, a) * r(b, c, l, m);
                    acc -= r(i, j, b, c) * r(b, k, l, a) * r(c, a, m, h);
                  }
              out.r3 += acc * acc;
            }
  return out;
}

template <class Scalar>
bool is_rmatrix(const BasicVertexModel<Scalar>& r, double tol) {
  auto res = residuals(r);
  return to_double(res.r1) <= tol && to_double(res.r2) <= tol && to_double(res.r3) <= tol;
}

// ---------------------------------------------------------------------------
// O(n) action

/// Σ_abcd R_abcd u_ia u_jb u_kc u_ld for orthogonal u (‖uᵀu − I‖_max ≤ 1e−10).
inline VertexModel orthogonal_transform(const VertexModel& r, const Eigen::MatrixXd& u) {
  const int n = r.n();
  if (u.rows() != n || u.cols() != n)
    throw Error(ErrorCode::NotOrthogonal, "matrix is not " + std::to_string(n) + "x" + std::to_string(n));
  const double defect = (u.transpose() * u - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-10) throw Error(ErrorCode::NotOrthogonal, "max |uᵀu − I| = " + std::to_string(defect));

  // Four successive mode products; `mode` selects which tensor leg is transformed.
  std::vector<double> cur = r.entries(), next(cur.size());
  const std::size_t nn = static_cast<std::size_t>(n);
  std::size_t stride = nn * nn * nn;
  for (int mode = 0; mode < 4; ++mode, stride /= nn) {
    for (std::size_t f = 0; f < cur.size(); ++f) {
      const std::size_t digit = (f / stride) % nn;
      const std::size_t base = f - digit * stride;
      double s = 0.0;
      for (std::size_t a = 0; a < nn; ++a) s += u(static_cast<Eigen::Index>(digit), static_cast<Eigen::Index>(a)) * cur[base + a * stride];
      next[f] = s;
    }
    std::swap(cur, next);
  }
  // Restore exact S2 symmetry lost to rounding.
  VertexModel shape = VertexModel::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          auto p = shape.flat(i, j, k, l), q = shape.flat(k, l, i, j);
          if (p < q) cur[p] = cur[q] = 0.5 * (cur[p] + cur[q]);
        }
  return VertexModel::from_dense(n, std::move(cur));
}

}  // namespace vlink
