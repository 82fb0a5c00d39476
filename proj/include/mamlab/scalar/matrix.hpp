#pragma once

// Dense matrices over Q(s) and over Q: elimination, kernels, and the
// extraction of rational solutions by monomial stacking.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "mamlab/error.hpp"
#include "mamlab/scalar/scalar.hpp"

namespace mamlab {

using QVector = std::vector<mpq_class>;

class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static ScalarMatrix from_rows(const std::vector<ScalarVector>& rows, std::size_t cols) {
    ScalarMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw InputError("ragged matrix rows");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }
  /// Matrix whose columns are the given vectors (each of length `rows`).
  static ScalarMatrix from_columns(const std::vector<ScalarVector>& cols, std::size_t rows) {
    ScalarMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != rows) throw InputError("ragged matrix columns");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
  }
  static ScalarMatrix identity(std::size_t n) {
    ScalarMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ScalarVector row(std::size_t r) const { return ScalarVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }
  ScalarVector column(std::size_t c) const {
    ScalarVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  ScalarMatrix transpose() const {
    ScalarMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }
  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix shape mismatch");
    ScalarMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) p(i, j) += a(i, k) * b(k, j);
      }
    return p;
  }
  ScalarVector apply(const ScalarVector& x) const {
    if (x.size() != cols_) throw InputError("vector length mismatch");
    ScalarVector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (!x[c].is_zero() && !(*this)(r, c).is_zero()) y[r] += (*this)(r, c) * x[c];
    return y;
  }
  friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

inline Scalar dot(const ScalarVector& a, const ScalarVector& b) {
  if (a.size() != b.size()) throw InputError("vector length mismatch");
  Scalar s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

inline bool is_zero_vector(const ScalarVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

inline ScalarVector to_scalars(const QVector& v) {
  ScalarVector out;
  out.reserve(v.size());
  for (const auto& q : v) out.emplace_back(q);
  return out;
}

// ---------------------------------------------------------------------------
// Rational linear algebra

using QMatrix = std::vector<QVector>;

/// RREF over Q in place; returns pivot columns.
inline std::vector<std::size_t> rref(QMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    const mpq_class inv = mpq_class(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const mpq_class f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

namespace detail {

inline std::size_t complexity(const Scalar& s) {
  return s.numerator().terms().size() + s.denominator().terms().size();
}

/// Fixed rational point at which symbols are specialized for rank probes.
inline const mpq_class& probe_coordinate(std::size_t i) {
  static const std::vector<mpq_class> pts = [] {
    std::vector<mpq_class> v;
    for (long k = 0; k < 64; ++k) {
      mpq_class q(7919 + 104729 * k, 1009 + 613 * k);
      q.canonicalize();
      v.push_back(q);
    }
    return v;
  }();
  if (i >= pts.size()) throw InputError("too many symbols for a rank probe");
  return pts[i];
}

inline mpq_class probe(const Polynomial& p) {
  mpq_class acc = 0;
  for (const auto& t : p.terms()) {
    mpq_class v = t.coeff;
    for (std::size_t i = 0; i < t.mono.size(); ++i)
      for (std::uint32_t e = 0; e < t.mono.exponent(i); ++e) v *= probe_coordinate(i);
    acc += v;
  }
  return acc;
}

/// Rank of the matrix with every symbol specialized to the probe point. The
/// (r+1)-minors of a rank-r matrix over Q(s) vanish identically, so this is a
/// lower bound for the rank; nullopt when a denominator vanishes there.
inline std::optional<std::size_t> probe_rank(const ScalarMatrix& m) {
  QMatrix q(m.rows(), QVector(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Scalar& x = m(r, c);
      if (x.is_zero()) continue;
      const mpq_class d = probe(x.denominator());
      if (sgn(d) == 0) return std::nullopt;
      q[r][c] = probe(x.numerator()) / d;
    }
  return rref(q, m.cols()).size();
}

/// True when the rank is certainly min(rows, cols).
inline bool certainly_full_rank(const ScalarMatrix& m) {
  const auto r = probe_rank(m);
  return r && *r == std::min(m.rows(), m.cols());
}

}  // namespace detail

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row. Pivots are exact nonzero tests, so no sign queries occur.
inline std::vector<std::size_t> rref(ScalarMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t best = m.rows();
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (m(i, c).is_zero()) continue;
      if (best == m.rows() || detail::complexity(m(i, c)) < detail::complexity(m(best, c))) best = i;
    }
    if (best == m.rows()) continue;
    if (best != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(best, j));
    const Scalar inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!m(r, j).is_zero()) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(ScalarMatrix m) {
  if (detail::certainly_full_rank(m)) return std::min(m.rows(), m.cols());
  return rref(m).size();
}

/// Basis of {x : M x = 0} over Q(s); one vector per free column, with a 1 in
/// that column.
inline std::vector<ScalarVector> kernel_basis(const ScalarMatrix& matrix) {
  if (matrix.cols() <= matrix.rows() && detail::certainly_full_rank(matrix)) return {};
  ScalarMatrix m = matrix;
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<ScalarVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    ScalarVector x(m.cols());
    x[f] = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (!m(r, f).is_zero()) x[pivots[r]] = -m(r, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Solves M x = b; nullopt when inconsistent. Free variables are set to 0.
inline std::optional<ScalarVector> solve(const ScalarMatrix& a, const ScalarVector& b) {
  if (b.size() != a.rows()) throw InputError("rhs length mismatch");
  ScalarMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  ScalarVector x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

// ---------------------------------------------------------------------------
// Rational solutions

/// Scales to a primitive integer vector whose first nonzero entry is positive.
inline QVector primitive_integer(QVector v) {
  mpz_class l = 1, g = 0;
  for (const auto& q : v) l = lcm(l, mpz_class(q.get_den()));
  for (auto& q : v) {
    q *= l;
    g = gcd(g, mpz_class(q.get_num()));
  }
  if (g == 0) return v;
  auto first = std::find_if(v.begin(), v.end(), [](const mpq_class& q) { return sgn(q) != 0; });
  if (sgn(*first) < 0) g = -g;
  for (auto& q : v) q /= g;
  return v;
}

/// Basis of the rational kernel of a rational matrix, as primitive integer
/// vectors.
inline std::vector<QVector> rational_kernel(QMatrix m, std::size_t cols) {
  const auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVector x(cols, 0);
    x[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m[r][f];
    basis.push_back(primitive_integer(std::move(x)));
  }
  return basis;
}

inline std::size_t rational_rank(QMatrix m, std::size_t cols) { return rref(m, cols).size(); }

/// Least common multiple of the denominators of the Scalars.
inline Polynomial common_denominator(const ScalarVector& row) {
  Polynomial l(1);
  for (const auto& s : row) {
    const Polynomial& d = s.denominator();
    if (d.is_one()) continue;
    const Polynomial g = gcd(l, d);
    l = l * *divide_exact(d, g);
  }
  return l;
}

/// Rows of rational coefficients, one per monomial, whose joint kernel in Q^cols
/// equals the rational solutions of row . x = 0 (under the independence contract).
inline QMatrix stack_monomials(const ScalarVector& row) {
  const Polynomial l = common_denominator(row);
  std::map<Monomial, QVector> stacked;
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (row[c].is_zero()) continue;
    const Polynomial entry = *divide_exact(row[c].numerator() * l, row[c].denominator());
    for (const auto& t : entry.terms()) {
      auto [it, inserted] = stacked.try_emplace(t.mono, QVector(row.size(), 0));
      it->second[c] += t.coeff;
    }
  }
  QMatrix out;
  for (auto& [mono, r] : stacked) out.push_back(std::move(r));
  return out;
}

/// Basis over Q of {x in Q^cols : M x = 0}, by clearing denominators row-wise
/// and stacking per-monomial coefficient rows.
inline std::vector<QVector> rational_solution_space(const ScalarMatrix& m) {
  QMatrix stacked;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (auto& row : stack_monomials(m.row(r))) stacked.push_back(std::move(row));
  return rational_kernel(std::move(stacked), m.cols());
}

}  // namespace mamlab
