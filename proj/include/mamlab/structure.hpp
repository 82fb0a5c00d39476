#pragma once

// Complex-structure data: Ker A, the map Ψ: C^ℓ -> C^m with c = Ψ(C^ℓ),
// the admissibility conditions, the genericity conditions (g1)/(g2), the
// bounded rational subspace search, torus periods and Hopf data.
//
// Complex numbers are pairs of Scalars. Complex subspaces of C^m are handled
// through their real doubles in R^{2m}: z = x + iy <-> (x, y), and the
// complex span of g is the real span of g and i*g = (-y, x).

#include <cstddef>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mamlab/error.hpp"
#include "mamlab/fan.hpp"
#include "mamlab/scalar/interval.hpp"
#include "mamlab/scalar/matrix.hpp"
#include "mamlab/scalar/sign.hpp"

namespace mamlab {

struct Complex {
  Scalar re, im;

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  Complex conj() const { return {re, -im}; }
  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  Complex operator-() const { return {-re, -im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  /// Exact: a / b = a * conj(b) / |b|^2.
  friend Complex operator/(const Complex& a, const Complex& b) {
    if (b.is_zero()) throw DomainError("complex division by zero");
    const Scalar n = b.re * b.re + b.im * b.im;
    const Complex p = a * b.conj();
    return {p.re / n, p.im / n};
  }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

using ComplexVector = std::vector<Complex>;

/// Ψ as an m x ℓ matrix; column j is Ψ(e_j).
struct PsiMap {
  std::size_t m = 0, ell = 0;
  std::vector<ComplexVector> rows;

  const Complex& operator()(std::size_t i, std::size_t j) const { return rows.at(i).at(j); }
  ComplexVector column(std::size_t j) const {
    ComplexVector c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = rows[i][j];
    return c;
  }
  ScalarVector real_column(std::size_t j) const {
    ScalarVector c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = rows[i][j].re;
    return c;
  }
  ScalarVector imag_column(std::size_t j) const {
    ScalarVector c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = rows[i][j].im;
    return c;
  }
  static PsiMap from_columns(const std::vector<ComplexVector>& cols, std::size_t m) {
    PsiMap p;
    p.m = m;
    p.ell = cols.size();
    p.rows.assign(m, ComplexVector(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m) throw InputError("Ψ column has wrong length");
      for (std::size_t i = 0; i < m; ++i) p.rows[i][j] = cols[j][i];
    }
    return p;
  }
};

// ---------------------------------------------------------------------------
// Ker A

/// Basis of Ker A; throws when the a_i do not span R^n.
inline std::vector<ScalarVector> kernel_of_A(const FanData& f) {
  f.check_shape();
  const ScalarMatrix a = f.matrix();
  if (rank(a) != f.n) throw DomainError("the vectors a_i do not span R^" + std::to_string(f.n));
  if (f.n == 0) {
    std::vector<ScalarVector> basis;
    for (int i = 0; i < f.m(); ++i) {
      ScalarVector e(static_cast<std::size_t>(f.m()));
      e[static_cast<std::size_t>(i)] = Scalar(1);
      basis.push_back(std::move(e));
    }
    return basis;
  }
  return kernel_basis(a);
}

// ---------------------------------------------------------------------------
// check_psi / sample_psi

struct PsiCheck {
  bool shape_ok = false;
  /// Re∘Ψ is injective as a real map C^ℓ -> R^m.
  bool condition_a = false;
  /// A∘Re∘Ψ = 0.
  bool condition_b = false;
  std::size_t real_rank = 0;
  std::vector<std::string> notes;
  bool ok() const { return shape_ok && condition_a && condition_b; }
};

/// The m x 2ℓ real matrix of Re∘Ψ in the basis e_1, i e_1, ..., e_ℓ, i e_ℓ.
inline ScalarMatrix re_psi_matrix(const PsiMap& psi) {
  std::vector<ScalarVector> cols;
  for (std::size_t j = 0; j < psi.ell; ++j) {
    cols.push_back(psi.real_column(j));
    ScalarVector neg = psi.imag_column(j);
    for (auto& v : neg) v = -v;
    cols.push_back(std::move(neg));
  }
  return ScalarMatrix::from_columns(cols, psi.m);
}

inline PsiCheck check_psi(const FanData& f, const PsiMap& psi) {
  f.check_shape();
  PsiCheck r;
  const auto ell = f.ell();
  if (!ell) {
    r.notes.push_back("m - n is not even and nonnegative");
    return r;
  }
  if (psi.m != static_cast<std::size_t>(f.m()) || psi.ell != *ell || psi.rows.size() != psi.m) {
    r.notes.push_back("Ψ must be " + std::to_string(f.m()) + " x " + std::to_string(*ell));
    return r;
  }
  r.shape_ok = true;
  const ScalarMatrix re = re_psi_matrix(psi);
  r.real_rank = rank(re);
  r.condition_a = r.real_rank == 2 * *ell;
  if (!r.condition_a) r.notes.push_back("Re∘Ψ has real rank " + std::to_string(r.real_rank) + " < 2ℓ");
  r.condition_b = f.n == 0 || (f.matrix() * re).is_zero();
  if (!r.condition_b) r.notes.push_back("A∘Re∘Ψ is not zero");
  return r;
}

/// Columns w_{2j-1} + i w_{2j} from a real basis of Ker A. Seed 0 keeps the
/// computed basis; other seeds first recombine it by a random invertible
/// integer matrix with entries in [-3, 3].
inline PsiMap sample_psi(const FanData& f, std::uint64_t seed) {
  const auto ell = f.ell();
  if (!ell) throw DomainError("m - n must be even and nonnegative");
  const auto basis = kernel_of_A(f);
  const std::size_t d = basis.size();
  const std::size_t m = static_cast<std::size_t>(f.m());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int attempt = 0; attempt < 32; ++attempt) {
    std::vector<ScalarVector> w = basis;
    if (seed != 0) {
      QMatrix r(d, QVector(d));
      for (auto& row : r)
        for (auto& v : row) v = coef(rng);
      if (rational_rank(r, d) != d) continue;
      for (std::size_t k = 0; k < d; ++k) {
        ScalarVector v(m);
        for (std::size_t l = 0; l < d; ++l)
          if (sgn(r[l][k]) != 0)
            for (std::size_t i = 0; i < m; ++i) v[i] += basis[l][i].scaled(r[l][k]);
        w[k] = std::move(v);
      }
    }
    std::vector<ComplexVector> cols;
    for (std::size_t j = 0; j < *ell; ++j) {
      ComplexVector c(m);
      for (std::size_t i = 0; i < m; ++i) c[i] = {w[2 * j][i], w[2 * j + 1][i]};
      cols.push_back(std::move(c));
    }
    PsiMap psi = PsiMap::from_columns(cols, m);
    if (check_psi(f, psi).ok()) return psi;
  }
  throw Error("sample_psi: no admissible Ψ after 32 attempts");
}

// ---------------------------------------------------------------------------
// Genericity

struct GenericityResult {
  bool holds = false;
  std::optional<QVector> witness;
};

/// (g1): no rational functional vanishes on Ker A.
inline GenericityResult genericity_g1(const FanData& f) {
  const auto basis = kernel_of_A(f);
  GenericityResult r;
  if (basis.empty()) {
    // Ker A = 0: every functional vanishes on it
    QVector e(static_cast<std::size_t>(f.m()), 0);
    if (!e.empty()) e[0] = 1;
    r.witness = e;
    return r;
  }
  const auto sols = rational_solution_space(ScalarMatrix::from_rows(basis, static_cast<std::size_t>(f.m())));
  r.holds = sols.empty();
  if (!r.holds) r.witness = sols.front();
  return r;
}

/// (g2): Ker A contains no nonzero rational vector.
inline GenericityResult genericity_g2(const FanData& f) {
  f.check_shape();
  GenericityResult r;
  std::vector<QVector> sols;
  if (f.n == 0) {
    for (const auto& v : kernel_of_A(f)) {
      QVector q;
      for (const auto& s : v) q.push_back(s.rational_value());
      sols.push_back(q);
    }
  } else {
    sols = rational_solution_space(f.matrix());
  }
  r.holds = sols.empty();
  if (!r.holds) r.witness = sols.front();
  return r;
}

inline bool verify_g1_witness(const FanData& f, const QVector& phi) {
  if (phi.size() != static_cast<std::size_t>(f.m())) return false;
  if (std::all_of(phi.begin(), phi.end(), [](const mpq_class& q) { return sgn(q) == 0; })) return false;
  for (const auto& w : kernel_of_A(f))
    if (!dot(to_scalars(phi), w).is_zero()) return false;
  return true;
}

inline bool verify_g2_witness(const FanData& f, const QVector& x) {
  if (x.size() != static_cast<std::size_t>(f.m())) return false;
  if (std::all_of(x.begin(), x.end(), [](const mpq_class& q) { return sgn(q) == 0; })) return false;
  return f.n == 0 || is_zero_vector(f.matrix().apply(to_scalars(x)));
}

// ---------------------------------------------------------------------------
// Rational subspace search

namespace detail {

/// Real double (x, y) of a complex vector.
inline ScalarVector real_double(const ComplexVector& z) {
  ScalarVector v;
  for (const auto& c : z) v.push_back(c.re);
  for (const auto& c : z) v.push_back(c.im);
  return v;
}

/// Real double of i z.
inline ScalarVector real_double_times_i(const ComplexVector& z) {
  ScalarVector v;
  for (const auto& c : z) v.push_back(-c.im);
  for (const auto& c : z) v.push_back(c.re);
  return v;
}

inline std::size_t rank_of(const std::vector<ScalarVector>& vs, std::size_t len) {
  if (vs.empty()) return 0;
  return rank(ScalarMatrix::from_columns(vs, len));
}

/// Independent subset of the given vectors (same span).
inline std::vector<ScalarVector> independent_subset(const std::vector<ScalarVector>& vs, std::size_t len) {
  if (vs.empty()) return {};
  ScalarMatrix m = ScalarMatrix::from_columns(vs, len);
  if (vs.size() <= len && certainly_full_rank(m)) return vs;
  const auto pivots = rref(m);
  std::vector<ScalarVector> out;
  for (auto p : pivots) out.push_back(vs[p]);
  return out;
}

/// Image under `map` (an r x c matrix given by its columns) of the kernel of `constraint`.
inline std::vector<ScalarVector> image_of_kernel(const ScalarMatrix& constraint, const ScalarMatrix& map) {
  std::vector<ScalarVector> out;
  for (const auto& k : kernel_basis(constraint)) out.push_back(map.apply(k));
  return out;
}

/// Rows 0..m-1 (real parts) or m..2m-1 (imaginary parts) of a 2m x d matrix.
inline ScalarMatrix half(const ScalarMatrix& b, std::size_t m, bool imaginary) {
  ScalarMatrix h(m, b.cols());
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) h(r, c) = b(r + (imaginary ? m : 0), c);
  return h;
}

/// dim_Q(span Y ∩ Q^m) = dim span Y, for real vectors Y in R^m.
inline bool is_rational_subspace(const std::vector<ScalarVector>& ys, std::size_t m) {
  const auto basis = independent_subset(ys, m);
  if (basis.empty()) return true;
  const auto ann = kernel_basis(ScalarMatrix::from_rows(basis, m));
  if (ann.empty()) return true;  // the whole space
  return rational_solution_space(ScalarMatrix::from_rows(ann, m)).size() == basis.size();
}

/// Rational subspaces of R^m spanned by nonzero vectors with entries in
/// [-h, h], of dimension < m, keyed by their RREF. Stops past `cap`.
inline std::vector<QMatrix> height_bounded_subspaces(std::size_t m, int h, std::size_t cap, bool& truncated) {
  truncated = false;
  std::vector<QVector> vectors;
  {
    std::vector<int> digits(m, -h);
    for (;;) {
      QVector v(digits.begin(), digits.end());
      auto first = std::find_if(v.begin(), v.end(), [](const mpq_class& q) { return sgn(q) != 0; });
      if (first != v.end() && sgn(*first) > 0) {
        bool primitive = true;
        mpz_class g = 0;
        for (const auto& q : v) g = gcd(g, mpz_class(q.get_num()));
        primitive = g == 1;
        if (primitive) vectors.push_back(v);
      }
      std::size_t k = 0;
      while (k < m && digits[k] == h) digits[k++] = -h;
      if (k == m) break;
      ++digits[k];
    }
  }
  auto canonical = [m](QMatrix rows) {
    const auto piv = rref(rows, m);
    rows.resize(piv.size());
    return rows;
  };
  std::set<QMatrix> all;
  std::vector<QMatrix> level{QMatrix{}};
  all.insert(QMatrix{});
  for (std::size_t dim = 1; dim < m; ++dim) {
    std::set<QMatrix> next;
    for (const auto& s : level)
      for (const auto& v : vectors) {
        QMatrix rows = s;
        rows.push_back(v);
        QMatrix c = canonical(rows);
        if (c.size() != dim) continue;
        if (all.count(c)) continue;
        next.insert(std::move(c));
        if (all.size() + next.size() > cap) {
          truncated = true;
          return {};
        }
      }
    all.insert(next.begin(), next.end());
    level.assign(next.begin(), next.end());
  }
  std::vector<QMatrix> out(all.begin(), all.end());
  std::sort(out.begin(), out.end(), [](const QMatrix& a, const QMatrix& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

}  // namespace detail

struct SubspaceTest {
  /// Rational basis of W; L = c + W ⊗ C.
  std::vector<QVector> w;
  std::size_t dim_l = 0;       // complex dimension of L
  bool proper = false;         // L ≠ C^m
  bool meets_conjugate = false;  // c̄ ∩ L ≠ 0
  bool imaginary_rational = false;  // L ∩ iR^m rational
  std::size_t q = 0;           // real dimension of Ker A ∩ L
  bool q_invariant = false;    // Im∘Re^{-1}(Q) = Q
  bool violates() const { return proper && meets_conjugate && imaginary_rational; }
};

struct SubspaceSearchReport {
  enum class Status { Verified, Counterexample, Skipped };
  Status status = Status::Skipped;
  int height = 0;
  bool explicit_candidates = false;
  std::size_t candidates = 0;
  bool g1_holds = false;
  /// ℓ = 1 with (g1): 0 < q < 2 forces q = 1, which cannot carry the complex
  /// structure defined by Im∘Re^{-1}, so no violating L exists.
  bool parity_excludes = false;
  /// Candidates with 0 < q < 2ℓ whose Q is invariant under Im∘Re^{-1}.
  std::size_t invariant_q = 0;
  std::optional<SubspaceTest> counterexample;
  std::string scope;
};

/// Tests one rational subspace W ⊂ R^m (identified with iW ⊂ iR^m).
///
/// Everything is computed in C^m / W_C through a rational matrix P with
/// kernel W: L = P^{-1}(col PΨ), so dim L = dim W + rank PΨ, and
/// L ∩ iR^m = i P^{-1}(col PΨ ∩ R^{m-k}) is rational iff col PΨ ∩ R^{m-k} is.
inline SubspaceTest test_subspace(const FanData& f, const PsiMap& psi, const std::vector<QVector>& w) {
  const std::size_t m = psi.m, ell = psi.ell;
  SubspaceTest t;
  t.w = w;
  const QMatrix wm(w.begin(), w.end());
  const auto p_rows = rational_kernel(wm, m);
  const std::size_t mp = p_rows.size(), k = m - mp;
  std::vector<ScalarVector> p_scalar;
  for (const auto& r : p_rows) p_scalar.push_back(to_scalars(r));
  const ScalarMatrix pm = ScalarMatrix::from_rows(p_scalar, m);

  std::vector<ScalarVector> c_gens, cbar_gens;
  for (std::size_t j = 0; j < ell; ++j) {
    const ScalarVector re = pm.apply(psi.real_column(j)), im = pm.apply(psi.imag_column(j));
    ComplexVector col(mp), bar(mp);
    for (std::size_t i = 0; i < mp; ++i) {
      col[i] = {re[i], im[i]};
      bar[i] = col[i].conj();
    }
    c_gens.push_back(detail::real_double(col));
    c_gens.push_back(detail::real_double_times_i(col));
    cbar_gens.push_back(detail::real_double(bar));
    cbar_gens.push_back(detail::real_double_times_i(bar));
  }
  const auto c_basis = detail::independent_subset(c_gens, 2 * mp);
  const std::size_t r = c_basis.size();
  t.dim_l = k + r / 2;
  t.proper = r < 2 * mp;
  // Ψ̄x ∈ L  <=>  PΨ̄x ∈ col PΨ; nonzero solutions iff rank [PΨ PΨ̄] < rank PΨ + ℓ
  std::vector<ScalarVector> joined = c_basis;
  joined.insert(joined.end(), cbar_gens.begin(), cbar_gens.end());
  t.meets_conjugate = detail::rank_of(joined, 2 * mp) < r + 2 * ell;

  if (!t.proper) {
    // L = C^m: L ∩ iR^m = iR^m and Q = Ker A
    t.imaginary_rational = true;
    t.q = 2 * ell;
    t.q_invariant = true;
    return t;
  }
  std::vector<ScalarVector> u;
  if (r > 0) {
    const ScalarMatrix b = ScalarMatrix::from_columns(c_basis, 2 * mp);
    u = detail::independent_subset(
        detail::image_of_kernel(detail::half(b, mp, true), detail::half(b, mp, false)), mp);
  }
  t.imaginary_rational = detail::is_rational_subspace(u, mp);

  // Q = {x ∈ Ker A : Px ∈ U}: kernel of [A 0; P -U] in (x, y), projected to x
  const std::size_t d = u.size();
  ScalarMatrix constraint(f.n + mp, m + d), proj(m, m + d);
  if (f.n) {
    const ScalarMatrix a = f.matrix();
    for (std::size_t i = 0; i < f.n; ++i)
      for (std::size_t c = 0; c < m; ++c) constraint(i, c) = a(i, c);
  }
  for (std::size_t i = 0; i < mp; ++i) {
    for (std::size_t c = 0; c < m; ++c) constraint(f.n + i, c) = pm(i, c);
    for (std::size_t c = 0; c < d; ++c) constraint(f.n + i, m + c) = -u[c][i];
  }
  for (std::size_t i = 0; i < m; ++i) proj(i, i) = Scalar(1);
  const auto q_basis = detail::independent_subset(detail::image_of_kernel(constraint, proj), m);
  t.q = q_basis.size();
  if (t.q > 0) {
    // T v: solve Re∘Ψ(x) = v, then take Im∘Ψ(x)
    const ScalarMatrix re = re_psi_matrix(psi);
    std::vector<ScalarVector> im_cols;
    for (std::size_t j = 0; j < ell; ++j) {
      im_cols.push_back(psi.imag_column(j));
      im_cols.push_back(psi.real_column(j));
    }
    const ScalarMatrix im = ScalarMatrix::from_columns(im_cols, m);
    std::vector<ScalarVector> with_image = q_basis;
    bool solvable = true;
    for (const auto& v : q_basis) {
      const auto x = solve(re, v);
      if (!x) {
        solvable = false;
        break;
      }
      with_image.push_back(im.apply(*x));
    }
    t.q_invariant = solvable && detail::rank_of(with_image, m) == t.q;
  }
  return t;
}

inline SubspaceSearchReport subspace_search_from_candidates(const FanData& f, const PsiMap& psi,
                                               const std::vector<std::vector<QVector>>& candidates) {
  SubspaceSearchReport r;
  r.g1_holds = genericity_g1(f).holds;
  r.parity_excludes = r.g1_holds && psi.ell == 1;
  r.status = SubspaceSearchReport::Status::Verified;
  for (const auto& w : candidates) {
    ++r.candidates;
    SubspaceTest t = test_subspace(f, psi, w);
    if (t.q > 0 && t.q < 2 * psi.ell && t.q_invariant) ++r.invariant_q;
    if (t.violates() && !r.counterexample) {
      r.counterexample = std::move(t);
      r.status = SubspaceSearchReport::Status::Counterexample;
    }
  }
  return r;
}

/// Explicit candidate family.
inline SubspaceSearchReport psi_subspace_check(const FanData& f, const PsiMap& psi,
                                         const std::vector<std::vector<QVector>>& candidates) {
  SubspaceSearchReport r = subspace_search_from_candidates(f, psi, candidates);
  r.explicit_candidates = true;
  r.scope = std::to_string(r.candidates) + " explicit candidate subspace(s)";
  return r;
}

/// All proper rational subspaces spanned by vectors with entries in [-h, h].
inline SubspaceSearchReport psi_subspace_check(const FanData& f, const PsiMap& psi, int height,
                                         std::size_t cap = 20000) {
  bool truncated = false;
  const auto spaces = detail::height_bounded_subspaces(psi.m, height, cap, truncated);
  SubspaceSearchReport r;
  if (truncated) {
    r.height = height;
    r.g1_holds = genericity_g1(f).holds;
    r.parity_excludes = r.g1_holds && psi.ell == 1;
    r.status = SubspaceSearchReport::Status::Skipped;
    r.scope = "skipped: more than " + std::to_string(cap) + " candidate subspaces at height " + std::to_string(height);
    return r;
  }
  std::vector<std::vector<QVector>> candidates(spaces.begin(), spaces.end());
  r = subspace_search_from_candidates(f, psi, candidates);
  r.height = height;
  r.scope = "all " + std::to_string(r.candidates) + " proper rational subspaces spanned by vectors of height <= " +
            std::to_string(height);
  return r;
}

// ---------------------------------------------------------------------------
// Torus periods (n = 0)

struct TorusPeriods {
  /// Rows S used to invert Ψ; the quotient coordinates are the other rows K.
  std::vector<std::size_t> solved_rows, kept_rows;
  /// period_k = 2πi * coefficient[k], each an ℓ-vector over the kept rows.
  std::vector<ComplexVector> coefficients;
  std::vector<std::vector<std::pair<Interval, Interval>>> enclosures;  // (re, im) per entry
  std::size_t real_rank = 0;
};

namespace detail {

/// Inverse of a square complex matrix, or nullopt when singular.
inline std::optional<std::vector<ComplexVector>> complex_inverse(std::vector<ComplexVector> a) {
  const std::size_t n = a.size();
  std::vector<ComplexVector> inv(n, ComplexVector(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = {Scalar(1), Scalar()};
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Complex d = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] = a[c][j] / d;
      inv[c][j] = inv[c][j] / d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const Complex f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] = a[r][j] - f * a[c][j];
        inv[r][j] = inv[r][j] - f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace detail

/// Projection p(z) = z_K - Ψ_K Ψ_S^{-1} z_S onto C^m / c, applied to 2πi e_k.
/// S is the lexicographically last invertible choice of ℓ rows, so for
/// Ψ(w) = (βw, w) the projection is z_1 - β z_2.
inline TorusPeriods torus_periods(const FanData& f, const PsiMap& psi, int bits = 53) {
  if (f.n != 0) throw DomainError("torus_periods needs n = 0");
  if (!f.complex.maximal_faces().empty()) throw DomainError("torus_periods needs K = {∅}");
  if (!check_psi(f, psi).ok()) throw DomainError("Ψ does not satisfy conditions (a) and (b)");
  const std::size_t m = psi.m, ell = psi.ell;
  TorusPeriods out;
  std::optional<std::vector<ComplexVector>> inv;
  auto subsets = all_subsets(full_range(static_cast<int>(m)));
  for (auto it = subsets.rbegin(); it != subsets.rend() && !inv; ++it) {
    if (it->size() != ell) continue;
    std::vector<ComplexVector> block;
    for (int r : *it) block.push_back(psi.rows[static_cast<std::size_t>(r - 1)]);
    inv = detail::complex_inverse(block);
    if (inv) {
      out.solved_rows.clear();
      for (int r : *it) out.solved_rows.push_back(static_cast<std::size_t>(r - 1));
    }
  }
  if (!inv) throw DomainError("Ψ has no invertible ℓ x ℓ block");
  for (std::size_t i = 0; i < m; ++i)
    if (std::find(out.solved_rows.begin(), out.solved_rows.end(), i) == out.solved_rows.end())
      out.kept_rows.push_back(i);
  // M = -Ψ_K Ψ_S^{-1}
  std::vector<ComplexVector> mk(ell, ComplexVector(ell));
  for (std::size_t a = 0; a < ell; ++a)
    for (std::size_t b = 0; b < ell; ++b) {
      Complex acc;
      for (std::size_t k = 0; k < ell; ++k) acc = acc + psi.rows[out.kept_rows[a]][k] * (*inv)[k][b];
      mk[a][b] = -acc;
    }
  for (std::size_t e = 0; e < m; ++e) {
    ComplexVector c(ell);
    auto kept = std::find(out.kept_rows.begin(), out.kept_rows.end(), e);
    if (kept != out.kept_rows.end()) {
      c[static_cast<std::size_t>(kept - out.kept_rows.begin())] = {Scalar(1), Scalar()};
    } else {
      const std::size_t s = static_cast<std::size_t>(
          std::find(out.solved_rows.begin(), out.solved_rows.end(), e) - out.solved_rows.begin());
      for (std::size_t a = 0; a < ell; ++a) c[a] = mk[a][s];
    }
    out.coefficients.push_back(std::move(c));
  }
  // exact real rank of the periods in C^ℓ = R^{2ℓ}
  std::vector<ScalarVector> real_vectors;
  for (const auto& c : out.coefficients) {
    ScalarVector v;
    for (const auto& z : c) v.push_back(-z.im);  // Re(i z)
    for (const auto& z : c) v.push_back(z.re);   // Im(i z)
    real_vectors.push_back(std::move(v));
  }
  out.real_rank = detail::rank_of(real_vectors, 2 * ell);
  if (out.real_rank != 2 * ell) throw DomainError("periods have real rank below 2ℓ");
  for (const auto& c : out.coefficients) {
    std::vector<std::pair<Interval, Interval>> row;
    for (const auto& z : c) {
      for (int p = bits + 16;; p *= 2) {
        auto re = z.re.enclose(f.table, p), im = z.im.enclose(f.table, p);
        if (re && im) {
          const Interval two_pi = Interval::pi(p) * Interval::from_rational(2, p);
          row.emplace_back(-(two_pi * *im), two_pi * *re);
          break;
        }
        if (p > 8192) throw PrecisionExhausted("cannot enclose a period");
      }
    }
    out.enclosures.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hopf data (ℓ = 1, K = ∂Δ^n plus one ghost)

struct HopfData {
  std::size_t ghost = 0;  // 0-based
  /// Relation Σ λ_k a_k = 0 over the non-ghost vertices, rescaled so α = i.
  ScalarVector lambda, mu;
  /// α read from Ψ before normalization.
  Complex alpha;
  /// ζ_k = μ_k + i λ_k for the non-ghost k, in vertex order.
  std::vector<Complex> zeta;
  /// |e^{2πiζ_k}| = e^{-2πλ_k} and the argument 2πμ_k.
  std::vector<Interval> modulus, argument;
  /// e^{2πiζ_k} as (re, im).
  std::vector<std::pair<Interval, Interval>> multiplier;
  /// True when the inverse generator was used (Im α < 0).
  bool inverted = false;
};

inline Interval enclose_at(const Scalar& s, const SymbolTable& t, int bits) {
  for (int p = bits + 16; p <= 16384; p *= 2)
    if (auto iv = s.enclose(t, p)) return *iv;
  throw PrecisionExhausted("cannot enclose " + s.to_string(t));
}

inline HopfData hopf_data(const FanData& f, const PsiMap& psi, int bits = 53, int max_bits = kDefaultMaxBits) {
  f.check_shape();
  const SignOracle oracle(f.table, max_bits);
  const std::size_t m = static_cast<std::size_t>(f.m());
  if (f.ell() != std::optional<std::size_t>(1) || psi.ell != 1 || psi.m != m)
    throw DomainError("hopf_data needs ℓ = 1 (m = n + 2)");
  HopfData h;
  std::vector<std::size_t> verts;
  if (f.n == 0) {
    if (!f.complex.maximal_faces().empty()) throw DomainError("n = 0 needs K = {∅}");
    verts = {0};
    h.ghost = 1;
  } else {
    const Face v = f.complex.vertices();
    const Face g = f.complex.ghosts();
    if (v.size() != f.n + 1 || g.size() != 1 || !(f.complex == boundary_simplex_on(v, f.complex.m())))
      throw DomainError("K is not the boundary of an n-simplex with one ghost vertex");
    for (int x : v) verts.push_back(static_cast<std::size_t>(x - 1));
    h.ghost = static_cast<std::size_t>(g[0] - 1);
  }
  // λ: relation among the non-ghost vectors; μ: Σ μ_k a_k + a_ghost = 0
  ScalarVector lambda(verts.size()), mu(verts.size());
  if (f.n == 0) {
    lambda[0] = Scalar(1);
  } else {
    std::vector<ScalarVector> cols;
    for (auto k : verts) cols.push_back(f.vectors[k]);
    const ScalarMatrix an = ScalarMatrix::from_columns(cols, f.n);
    const auto rel = kernel_basis(an);
    if (rel.size() != 1) throw DomainError("the non-ghost vectors do not span");
    lambda = rel[0];
    if (oracle(lambda[0]) < 0)
      for (auto& x : lambda) x = -x;
    ScalarVector rhs = f.vectors[h.ghost];
    for (auto& x : rhs) x = -x;
    mu = *solve(an, rhs);
  }
  for (const auto& x : lambda)
    if (oracle(x) <= 0) throw DomainError("the relation λ is not positive");
  // ψ = x (λ, 0) + y (μ, 1)
  const ComplexVector psi_col = psi.column(0);
  const Complex y = psi_col[h.ghost];
  if (y.is_zero()) throw DomainError("Ψ has zero ghost coordinate; condition (a) fails");
  const Complex x = (psi_col[verts[0]] - y * Complex{mu[0], Scalar()}) / Complex{lambda[0], Scalar()};
  for (std::size_t k = 0; k < verts.size(); ++k)
    if (!(psi_col[verts[k]] == x * Complex{lambda[k], Scalar()} + y * Complex{mu[k], Scalar()}))
      throw DomainError("Ψ does not lie in Ker A ⊗ C");
  h.alpha = x / y;
  const Scalar a = h.alpha.re, b = h.alpha.im;
  const int sb = oracle(b);
  if (sb == 0) throw DomainError("α is real; condition (a) fails");
  // ζ = μ + αλ = (μ + aλ) + i bλ; with b < 0 use the inverse generator -ζ
  h.inverted = sb < 0;
  const Scalar babs = h.inverted ? -b : b;
  h.lambda.resize(verts.size());
  h.mu.resize(verts.size());
  for (std::size_t k = 0; k < verts.size(); ++k) {
    h.lambda[k] = babs * lambda[k];
    h.mu[k] = mu[k] + a * lambda[k];
    if (h.inverted) h.mu[k] = -h.mu[k];
    h.zeta.push_back({h.mu[k], h.lambda[k]});
  }
  for (std::size_t k = 0; k < verts.size(); ++k) {
    const int p = bits + 32;
    const Interval two_pi = Interval::pi(p) * Interval::from_rational(2, p);
    const Interval lam = enclose_at(h.lambda[k], f.table, p);
    const Interval muv = enclose_at(h.mu[k], f.table, p);
    const Interval mod = (-(two_pi * lam)).exp();
    const Interval arg = two_pi * muv;
    h.modulus.push_back(mod);
    h.argument.push_back(arg);
    h.multiplier.emplace_back(mod * arg.cos(), mod * arg.sin());
  }
  return h;
}

}  // namespace mamlab
