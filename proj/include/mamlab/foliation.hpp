#pragma once

// Leaves of the foliation F: ranks of the lattices Γ_I, rational (Seifert)
// detection, and coordinate submanifolds.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "mamlab/fan.hpp"
#include "mamlab/scalar/matrix.hpp"
#include "mamlab/simplicial.hpp"

namespace mamlab {

// ---------------------------------------------------------------------------
// Γ_I

/// rk Γ_I for a face I.
///
/// An element of Γ_I is 2πiγ + c with γ ∈ Z^m, c ∈ C^I and A(2πiγ + c) = 0.
/// For I ∈ K the a_i (i ∈ I) are independent, so c exists iff Aγ lies in
/// span{a_i : i ∈ I}, and is then unique. Hence Γ_I ≅ L_I / Z^I with
/// L_I = {γ ∈ Z^m : φ(Aγ) = 0 for φ in the annihilator of span a_I}, and
/// rk Γ_I = dim_Q V_I - dim_Q(V_I ∩ Q^I), V_I = L_I ⊗ Q.
inline std::size_t gamma_rank(const FanData& f, const Face& i) {
  f.check_shape();
  if (!f.complex.is_face(i)) throw DomainError(face_text(i) + " is not a face of K");
  const std::size_t m = static_cast<std::size_t>(f.m());
  std::vector<ScalarVector> rows;
  for (const auto& phi : annihilator(f, i)) {
    ScalarVector row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = dot(phi, f.vectors[j]);
    rows.push_back(std::move(row));
  }
  auto dim = [m](const std::vector<ScalarVector>& r) {
    return r.empty() ? m : rational_solution_space(ScalarMatrix::from_rows(r, m)).size();
  };
  const std::size_t dim_v = dim(rows);
  std::vector<ScalarVector> restricted = rows;
  for (std::size_t j = 1; j <= m; ++j) {
    if (std::binary_search(i.begin(), i.end(), static_cast<int>(j))) continue;
    ScalarVector e(m);
    e[j - 1] = Scalar(1);
    restricted.push_back(std::move(e));
  }
  return dim_v - dim(restricted);
}

struct LeafReport {
  Face face;
  std::size_t rank = 0;
  std::size_t ell = 0;
  /// G-leaf ≅ (C^×)^torus × C^affine.
  std::size_t torus = 0, affine = 0;
  /// F-leaf ≅ C^ℓ / (lattice of rank `rank`).
  std::string f_leaf;
  bool compact = false;
};

inline LeafReport leaf_type(const FanData& f, const Face& i) {
  const auto ell = f.ell();
  if (!ell) throw DomainError("m - n must be even and nonnegative");
  LeafReport r;
  r.face = i;
  r.rank = gamma_rank(f, i);
  r.ell = *ell;
  if (r.rank > 2 * r.ell) throw Error("rk Γ_I exceeds 2ℓ; Γ_I is not discrete");
  r.torus = r.rank;
  r.affine = 2 * r.ell - r.rank;
  r.compact = r.rank == 2 * r.ell;
  r.f_leaf = "C^" + std::to_string(r.ell) + " / (lattice of rank " + std::to_string(r.rank) + ")";
  return r;
}

/// Leaf reports for every face of K, in size-then-lex order.
inline std::vector<LeafReport> all_leaves(const FanData& f) {
  std::vector<LeafReport> out;
  for (const auto& face : f.complex.faces()) out.push_back(leaf_type(f, face));
  return out;
}

// ---------------------------------------------------------------------------
// Integer lattices

using ZMatrix = std::vector<std::vector<mpz_class>>;

struct ColumnHermite {
  /// C U = [H | 0] with H n x r in column echelon form, U unimodular m x m.
  ZMatrix h, u;
  std::size_t rank = 0;
};

/// Column Hermite reduction of an integer n x m matrix by extended-gcd column
/// operations.
inline ColumnHermite column_hermite(ZMatrix c, std::size_t cols) {
  const std::size_t rows = c.size();
  ZMatrix u(cols, std::vector<mpz_class>(cols, 0));
  for (std::size_t k = 0; k < cols; ++k) u[k][k] = 1;
  auto combine = [&](std::size_t j, std::size_t k, const mpz_class& a, const mpz_class& b, const mpz_class& p,
                     const mpz_class& q) {
    // (col_j, col_k) <- (a col_j + b col_k, p col_j + q col_k)
    for (auto* mat : {&c, &u})
      for (auto& row : *mat) {
        const mpz_class x = row[j], y = row[k];
        row[j] = a * x + b * y;
        row[k] = p * x + q * y;
      }
  };
  std::size_t piv = 0;
  for (std::size_t r = 0; r < rows && piv < cols; ++r) {
    for (std::size_t k = piv + 1; k < cols; ++k) {
      if (c[r][k] == 0) continue;
      const mpz_class x = c[r][piv], y = c[r][k];
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      // [s t; -y/g x/g] has determinant 1
      combine(piv, k, s, t, mpz_class(-y / g), mpz_class(x / g));
    }
    if (c[r][piv] == 0) continue;
    if (c[r][piv] < 0)
      for (auto* mat : {&c, &u})
        for (auto& row : *mat) row[piv] = -row[piv];
    ++piv;
  }
  ColumnHermite out;
  out.rank = piv;
  out.u = std::move(u);
  out.h.assign(rows, std::vector<mpz_class>(piv));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t k = 0; k < piv; ++k) out.h[r][k] = c[r][k];
  return out;
}

/// Coordinates x with H x = v for a column echelon H of full column rank, or
/// nullopt when v is not in the lattice spanned by the columns of H.
inline std::optional<std::vector<mpz_class>> lattice_coordinates(const ZMatrix& h, const std::vector<mpz_class>& v) {
  const std::size_t cols = h.empty() ? 0 : h[0].size();
  std::vector<mpz_class> x(cols, 0), rest = v;
  std::size_t k = 0;
  for (std::size_t r = 0; r < h.size(); ++r) {
    if (k < cols && h[r][k] != 0) {
      if (rest[r] % h[r][k] != 0) return std::nullopt;
      x[k] = rest[r] / h[r][k];
      for (std::size_t s = r; s < h.size(); ++s) rest[s] -= x[k] * h[s][k];
      ++k;
    } else if (rest[r] != 0) {
      return std::nullopt;
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Seifert detection

struct SeifertReport {
  bool rational = false;
  /// Z-basis of Ker A ∩ Z^m (only when rational).
  std::vector<std::vector<mpz_class>> lattice_basis;
  /// Per i (0-based): coordinates of a_i in a basis of N_Z = Z<a_1..a_m>.
  std::vector<std::vector<mpz_class>> coordinates;
  /// Per i: a_i primitive in N_Z; ghosts are skipped.
  std::vector<bool> primitive;
  bool generators_primitive = false;
  /// Positive primitive relation on the rays when K is the boundary of a
  /// simplex (plus ghosts): V_Σ = CP^n(λ).
  std::optional<std::vector<mpz_class>> weights;
  std::string base;
};

inline SeifertReport detect_seifert(const FanData& f) {
  f.check_shape();
  const std::size_t m = static_cast<std::size_t>(f.m());
  SeifertReport r;
  const auto kernel = f.n == 0 ? rational_kernel(QMatrix{}, m) : rational_solution_space(f.matrix());
  r.rational = kernel.size() + f.n == m;
  if (!r.rational) {
    r.base = "not rational: Ker A has rational dimension " + std::to_string(kernel.size()) + " < " +
             std::to_string(m - f.n);
    return r;
  }
  // integer rows C with ker C = Ker A; N_Z ≅ Z^m / (Ker A ∩ Z^m) ≅ C(Z^m)
  QMatrix kq(kernel.begin(), kernel.end());
  const auto c_rows = rational_kernel(kq, m);
  ZMatrix c;
  for (const auto& row : c_rows) {
    std::vector<mpz_class> z;
    for (const auto& q : row) z.push_back(q.get_num());  // primitive_integer output is integral
    c.push_back(std::move(z));
  }
  const ColumnHermite hnf = column_hermite(c, m);
  for (std::size_t k = hnf.rank; k < m; ++k) {
    std::vector<mpz_class> v(m);
    for (std::size_t j = 0; j < m; ++j) v[j] = hnf.u[j][k];
    r.lattice_basis.push_back(std::move(v));
  }
  const Face ghosts = f.complex.ghosts();
  r.generators_primitive = true;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<mpz_class> col(c.size());
    for (std::size_t s = 0; s < c.size(); ++s) col[s] = c[s][j];
    auto x = lattice_coordinates(hnf.h, col);
    if (!x) throw Error("internal: generator outside its own lattice");
    mpz_class g = 0;
    for (const auto& v : *x) g = gcd(g, v);
    const bool ghost = std::binary_search(ghosts.begin(), ghosts.end(), static_cast<int>(j + 1));
    const bool prim = g == 1;
    r.primitive.push_back(ghost || prim);
    if (!ghost && !prim) r.generators_primitive = false;
    r.coordinates.push_back(std::move(*x));
  }
  const Face verts = f.complex.vertices();
  r.base = "toric base: rational complete fan, n=" + std::to_string(f.n) + ", " + std::to_string(verts.size()) +
           " rays";
  if (f.n > 0 && verts.size() == f.n + 1 && f.complex == boundary_simplex_on(verts, f.m())) {
    // the relation on the rays is spanned by one lattice vector supported on them
    for (const auto& v : r.lattice_basis) {
      bool on_rays = true;
      for (int g : ghosts)
        if (v[static_cast<std::size_t>(g - 1)] != 0) on_rays = false;
      if (!on_rays) continue;
      std::vector<mpz_class> w;
      for (int x : verts) w.push_back(v[static_cast<std::size_t>(x - 1)]);
      if (w[0] < 0)
        for (auto& x : w) x = -x;
      if (std::all_of(w.begin(), w.end(), [](const mpz_class& x) { return x > 0; })) r.weights = w;
    }
    if (!r.weights) {
      // lattice basis need not isolate the relation; recover it from the rays alone
      std::vector<ScalarVector> cols;
      for (int x : verts) cols.push_back(f.a(x));
      const auto rel = rational_solution_space(ScalarMatrix::from_columns(cols, f.n));
      if (rel.size() == 1) {
        std::vector<mpz_class> w;
        for (const auto& q : rel[0]) w.push_back(q.get_num());
        if (std::all_of(w.begin(), w.end(), [](const mpz_class& x) { return x > 0; })) r.weights = w;
      }
    }
    if (r.weights) {
      const bool plain = std::all_of(r.weights->begin(), r.weights->end(), [](const mpz_class& x) { return x == 1; });
      std::string w;
      for (std::size_t k = 0; k < r.weights->size(); ++k) w += (k ? "," : "") + (*r.weights)[k].get_str();
      r.base += plain ? "; projective space CP^" + std::to_string(f.n)
                      : "; weighted projective space CP^" + std::to_string(f.n) + "(" + w + ")";
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Coordinate submanifolds

struct CoordinateSubmanifold {
  Face j;
  SimplicialComplex k_j;
  std::size_t m_j = 0;
  /// Z_{K_J} ≠ ∅ iff [m] \ J ∈ K.
  bool nonempty = false;
  /// dim_C Z_{K_J} = |J| - ℓ when nonempty.
  std::optional<std::size_t> complex_dimension;
  /// dim span{a_i : i ∈ J}.
  std::size_t span_dimension = 0;
  /// K_J with the a_i (i ∈ J) in coordinates of their span.
  bool valid_fan = false, complete = false;
};

/// Restriction of the fan data to J, re-indexed 1..|J|, vectors expressed in
/// a basis of span{a_i : i ∈ J}.
inline FanData restrict_to(const FanData& f, const Face& j) {
  std::vector<ScalarVector> vs;
  for (int x : j) vs.push_back(f.a(x));
  std::vector<ScalarVector> basis;
  if (!vs.empty()) {
    ScalarMatrix mat = ScalarMatrix::from_columns(vs, f.n);
    for (auto p : rref(mat)) basis.push_back(vs[p]);
  }
  FanData out;
  out.n = basis.size();
  out.table = f.table;
  const ScalarMatrix b = basis.empty() ? ScalarMatrix(f.n, 0) : ScalarMatrix::from_columns(basis, f.n);
  for (const auto& v : vs) out.vectors.push_back(basis.empty() ? ScalarVector{} : *solve(b, v));
  std::vector<Face> faces;
  const SimplicialComplex kj = full_subcomplex(f.complex, j);
  for (const auto& face : kj.maximal_faces()) {
    Face g;
    for (int x : face) g.push_back(static_cast<int>(std::lower_bound(j.begin(), j.end(), x) - j.begin()) + 1);
    faces.push_back(std::move(g));
  }
  out.complex = SimplicialComplex(static_cast<int>(j.size()), std::move(faces));
  return out;
}

inline CoordinateSubmanifold coordinate_submanifold(const FanData& f, const Face& j, int max_bits = kDefaultMaxBits) {
  const Face js = make_face(j);
  for (int x : js)
    if (x < 1 || x > f.m()) throw InputError("vertex " + std::to_string(x) + " out of range");
  CoordinateSubmanifold s;
  s.j = js;
  s.k_j = full_subcomplex(f.complex, js);
  s.m_j = js.size();
  s.nonempty = f.complex.is_face(face_difference(full_range(f.m()), js));
  if (const auto ell = f.ell(); s.nonempty && ell && js.size() >= *ell) s.complex_dimension = js.size() - *ell;
  const FanData r = restrict_to(f, js);
  s.span_dimension = r.n;
  s.valid_fan = validate_fan(r, max_bits).ok();
  s.complete = s.valid_fan && is_complete(r, max_bits).complete;
  return s;
}

/// All J ⊆ [m] (m ≤ 16) in size-then-lex order, a linear extension of inclusion.
inline std::vector<CoordinateSubmanifold> coordinate_submanifolds(const FanData& f, int max_bits = kDefaultMaxBits) {
  f.check_shape();
  if (f.m() > 16) throw InputError("coordinate_submanifolds enumerates at most m = 16; pass an explicit J list");
  std::vector<CoordinateSubmanifold> out;
  for (const auto& j : all_subsets(full_range(f.m()))) out.push_back(coordinate_submanifold(f, j, max_bits));
  return out;
}

inline std::vector<CoordinateSubmanifold> coordinate_submanifolds(const FanData& f, const std::vector<Face>& family,
                                                                  int max_bits = kDefaultMaxBits) {
  f.check_shape();
  std::vector<Face> js;
  for (const auto& j : family) js.push_back(make_face(j));
  std::sort(js.begin(), js.end(), [](const Face& a, const Face& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  js.erase(std::unique(js.begin(), js.end()), js.end());
  std::vector<CoordinateSubmanifold> out;
  for (const auto& j : js) out.push_back(coordinate_submanifold(f, j, max_bits));
  return out;
}

}  // namespace mamlab
