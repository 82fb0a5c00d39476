#pragma once

// Fan data {K; a_1, ..., a_m}: validation of the simplicial fan axioms,
// completeness, normal fans of polytopes, weak-normality certificates and
// quotient fans.

#include <cmath>
#include <cstddef>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mamlab/error.hpp"
#include "mamlab/scalar/lp.hpp"
#include "mamlab/scalar/matrix.hpp"
#include "mamlab/scalar/sign.hpp"
#include "mamlab/simplicial.hpp"

namespace mamlab {

struct FanData {
  SimplicialComplex complex;
  std::size_t n = 0;
  /// a_1, ..., a_m stored 0-based; use a(i) for the 1-based accessor.
  std::vector<ScalarVector> vectors;
  SymbolTable table;

  int m() const { return complex.m(); }
  const ScalarVector& a(int i) const { return vectors.at(static_cast<std::size_t>(i - 1)); }

  /// The n x m matrix of A: R^m -> R^n, e_i -> a_i.
  ScalarMatrix matrix() const { return ScalarMatrix::from_columns(vectors, n); }

  /// ℓ = (m - n)/2 when m - n is even and nonnegative.
  std::optional<std::size_t> ell() const {
    const int d = m() - static_cast<int>(n);
    if (d < 0 || d % 2) return std::nullopt;
    return static_cast<std::size_t>(d / 2);
  }

  void check_shape() const {
    if (vectors.size() != static_cast<std::size_t>(m()))
      throw InputError("expected " + std::to_string(m()) + " vectors, got " + std::to_string(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i)
      if (vectors[i].size() != n)
        throw InputError("vector a_" + std::to_string(i + 1) + " has length " + std::to_string(vectors[i].size()) +
                         ", expected " + std::to_string(n));
  }
};

/// The matrix whose columns are a_i, i ∈ I.
inline ScalarMatrix face_matrix(const FanData& f, const Face& i) {
  std::vector<ScalarVector> cols;
  for (int v : i) cols.push_back(f.a(v));
  return ScalarMatrix::from_columns(cols, f.n);
}

// ---------------------------------------------------------------------------
// validate_fan

struct OverlapViolation {
  Face first, second;
  /// Σ μ_i a_i = Σ ν_j a_j with every μ_i, ν_j ≥ 1.
  ScalarVector mu, nu;
};

struct FanValidation {
  std::vector<Face> dependent_faces;
  std::vector<OverlapViolation> overlaps;
  bool ok() const { return dependent_faces.empty() && overlaps.empty(); }
};

/// LP deciding whether relint σ_I ∩ relint σ_J ≠ ∅.
inline LPProblem overlap_lp(const FanData& f, const Face& i, const Face& j) {
  LPProblem p;
  p.variables = i.size() + j.size();
  for (std::size_t k = 0; k < p.variables; ++k) {
    ScalarVector e(p.variables);
    e[k] = Scalar(1);
    p.add_at_least(std::move(e), Scalar(1));
  }
  for (std::size_t r = 0; r < f.n; ++r) {
    ScalarVector row(p.variables);
    for (std::size_t k = 0; k < i.size(); ++k) row[k] = f.a(i[k])[r];
    for (std::size_t k = 0; k < j.size(); ++k) row[i.size() + k] = -f.a(j[k])[r];
    p.add_equal(std::move(row), Scalar());
  }
  return p;
}

/// Checks linear independence on every face and pairwise disjointness of the
/// relative interiors of cones. Every incomparable pair of nonempty faces is
/// tested, which covers the pairs of maximal faces; nested pairs are disjoint
/// automatically once the larger face is independent.
inline FanValidation validate_fan(const FanData& f, int max_bits = kDefaultMaxBits) {
  f.check_shape();
  const SignOracle oracle(f.table, max_bits);
  FanValidation report;
  const auto faces = f.complex.faces();
  std::vector<bool> independent(faces.size(), true);
  for (std::size_t k = 0; k < faces.size(); ++k) {
    if (faces[k].empty()) continue;
    if (rank(face_matrix(f, faces[k])) != faces[k].size()) {
      independent[k] = false;
      // report minimal dependent faces only
      bool minimal = true;
      for (const auto& d : report.dependent_faces)
        if (is_subset(d, faces[k])) minimal = false;
      if (minimal) report.dependent_faces.push_back(faces[k]);
    }
  }
  for (std::size_t x = 0; x < faces.size(); ++x) {
    if (faces[x].empty() || !independent[x]) continue;
    for (std::size_t y = x + 1; y < faces.size(); ++y) {
      if (faces[y].empty() || !independent[y]) continue;
      if (is_subset(faces[x], faces[y]) || is_subset(faces[y], faces[x])) continue;
      const LPProblem p = overlap_lp(f, faces[x], faces[y]);
      const LPResult r = lp_feasible(p, oracle);
      if (const auto* hit = std::get_if<Feasible>(&r)) {
        OverlapViolation v{faces[x], faces[y], {}, {}};
        v.mu.assign(hit->point.begin(), hit->point.begin() + static_cast<std::ptrdiff_t>(faces[x].size()));
        v.nu.assign(hit->point.begin() + static_cast<std::ptrdiff_t>(faces[x].size()), hit->point.end());
        report.overlaps.push_back(std::move(v));
      }
    }
  }
  return report;
}

/// Exact re-check of an overlap witness.
inline bool verify_overlap(const FanData& f, const OverlapViolation& v, const SignOracle& oracle) {
  if (v.mu.size() != v.first.size() || v.nu.size() != v.second.size()) return false;
  ScalarVector diff(f.n);
  for (std::size_t k = 0; k < v.first.size(); ++k) {
    if (oracle(v.mu[k] - Scalar(1)) < 0) return false;
    for (std::size_t r = 0; r < f.n; ++r) diff[r] += v.mu[k] * f.a(v.first[k])[r];
  }
  for (std::size_t k = 0; k < v.second.size(); ++k) {
    if (oracle(v.nu[k] - Scalar(1)) < 0) return false;
    for (std::size_t r = 0; r < f.n; ++r) diff[r] -= v.nu[k] * f.a(v.second[k])[r];
  }
  return is_zero_vector(diff);
}

// ---------------------------------------------------------------------------
// is_complete

struct CompletenessReport {
  bool complete = false;
  std::vector<std::string> diagnostics;
  std::optional<Face> failing_ridge;
};

/// Normal of the hyperplane spanned by a_r, r ∈ ridge (|ridge| = n - 1).
inline ScalarVector ridge_normal(const FanData& f, const Face& ridge) {
  std::vector<ScalarVector> rows;
  for (int v : ridge) rows.push_back(f.a(v));
  const auto k = kernel_basis(ScalarMatrix::from_rows(rows, f.n));
  if (k.size() != 1) throw DomainError("ridge " + face_text(ridge) + " does not span a hyperplane");
  return k[0];
}

inline CompletenessReport is_complete(const FanData& f, int max_bits = kDefaultMaxBits) {
  f.check_shape();
  const SignOracle oracle(f.table, max_bits);
  CompletenessReport rep;
  const auto facets = f.complex.facets();
  for (const auto& mx : facets)
    if (mx.size() != f.n) {
      rep.diagnostics.push_back("maximal face " + face_text(mx) + " has " + std::to_string(mx.size()) +
                                " vertices, expected " + std::to_string(f.n));
      return rep;
    }
  // adjacency through ridges
  std::vector<std::vector<std::size_t>> adjacent(facets.size());
  for (std::size_t x = 0; x < facets.size(); ++x) {
    for (int drop : facets[x]) {
      const Face ridge = face_difference(facets[x], Face{drop});
      std::vector<std::size_t> holders;
      for (std::size_t y = 0; y < facets.size(); ++y)
        if (is_subset(ridge, facets[y])) holders.push_back(y);
      if (holders.size() != 2) {
        rep.diagnostics.push_back("ridge " + face_text(ridge) + " lies in " + std::to_string(holders.size()) +
                                  " maximal cone(s), expected 2");
        rep.failing_ridge = ridge;
        return rep;
      }
      const std::size_t y = holders[0] == x ? holders[1] : holders[0];
      if (y < x) continue;  // each ridge is checked once, from its lower facet
      const int other = face_difference(facets[y], ridge).at(0);
      const ScalarVector h = ridge_normal(f, ridge);
      const int s1 = oracle(dot(h, f.a(drop)));
      const int s2 = oracle(dot(h, f.a(other)));
      if (s1 * s2 >= 0) {
        rep.diagnostics.push_back("across ridge " + face_text(ridge) + " the generators a_" + std::to_string(drop) +
                                  " and a_" + std::to_string(other) + " are not on opposite sides");
        rep.failing_ridge = ridge;
        return rep;
      }
      adjacent[x].push_back(y);
      adjacent[y].push_back(x);
    }
  }
  std::vector<bool> seen(facets.size(), false);
  std::queue<std::size_t> todo;
  todo.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!todo.empty()) {
    const std::size_t x = todo.front();
    todo.pop();
    for (std::size_t y : adjacent[x])
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        todo.push(y);
      }
  }
  if (reached != facets.size()) {
    rep.diagnostics.push_back("the dual graph of maximal cones is disconnected");
    return rep;
  }
  rep.complete = true;
  return rep;
}

/// Coefficients of v in the cone σ_I when a_I is independent and v lies in
/// its span; nullopt otherwise.
inline std::optional<ScalarVector> cone_coordinates(const FanData& f, const Face& i, const ScalarVector& v) {
  return solve(face_matrix(f, i), v);
}

// ---------------------------------------------------------------------------
// Polytopes and normal fans

/// P = {u : ⟨a_i, u⟩ + b_i ≥ 0 for all i}.
struct PolytopeH {
  std::size_t n = 0;
  std::vector<ScalarVector> vectors;
  ScalarVector offsets;
  SymbolTable table;

  std::size_t m() const { return vectors.size(); }
  Scalar slack(std::size_t i, const ScalarVector& u) const { return dot(vectors.at(i), u) + offsets.at(i); }
};

class PolytopeError : public DomainError {
 public:
  PolytopeError(std::string reason, const std::string& what) : DomainError(what), reason_(std::move(reason)) {}
  /// One of "empty", "unbounded", "not-full-dimensional", "not-simple".
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

inline bool polytope_bounded(const PolytopeH& p, const SignOracle& oracle) {
  for (std::size_t k = 0; k < p.n; ++k)
    for (int s : {1, -1}) {
      LPProblem lp;
      lp.variables = p.n;
      for (const auto& a : p.vectors) lp.add_at_least(a, Scalar());
      ScalarVector e(p.n);
      e[k] = Scalar(s);
      lp.add_at_least(std::move(e), Scalar(1));
      if (is_feasible(lp_feasible(lp, oracle))) return false;
    }
  return true;
}

/// A point u with ⟨a_i, u⟩ + b_i > 0 for all i, if one exists.
inline std::optional<ScalarVector> polytope_interior_point(const PolytopeH& p, const SignOracle& oracle) {
  LPProblem lp;
  lp.variables = p.n + 1;
  for (std::size_t i = 0; i < p.m(); ++i) {
    ScalarVector row = p.vectors[i];
    row.push_back(p.offsets[i]);
    lp.add_at_least(std::move(row), Scalar(1));
  }
  ScalarVector s(p.n + 1);
  s[p.n] = Scalar(1);
  lp.add_at_least(std::move(s), Scalar(1));
  const auto r = lp_feasible(lp, oracle);
  const auto* hit = std::get_if<Feasible>(&r);
  if (!hit) return std::nullopt;
  ScalarVector u(p.n);
  for (std::size_t k = 0; k < p.n; ++k) u[k] = hit->point[k] / hit->point[p.n];
  return u;
}

struct PolytopeVertex {
  ScalarVector u;
  /// Facets through the vertex (1-based).
  Face active;
};

/// Vertices by brute force over n-subsets of the facet hyperplanes.
inline std::vector<PolytopeVertex> polytope_vertices(const PolytopeH& p, const SignOracle& oracle) {
  std::vector<PolytopeVertex> out;
  const Face ground = full_range(static_cast<int>(p.m()));
  for (const Face& s : all_subsets(ground)) {
    if (s.size() != p.n) continue;
    std::vector<ScalarVector> rows;
    ScalarVector rhs;
    for (int i : s) {
      rows.push_back(p.vectors[static_cast<std::size_t>(i - 1)]);
      rhs.push_back(-p.offsets[static_cast<std::size_t>(i - 1)]);
    }
    const ScalarMatrix mat = ScalarMatrix::from_rows(rows, p.n);
    if (rank(mat) != p.n) continue;
    const auto u = solve(mat, rhs);
    if (!u) continue;
    bool inside = true;
    for (std::size_t i = 0; i < p.m() && inside; ++i) inside = oracle(p.slack(i, *u)) >= 0;
    if (!inside) continue;
    bool seen = false;
    for (const auto& v : out)
      if (v.u == *u) seen = true;
    if (seen) continue;
    PolytopeVertex v{*u, {}};
    for (std::size_t i = 0; i < p.m(); ++i)
      if (p.slack(i, *u).is_zero()) v.active.push_back(static_cast<int>(i + 1));
    out.push_back(std::move(v));
  }
  return out;
}

struct NormalFan {
  FanData fan;
  std::vector<PolytopeVertex> vertices;
};

inline void check_polytope(const PolytopeH& p, const SignOracle& oracle) {
  if (p.offsets.size() != p.m()) throw InputError("offsets and vectors differ in count");
  for (const auto& a : p.vectors)
    if (a.size() != p.n) throw InputError("polytope normal has wrong length");
  if (!polytope_bounded(p, oracle)) throw PolytopeError("unbounded", "polytope is unbounded or has no facets");
  if (!polytope_interior_point(p, oracle)) {
    LPProblem lp;
    lp.variables = p.n;
    for (std::size_t i = 0; i < p.m(); ++i) lp.add_at_least(p.vectors[i], -p.offsets[i]);
    if (!is_feasible(lp_feasible(lp, oracle))) throw PolytopeError("empty", "polytope is empty");
    throw PolytopeError("not-full-dimensional", "polytope is not full-dimensional");
  }
}

inline NormalFan normal_fan(const PolytopeH& p, int max_bits = kDefaultMaxBits) {
  const SignOracle oracle(p.table, max_bits);
  check_polytope(p, oracle);
  NormalFan out;
  out.vertices = polytope_vertices(p, oracle);
  std::vector<Face> incidences;
  for (const auto& v : out.vertices) {
    if (v.active.size() > p.n)
      throw PolytopeError("not-simple", "vertex on facets " + face_text(v.active) + " has more than " +
                                            std::to_string(p.n) + " active facets");
    incidences.push_back(v.active);
  }
  out.fan.complex = nerve_complex(incidences, static_cast<int>(p.m()));
  out.fan.n = p.n;
  out.fan.vectors = p.vectors;
  out.fan.table = p.table;
  return out;
}

// ---------------------------------------------------------------------------
// Weak normality

struct WeakNormalCertificate {
  ScalarVector b;
  /// Maximal faces of K in order; u[k] and beta[k] belong to faces[k].
  std::vector<Face> faces;
  std::vector<ScalarVector> u;
  /// beta[k][i-1] = ⟨a_i, u_k⟩ + b_i.
  std::vector<ScalarVector> beta;
  /// Power of two applied to the raw LP solution.
  mpq_class scale = 1;
  /// True when the strict system (slack ≥ 1 off each face) was feasible.
  bool strict = true;
  /// (face, i) pairs with i ∉ face forced to β = 0 (non-simple polytope).
  std::vector<std::pair<Face, int>> forced_zeros;
};

struct WeakNormalFailure {
  LPProblem problem;
  ScalarVector farkas;
  std::string reason;
};

using WeakNormalResult = std::variant<WeakNormalCertificate, WeakNormalFailure>;

/// Unknowns (b_1..b_m, u_{I_1}, ..., u_{I_s}). For every maximal I the rows
/// ⟨a_i, u_I⟩ + b_i = 0 (i ∈ I) and ⟨a_i, u_I⟩ + b_i ≥ t (i ∉ I).
inline LPProblem weak_normal_lp(const FanData& f, const Scalar& t) {
  const auto facets = f.complex.facets();
  const std::size_t m = static_cast<std::size_t>(f.m());
  LPProblem p;
  p.variables = m + facets.size() * f.n;
  for (std::size_t k = 0; k < facets.size(); ++k)
    for (std::size_t i = 1; i <= m; ++i) {
      ScalarVector row(p.variables);
      row[i - 1] = Scalar(1);
      for (std::size_t r = 0; r < f.n; ++r) row[m + k * f.n + r] = f.a(static_cast<int>(i))[r];
      const bool on = std::binary_search(facets[k].begin(), facets[k].end(), static_cast<int>(i));
      if (on) p.add_equal(std::move(row), Scalar());
      else p.add_at_least(std::move(row), t);
    }
  return p;
}

namespace detail {

/// Smallest k ∈ Z with 2^k v ≥ 2, for v > 0.
inline mpq_class power_of_two_scale(const Scalar& v, const SignOracle& oracle) {
  double approx = to_double(v, oracle.table());
  long k = approx > 0 ? static_cast<long>(std::ceil(std::log2(2.0 / approx))) : 0;
  auto factor = [](long e) {
    mpz_class p = 1;
    p <<= static_cast<mp_bitcnt_t>(std::labs(e));
    return e >= 0 ? mpq_class(p) : mpq_class(1, p);
  };
  while (oracle(v.scaled(factor(k)) - Scalar(2)) < 0) ++k;
  while (oracle(v.scaled(factor(k - 1)) - Scalar(2)) >= 0) --k;
  return factor(k);
}

inline WeakNormalCertificate certificate_from_solution(const FanData& f, const ScalarVector& x) {
  const auto facets = f.complex.facets();
  const std::size_t m = static_cast<std::size_t>(f.m());
  WeakNormalCertificate c;
  c.faces = facets;
  c.b.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m));
  for (std::size_t k = 0; k < facets.size(); ++k) {
    ScalarVector u(x.begin() + static_cast<std::ptrdiff_t>(m + k * f.n),
                   x.begin() + static_cast<std::ptrdiff_t>(m + (k + 1) * f.n));
    ScalarVector beta(m);
    for (std::size_t i = 0; i < m; ++i) beta[i] = dot(f.vectors[i], u) + c.b[i];
    c.u.push_back(std::move(u));
    c.beta.push_back(std::move(beta));
  }
  return c;
}

inline void apply_scale(WeakNormalCertificate& c, const SignOracle& oracle) {
  std::optional<Scalar> least;
  for (const auto& beta : c.beta)
    for (const auto& v : beta)
      if (!v.is_zero() && (!least || oracle.compare(v, *least) < 0)) least = v;
  if (!least) return;
  c.scale = power_of_two_scale(*least, oracle);
  for (auto& v : c.b) v = v.scaled(c.scale);
  for (auto& u : c.u)
    for (auto& v : u) v = v.scaled(c.scale);
  for (auto& beta : c.beta)
    for (auto& v : beta) v = v.scaled(c.scale);
}

}  // namespace detail

/// Exact check of every certificate invariant.
inline bool verify_certificate(const FanData& f, const WeakNormalCertificate& c, const SignOracle& oracle,
                               std::string* why = nullptr) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  const std::size_t m = static_cast<std::size_t>(f.m());
  if (c.faces != f.complex.facets()) return fail("faces differ from the maximal faces of K");
  if (c.b.size() != m || c.u.size() != c.faces.size() || c.beta.size() != c.faces.size())
    return fail("certificate shape mismatch");
  for (std::size_t k = 0; k < c.faces.size(); ++k) {
    if (c.u[k].size() != f.n || c.beta[k].size() != m) return fail("certificate shape mismatch");
    for (std::size_t i = 0; i < m; ++i) {
      const Scalar v = dot(f.vectors[i], c.u[k]) + c.b[i];
      if (!(v == c.beta[k][i])) return fail("beta entry differs from <a_i,u_I> + b_i");
      const bool on = std::binary_search(c.faces[k].begin(), c.faces[k].end(), static_cast<int>(i + 1));
      if (on && !v.is_zero()) return fail("beta nonzero on its face " + face_text(c.faces[k]));
      if (!v.is_zero() && oracle(v - Scalar(2)) < 0) return fail("nonzero beta entry below 2");
    }
  }
  return true;
}

/// The certificate determined by given offsets b, when one exists.
inline std::optional<WeakNormalCertificate> certificate_from_offsets(const FanData& f, const ScalarVector& b,
                                                                     int max_bits = kDefaultMaxBits) {
  const SignOracle oracle(f.table, max_bits);
  const std::size_t m = static_cast<std::size_t>(f.m());
  if (b.size() != m) throw InputError("offset vector has wrong length");
  ScalarVector x = b;
  for (const auto& face : f.complex.facets()) {
    std::vector<ScalarVector> rows;
    ScalarVector rhs;
    for (int i : face) {
      rows.push_back(f.a(i));
      rhs.push_back(-b[static_cast<std::size_t>(i - 1)]);
    }
    const auto u = face.empty() ? std::optional<ScalarVector>(ScalarVector(f.n))
                                : solve(ScalarMatrix::from_rows(rows, f.n), rhs);
    if (!u) return std::nullopt;
    x.insert(x.end(), u->begin(), u->end());
  }
  WeakNormalCertificate c = detail::certificate_from_solution(f, x);
  for (std::size_t k = 0; k < c.faces.size(); ++k)
    for (std::size_t i = 0; i < m; ++i) {
      const bool on = std::binary_search(c.faces[k].begin(), c.faces[k].end(), static_cast<int>(i + 1));
      const int s = oracle(c.beta[k][i]);
      if (s < 0) return std::nullopt;
      if (!on && s == 0) {
        c.strict = false;
        c.forced_zeros.emplace_back(c.faces[k], static_cast<int>(i + 1));
      }
    }
  detail::apply_scale(c, oracle);
  return c;
}

/// Searches for offsets b making Σ a simplicial subdivision of the normal fan
/// of P = {⟨a_i, u⟩ + b_i ≥ 0}.
///
/// First the strict system (slack ≥ 1 off each face). If that is infeasible
/// the non-strict system is solved coordinate by coordinate: each slack is
/// pushed to ≥ 1 in its own LP, the feasible solutions are summed to a point
/// of maximal support, and slacks that can never be positive are reported as
/// forced zeros. The result is accepted only if the polytope for the summed b
/// is bounded and full-dimensional.
inline WeakNormalResult weak_normal_certificate(const FanData& f, int max_bits = kDefaultMaxBits) {
  f.check_shape();
  const SignOracle oracle(f.table, max_bits);
  const LPProblem strict = weak_normal_lp(f, Scalar(1));
  const LPResult first = lp_feasible(strict, oracle);
  if (const auto* hit = std::get_if<Feasible>(&first)) {
    WeakNormalCertificate c = detail::certificate_from_solution(f, hit->point);
    detail::apply_scale(c, oracle);
    return c;
  }
  const ScalarVector farkas = std::get<Infeasible>(first).farkas;

  const LPProblem loose = weak_normal_lp(f, Scalar());
  ScalarVector total(loose.variables);
  std::vector<std::pair<Face, int>> forced;
  std::size_t row = 0;
  for (const auto& face : f.complex.facets())
    for (int i = 1; i <= f.m(); ++i, ++row) {
      if (std::binary_search(face.begin(), face.end(), i)) continue;
      LPProblem p = loose;
      p.constraints[row].rhs = Scalar(1);
      const LPResult r = lp_feasible(p, oracle);
      if (const auto* hit = std::get_if<Feasible>(&r)) {
        for (std::size_t k = 0; k < total.size(); ++k) total[k] += hit->point[k];
      } else {
        forced.emplace_back(face, i);
      }
    }
  WeakNormalCertificate c = detail::certificate_from_solution(f, total);
  PolytopeH poly{f.n, f.vectors, c.b, f.table};
  if (!polytope_bounded(poly, oracle) || !polytope_interior_point(poly, oracle))
    return WeakNormalFailure{strict, farkas, "no offsets give a full-dimensional polytope with the required incidences"};
  c.strict = false;
  c.forced_zeros = std::move(forced);
  detail::apply_scale(c, oracle);
  return c;
}

// ---------------------------------------------------------------------------
// Quotient fans

/// Rows spanning the annihilator of span{a_i : i ∈ I} in the dual space.
inline std::vector<ScalarVector> annihilator(const FanData& f, const Face& i) {
  if (i.empty()) {
    std::vector<ScalarVector> rows;
    for (std::size_t k = 0; k < f.n; ++k) {
      ScalarVector e(f.n);
      e[k] = Scalar(1);
      rows.push_back(std::move(e));
    }
    return rows;
  }
  std::vector<ScalarVector> rows;
  for (int v : i) rows.push_back(f.a(v));
  return kernel_basis(ScalarMatrix::from_rows(rows, f.n));
}

/// Σ/σ_I on the ground set [m]: complex lk_K I, vectors projected along
/// span{a_i : i ∈ I}. Elements of I become ghosts with zero vectors.
inline FanData quotient_fan(const FanData& f, const Face& i) {
  f.check_shape();
  if (!f.complex.is_face(i)) throw DomainError(face_text(i) + " is not a face");
  if (i.empty()) return f;
  const auto phi = annihilator(f, i);
  FanData q;
  q.complex = link(f.complex, i);
  q.n = phi.size();
  q.table = f.table;
  for (const auto& a : f.vectors) {
    ScalarVector v(q.n);
    for (std::size_t k = 0; k < q.n; ++k) v[k] = dot(phi[k], a);
    q.vectors.push_back(std::move(v));
  }
  return q;
}

}  // namespace mamlab
