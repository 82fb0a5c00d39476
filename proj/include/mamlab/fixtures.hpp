#pragma once

// Built-in example inputs.

#include <string>
#include <vector>

#include "mamlab/error.hpp"
#include "mamlab/problem.hpp"

namespace mamlab {

namespace detail {

inline ScalarVector ints(std::initializer_list<long> v) {
  ScalarVector out;
  for (long x : v) out.emplace_back(x);
  return out;
}

inline ScalarVector ones(std::size_t m) { return ScalarVector(m, Scalar(1)); }

inline Complex cx(const Scalar& re, const Scalar& im) { return {re, im}; }

inline SymbolTable sqrt_symbols(const std::vector<std::pair<std::string, long>>& names, int bits = 128) {
  SymbolTable t;
  for (const auto& [name, radicand] : names) t.add_sqrt(name, radicand, bits);
  return t;
}

}  // namespace detail

/// Elliptic curve C/(Z ⊕ iZ): n = 0, m = 2, K = {∅}, Ψ(w) = (iw, w).
inline Problem fixture_torus1() {
  Problem p;
  p.name = "torus-1";
  p.fan.complex = empty_complex(2);
  p.fan.n = 0;
  p.fan.vectors = {ScalarVector{}, ScalarVector{}};
  p.psi = PsiMap::from_columns({{detail::cx(0, 1), detail::cx(1, 0)}}, 2);
  return p;
}

/// Hopf surface with λ = (1,1,1): a = e_1, e_2, -e_1-e_2 and a zero ghost.
inline Problem fixture_hopf_rational() {
  Problem p;
  p.name = "hopf-rational";
  p.fan.complex = boundary_of_simplex(2, 4);
  p.fan.n = 2;
  p.fan.vectors = {detail::ints({1, 0}), detail::ints({0, 1}), detail::ints({-1, -1}), detail::ints({0, 0})};
  const Complex i = detail::cx(0, 1);
  p.psi = PsiMap::from_columns({{i, i, i, detail::cx(1, 0)}}, 4);
  p.offsets = detail::ones(4);
  return p;
}

/// Hopf surface with weights λ = (1,2,1): a_3 = -a_1 - 2a_2.
inline Problem fixture_hopf_weighted() {
  Problem p;
  p.name = "hopf-weighted";
  p.fan.complex = boundary_of_simplex(2, 4);
  p.fan.n = 2;
  p.fan.vectors = {detail::ints({1, 0}), detail::ints({0, 1}), detail::ints({-1, -2}), detail::ints({0, 0})};
  p.psi = PsiMap::from_columns({{detail::cx(0, 1), detail::cx(0, 2), detail::cx(0, 1), detail::cx(1, 0)}}, 4);
  p.offsets = detail::ones(4);
  return p;
}

/// Hopf surface with a_3 = (-s,-u), a_4 = (-t,-v); s,t,u,v = √2, √3, √5, √7
/// to 128 bits, declared algebraically independent.
inline Problem fixture_hopf_generic() {
  Problem p;
  p.name = "hopf-generic";
  p.fan.table = detail::sqrt_symbols({{"s", 2}, {"t", 3}, {"u", 5}, {"v", 7}});
  const Scalar s = Scalar::symbol(0), t = Scalar::symbol(1), u = Scalar::symbol(2), v = Scalar::symbol(3);
  p.fan.complex = boundary_of_simplex(2, 4);
  p.fan.n = 2;
  p.fan.vectors = {detail::ints({1, 0}), detail::ints({0, 1}), ScalarVector{-s, -u}, ScalarVector{-t, -v}};
  p.psi = PsiMap::from_columns({{detail::cx(s, t), detail::cx(u, v), detail::cx(1, 0), detail::cx(0, 1)}}, 4);
  p.offsets = ScalarVector{Scalar(1), Scalar(1), Scalar(1), Scalar(2)};
  return p;
}

/// Two-symbol variant with a_3 = (-s,-s), a_4 = (-t,-t): Ker A lies in the
/// rational hyperplane x_1 = x_2.
inline Problem fixture_hopf_irr() {
  Problem p;
  p.name = "hopf-irr";
  p.fan.table = detail::sqrt_symbols({{"s", 2}, {"t", 3}});
  const Scalar s = Scalar::symbol(0), t = Scalar::symbol(1);
  p.fan.complex = boundary_of_simplex(2, 4);
  p.fan.n = 2;
  p.fan.vectors = {detail::ints({1, 0}), detail::ints({0, 1}), ScalarVector{-s, -s}, ScalarVector{-t, -t}};
  p.psi = PsiMap::from_columns({{detail::cx(s, t), detail::cx(s, t), detail::cx(1, 0), detail::cx(0, 1)}}, 4);
  return p;
}

/// Calabi–Eckmann S^3 x S^3: a = ±e_i, K the boundary of the square.
inline Problem fixture_square() {
  Problem p;
  p.name = "square";
  p.fan.complex = SimplicialComplex(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
  p.fan.n = 2;
  p.fan.vectors = {detail::ints({1, 0}), detail::ints({0, 1}), detail::ints({-1, 0}), detail::ints({0, -1})};
  const Complex one = detail::cx(1, 0), i = detail::cx(0, 1);
  p.psi = PsiMap::from_columns({{one, i, one, i}}, 4);
  p.offsets = detail::ones(4);
  return p;
}

/// ∂Δ^n with rays e_1, ..., e_n, -Σe_i and one zero ghost vector (m = n + 2).
inline Problem fixture_simplex(int n) {
  if (n < 1 || n > 8) throw InputError("simplex-n needs 1 <= n <= 8");
  Problem p;
  p.name = "simplex-" + std::to_string(n);
  const std::size_t nn = static_cast<std::size_t>(n);
  p.fan.complex = boundary_of_simplex(n, n + 2);
  p.fan.n = nn;
  for (std::size_t k = 0; k < nn; ++k) {
    ScalarVector e(nn);
    e[k] = Scalar(1);
    p.fan.vectors.push_back(std::move(e));
  }
  p.fan.vectors.push_back(ScalarVector(nn, Scalar(-1)));
  p.fan.vectors.push_back(ScalarVector(nn));
  std::vector<Complex> col(nn + 2, detail::cx(0, 1));
  col.back() = detail::cx(1, 0);
  p.psi = PsiMap::from_columns({col}, nn + 2);
  p.offsets = detail::ones(nn + 2);
  return p;
}

/// Two cones whose interiors overlap: σ_{13} lies inside σ_{12}.
inline Problem fixture_overlap() {
  Problem p;
  p.name = "overlap";
  p.fan.complex = SimplicialComplex(3, {{1, 2}, {1, 3}});
  p.fan.n = 2;
  p.fan.vectors = {detail::ints({1, 0}), detail::ints({0, 1}), detail::ints({1, 1})};
  return p;
}

/// A single quadrant: a valid fan that is not complete.
inline Problem fixture_quadrant() {
  Problem p;
  p.name = "quadrant";
  p.fan.complex = SimplicialComplex(2, {{1, 2}});
  p.fan.n = 2;
  p.fan.vectors = {detail::ints({1, 0}), detail::ints({0, 1})};
  return p;
}

/// A hexagonal fan with ℓ = 2 and a Ψ for which c + (span{e_1..e_4} ⊗ C) is
/// a proper subspace meeting c̄ with rational imaginary part.
inline Problem fixture_degenerate_psi() {
  Problem p;
  p.name = "degenerate-psi";
  p.fan.table = detail::sqrt_symbols({{"p", 2}, {"q", 3}, {"r", 5}, {"w", 7}});
  const Scalar sp = Scalar::symbol(0), sq = Scalar::symbol(1), sr = Scalar::symbol(2), sw = Scalar::symbol(3);
  p.fan.complex = SimplicialComplex(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 6}});
  p.fan.n = 2;
  p.fan.vectors = {detail::ints({1, 0}), detail::ints({0, 1}), ScalarVector{-sp, sq},
                   detail::ints({-1, 0}), ScalarVector{-sr, -sw}, detail::ints({0, -1})};
  const Scalar z, o(1);
  // columns q1 + i q2 and r1 + i r2
  const ScalarVector q1{o, z, z, o, z, z}, q2{sp, -sq, o, z, z, z};
  const ScalarVector r1{sr, sw, z, z, o, z}, r2{z, o, z, z, z, o};
  std::vector<Complex> c1, c2;
  for (std::size_t k = 0; k < 6; ++k) {
    c1.push_back({q1[k], q2[k]});
    c2.push_back({r1[k], r2[k]});
  }
  p.psi = PsiMap::from_columns({c1, c2}, 6);
  std::vector<QVector> w;
  for (std::size_t k = 0; k < 4; ++k) {
    QVector e(6, 0);
    e[k] = 1;
    w.push_back(std::move(e));
  }
  p.candidates = {w};
  return p;
}

inline std::vector<std::string> fixture_names() {
  return {"torus-1", "hopf-rational", "hopf-generic", "square", "simplex-n", "hopf-irr", "hopf-weighted",
          "overlap", "quadrant", "degenerate-psi"};
}

inline Problem fixture(const std::string& name) {
  if (name == "torus-1") return fixture_torus1();
  if (name == "hopf-rational") return fixture_hopf_rational();
  if (name == "hopf-generic") return fixture_hopf_generic();
  if (name == "hopf-irr") return fixture_hopf_irr();
  if (name == "hopf-weighted") return fixture_hopf_weighted();
  if (name == "square") return fixture_square();
  if (name == "overlap") return fixture_overlap();
  if (name == "quadrant") return fixture_quadrant();
  if (name == "degenerate-psi") return fixture_degenerate_psi();
  if (name.rfind("simplex-", 0) == 0) {
    const std::string tail = name.substr(8);
    if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("unknown fixture '" + name + "'");
    return fixture_simplex(std::stoi(tail));
  }
  throw InputError("unknown fixture '" + name + "'");
}

}  // namespace mamlab
