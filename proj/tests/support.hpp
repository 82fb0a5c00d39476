#pragma once

// Test-only helpers: random expression trees, point evaluation, and the
// brute-force basic-solution LP oracle. Nothing here calls into the code
// paths it is used to check.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mamlab/scalar/lp.hpp"
#include "mamlab/scalar/parse.hpp"

namespace mamlab::oracle {

struct Expr {
  enum Kind { Lit, Sym, Add, Sub, Mul, Div, Neg } kind = Lit;
  mpq_class value;
  std::size_t symbol = 0;
  std::shared_ptr<Expr> a, b;
};
using ExprPtr = std::shared_ptr<Expr>;

inline ExprPtr random_expr(std::mt19937_64& rng, int depth, std::size_t nsyms) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  auto e = std::make_shared<Expr>();
  const int k = pick(rng);
  if (k == 0 || nsyms == 0) {
    std::uniform_int_distribution<int> num(0, 9), den(1, 5);
    e->kind = Expr::Lit;
    e->value = mpq_class(num(rng), den(rng));
    e->value.canonicalize();
  } else if (k == 1) {
    e->kind = Expr::Sym;
    e->symbol = std::uniform_int_distribution<std::size_t>(0, nsyms - 1)(rng);
  } else {
    e->kind = static_cast<Expr::Kind>(k);
    e->a = random_expr(rng, depth - 1, nsyms);
    if (e->kind != Expr::Neg) e->b = random_expr(rng, depth - 1, nsyms);
  }
  return e;
}

inline std::string to_text(const Expr& e, const SymbolTable& table) {
  switch (e.kind) {
    case Expr::Lit: return e.value.get_den() == 1 ? e.value.get_str() : "(" + e.value.get_str() + ")";
    case Expr::Sym: return table[e.symbol].name;
    case Expr::Neg: return "-(" + to_text(*e.a, table) + ")";
    default: break;
  }
  const char* op = e.kind == Expr::Add ? " + " : e.kind == Expr::Sub ? " - " : e.kind == Expr::Mul ? "*" : "/";
  return "(" + to_text(*e.a, table) + op + to_text(*e.b, table) + ")";
}

/// Direct evaluation of the tree at a rational point.
inline std::optional<mpq_class> eval(const Expr& e, const std::vector<mpq_class>& pt) {
  switch (e.kind) {
    case Expr::Lit: return e.value;
    case Expr::Sym: return pt.at(e.symbol);
    case Expr::Neg: {
      auto v = eval(*e.a, pt);
      if (!v) return std::nullopt;
      return mpq_class(-*v);
    }
    default: break;
  }
  auto x = eval(*e.a, pt), y = eval(*e.b, pt);
  if (!x || !y) return std::nullopt;
  switch (e.kind) {
    case Expr::Add: return mpq_class(*x + *y);
    case Expr::Sub: return mpq_class(*x - *y);
    case Expr::Mul: return mpq_class(*x * *y);
    default:
      if (sgn(*y) == 0) return std::nullopt;
      return mpq_class(*x / *y);
  }
}

inline mpq_class eval(const Polynomial& p, const std::vector<mpq_class>& pt) {
  mpq_class acc = 0;
  for (const auto& t : p.terms()) {
    mpq_class v = t.coeff;
    for (std::size_t i = 0; i < t.mono.size(); ++i)
      for (std::uint32_t k = 0; k < t.mono.exponent(i); ++k) v *= pt.at(i);
    acc += v;
  }
  return acc;
}

inline std::optional<mpq_class> eval(const Scalar& s, const std::vector<mpq_class>& pt) {
  const mpq_class d = eval(s.denominator(), pt);
  if (sgn(d) == 0) return std::nullopt;
  return mpq_class(eval(s.numerator(), pt) / d);
}

// ---------------------------------------------------------------------------
// LP oracle over Q: a nonempty polyhedron {Gx >= h, Ex = e} contains a point
// of a minimal face, and every minimal face is the solution set of some
// subset of its inequalities taken as equalities. Enumerate all subsets,
// solve, and test.

inline std::optional<std::vector<mpq_class>> solve_rational(std::vector<std::vector<mpq_class>> rows,
                                                            std::size_t nvars) {
  // rows: coefficients followed by the right-hand side
  std::size_t r = 0;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < nvars && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const mpq_class f = rows[i][c] / rows[r][c];
      for (std::size_t j = 0; j <= nvars; ++j) rows[i][j] -= f * rows[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (sgn(rows[i][nvars]) != 0) return std::nullopt;
  std::vector<mpq_class> x(nvars, 0);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = rows[i][nvars] / rows[i][piv[i]];
  return x;
}

struct RationalLP {
  std::size_t nvars = 0;
  std::vector<std::vector<mpq_class>> coeffs;
  std::vector<mpq_class> rhs;
  std::vector<bool> equality;
};

inline bool brute_force_feasible(const RationalLP& lp) {
  std::vector<std::size_t> ineq;
  for (std::size_t i = 0; i < lp.coeffs.size(); ++i)
    if (!lp.equality[i]) ineq.push_back(i);
  for (std::size_t mask = 0; mask < (std::size_t(1) << ineq.size()); ++mask) {
    std::vector<std::vector<mpq_class>> sys;
    for (std::size_t i = 0; i < lp.coeffs.size(); ++i) {
      bool tight = lp.equality[i];
      for (std::size_t k = 0; k < ineq.size(); ++k)
        if (ineq[k] == i && (mask >> k & 1)) tight = true;
      if (!tight) continue;
      auto row = lp.coeffs[i];
      row.push_back(lp.rhs[i]);
      sys.push_back(std::move(row));
    }
    auto x = solve_rational(sys, lp.nvars);
    if (!x) continue;
    bool ok = true;
    for (std::size_t i = 0; i < lp.coeffs.size() && ok; ++i) {
      mpq_class v = 0;
      for (std::size_t j = 0; j < lp.nvars; ++j) v += lp.coeffs[i][j] * (*x)[j];
      ok = lp.equality[i] ? v == lp.rhs[i] : v >= lp.rhs[i];
    }
    if (ok) return true;
  }
  return false;
}

inline RationalLP random_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nv(1, 4), nc(1, 8), coef(-3, 3), kind(0, 4);
  RationalLP lp;
  lp.nvars = static_cast<std::size_t>(nv(rng));
  const int rows = nc(rng);
  for (int i = 0; i < rows; ++i) {
    std::vector<mpq_class> row(lp.nvars);
    for (auto& c : row) c = coef(rng);
    lp.coeffs.push_back(std::move(row));
    lp.rhs.emplace_back(coef(rng));
    lp.equality.push_back(kind(rng) == 0);
  }
  return lp;
}

inline LPProblem to_problem(const RationalLP& lp) {
  LPProblem p;
  p.variables = lp.nvars;
  for (std::size_t i = 0; i < lp.coeffs.size(); ++i)
    p.add(to_scalars(lp.coeffs[i]), lp.equality[i] ? Relation::Equal : Relation::GreaterEqual, Scalar(lp.rhs[i]));
  return p;
}

}  // namespace mamlab::oracle
