#pragma once

// Exact feasibility LP over the ordered field Q(s).
//
// Phase-one simplex on a dense tableau with Bland's rule (lowest index enters,
// ties in the ratio test broken by the lowest basic index). Variables are
// free; each is split as x = x+ - x-. Both outcomes are re-verified exactly
// before returning.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "mamlab/error.hpp"
#include "mamlab/scalar/matrix.hpp"
#include "mamlab/scalar/sign.hpp"

namespace mamlab {

enum class Relation { Equal, GreaterEqual };

struct LinearConstraint {
  ScalarVector coeffs;
  Relation relation = Relation::GreaterEqual;
  Scalar rhs;
};

struct LPProblem {
  std::size_t variables = 0;
  std::vector<LinearConstraint> constraints;

  void add(ScalarVector coeffs, Relation rel, Scalar rhs) {
    if (coeffs.size() != variables) throw InputError("constraint length differs from variable count");
    constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
  }
  void add_equal(ScalarVector coeffs, Scalar rhs) { add(std::move(coeffs), Relation::Equal, std::move(rhs)); }
  void add_at_least(ScalarVector coeffs, Scalar rhs) {
    add(std::move(coeffs), Relation::GreaterEqual, std::move(rhs));
  }
};

struct Feasible {
  ScalarVector point;
};

/// Multipliers y, one per constraint, with y_i >= 0 on inequality rows,
/// sum_i y_i g_i = 0 and sum_i y_i h_i > 0: combining the rows gives 0 >= positive.
struct Infeasible {
  ScalarVector farkas;
};

using LPResult = std::variant<Feasible, Infeasible>;

inline bool is_feasible(const LPResult& r) { return std::holds_alternative<Feasible>(r); }

/// Exact check that x satisfies every constraint.
inline bool verify_point(const LPProblem& p, const ScalarVector& x, const SignOracle& sgn_of) {
  if (x.size() != p.variables) return false;
  for (const auto& c : p.constraints) {
    const Scalar slack = dot(c.coeffs, x) - c.rhs;
    if (c.relation == Relation::Equal ? !slack.is_zero() : sgn_of(slack) < 0) return false;
  }
  return true;
}

/// Exact check of a Farkas certificate.
inline bool verify_farkas(const LPProblem& p, const ScalarVector& y, const SignOracle& sgn_of) {
  if (y.size() != p.constraints.size()) return false;
  ScalarVector combo(p.variables);
  Scalar rhs;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto& c = p.constraints[i];
    if (c.relation == Relation::GreaterEqual && sgn_of(y[i]) < 0) return false;
    if (y[i].is_zero()) continue;
    for (std::size_t j = 0; j < p.variables; ++j)
      if (!c.coeffs[j].is_zero()) combo[j] += y[i] * c.coeffs[j];
    rhs += y[i] * c.rhs;
  }
  return is_zero_vector(combo) && sgn_of(rhs) > 0;
}

inline LPResult lp_feasible(const LPProblem& p, const SignOracle& sgn_of) {
  const std::size_t n = p.variables;
  const std::size_t rows = p.constraints.size();
  if (rows == 0) return Feasible{ScalarVector(n)};

  std::size_t surplus_count = 0;
  for (const auto& c : p.constraints) {
    if (c.coeffs.size() != n) throw InputError("constraint length differs from variable count");
    if (c.relation == Relation::GreaterEqual) ++surplus_count;
  }
  // column layout: x+ [0,n) | x- [n,2n) | surplus | artificial | rhs
  const std::size_t surplus0 = 2 * n;
  const std::size_t art0 = surplus0 + surplus_count;
  const std::size_t cols = art0 + rows;
  const std::size_t rhs_col = cols;

  std::vector<ScalarVector> t(rows, ScalarVector(cols + 1));
  std::vector<bool> flipped(rows, false);
  std::vector<std::size_t> basis(rows);
  std::size_t s = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& c = p.constraints[i];
    flipped[i] = sgn_of(c.rhs) < 0;
    const Scalar f = flipped[i] ? Scalar(-1) : Scalar(1);
    for (std::size_t j = 0; j < n; ++j) {
      if (c.coeffs[j].is_zero()) continue;
      t[i][j] = f * c.coeffs[j];
      t[i][n + j] = -t[i][j];
    }
    if (c.relation == Relation::GreaterEqual) t[i][surplus0 + s++] = -f;
    t[i][art0 + i] = Scalar(1);
    t[i][rhs_col] = f * c.rhs;
    basis[i] = art0 + i;
  }
  // reduced costs of the phase-one objective (sum of artificials)
  ScalarVector cost(cols + 1);
  for (std::size_t j = 0; j <= cols; ++j) {
    if (j >= art0 && j < cols) continue;
    Scalar acc;
    for (std::size_t i = 0; i < rows; ++i)
      if (!t[i][j].is_zero()) acc -= t[i][j];
    cost[j] = acc;
  }

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (!cost[j].is_zero() && sgn_of(cost[j]) < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;

    std::size_t leave = rows;
    Scalar best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter].is_zero() || sgn_of(t[i][enter]) <= 0) continue;
      const Scalar ratio = t[i][rhs_col] / t[i][enter];
      if (leave == rows) {
        leave = i;
        best = ratio;
        continue;
      }
      const int cmp = sgn_of.compare(ratio, best);
      if (cmp < 0 || (cmp == 0 && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) throw Error("phase-one simplex reported an unbounded direction");

    const Scalar inv = t[leave][enter].inverse();
    for (auto& v : t[leave])
      if (!v.is_zero()) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter].is_zero()) continue;
      const Scalar f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j)
        if (!t[leave][j].is_zero()) t[i][j] -= f * t[leave][j];
    }
    if (!cost[enter].is_zero()) {
      const Scalar f = cost[enter];
      for (std::size_t j = 0; j <= cols; ++j)
        if (!t[leave][j].is_zero()) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  Scalar infeasibility;
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] >= art0) infeasibility += t[i][rhs_col];

  if (sgn_of(infeasibility) > 0) {
    ScalarVector y(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      const Scalar yi = Scalar(1) - cost[art0 + i];
      y[i] = flipped[i] ? -yi : yi;
    }
    if (!verify_farkas(p, y, sgn_of)) throw Error("internal error: Farkas certificate failed verification");
    return Infeasible{std::move(y)};
  }

  ScalarVector x(n);
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < n) x[basis[i]] += t[i][rhs_col];
    else if (basis[i] < 2 * n) x[basis[i] - n] -= t[i][rhs_col];
  }
  if (!verify_point(p, x, sgn_of)) throw Error("internal error: feasible point failed verification");
  return Feasible{std::move(x)};
}

}  // namespace mamlab
