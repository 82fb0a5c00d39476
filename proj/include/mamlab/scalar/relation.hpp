#pragma once

// Heuristic search for integer relations among the monomials of degree <= 2
// in the declared symbols. Only ever used to warn: the symbols are assumed
// algebraically independent and nothing downstream consults this result.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "mamlab/scalar/interval.hpp"
#include "mamlab/scalar/symbols.hpp"

namespace mamlab {

/// LLL reduction (delta = 3/4) of the rows of `b`, which must be linearly
/// independent. Exact rational Gram-Schmidt with the standard swap update.
inline void lll_reduce(std::vector<std::vector<mpz_class>>& b) {
  const std::size_t n = b.size();
  if (n < 2) return;
  const std::size_t dim = b[0].size();
  std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
  std::vector<mpq_class> B(n);
  {
    std::vector<std::vector<mpq_class>> star(n, std::vector<mpq_class>(dim));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < dim; ++c) star[i][c] = b[i][c];
      for (std::size_t j = 0; j < i; ++j) {
        mpq_class d = 0;
        for (std::size_t c = 0; c < dim; ++c) d += b[i][c] * star[j][c];
        mu[i][j] = d / B[j];
        for (std::size_t c = 0; c < dim; ++c) star[i][c] -= mu[i][j] * star[j][c];
      }
      B[i] = 0;
      for (std::size_t c = 0; c < dim; ++c) B[i] += star[i][c] * star[i][c];
    }
  }
  auto round = [](const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), mpz_class(2 * q.get_num() + q.get_den()).get_mpz_t(),
               mpz_class(2 * q.get_den()).get_mpz_t());
    return r;
  };
  auto reduce = [&](std::size_t k, std::size_t j) {
    const mpz_class q = round(mu[k][j]);
    if (q == 0) return;
    for (std::size_t c = 0; c < dim; ++c) b[k][c] -= q * b[j][c];
    for (std::size_t l = 0; l < j; ++l) mu[k][l] -= q * mu[j][l];
    mu[k][j] -= q;
  };
  const mpq_class delta(3, 4);
  std::size_t k = 1;
  while (k < n) {
    reduce(k, k - 1);
    if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      for (std::size_t j = k - 1; j-- > 0;) reduce(k, j);
      ++k;
      continue;
    }
    const mpq_class m = mu[k][k - 1];
    const mpq_class Bn = B[k] + m * m * B[k - 1];
    mu[k][k - 1] = m * B[k - 1] / Bn;
    B[k] = B[k - 1] * B[k] / Bn;
    B[k - 1] = Bn;
    std::swap(b[k], b[k - 1]);
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const mpq_class t = mu[i][k];
      mu[i][k] = mu[i][k - 1] - m * t;
      mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
    }
    if (k > 1) --k;
  }
}

struct SymbolRelation {
  std::vector<std::string> monomials;
  std::vector<mpz_class> coefficients;
  std::string text;
};

struct RelationScan {
  bool performed = false;
  std::string note;
  std::vector<SymbolRelation> relations;
};

/// Lattice-reduces e_i | round(2^p v_i) over the monomial values v_i, with p
/// half the stated enclosure precision, and keeps the reduced vectors whose
/// combination still encloses zero at full precision.
inline RelationScan scan_symbol_relations(const SymbolTable& table, std::size_t max_symbols = 8) {
  RelationScan out;
  const std::size_t k = table.size();
  if (k == 0) {
    out.note = "no symbols";
    return out;
  }
  if (k > max_symbols) {
    out.note = "too many symbols for the relation scan";
    return out;
  }
  const int bits = std::min(table.stated_precision(), 512);
  if (bits < 32) {
    out.note = "enclosures too wide for the relation scan";
    return out;
  }
  const mpfr_prec_t prec = bits + 64;
  std::vector<std::string> names{"1"};
  std::vector<Interval> values{Interval::from_rational(1, prec)};
  std::vector<mpq_class> mids{1};
  std::vector<Interval> sym;
  std::vector<mpq_class> sym_mid;
  for (std::size_t i = 0; i < k; ++i) {
    sym.push_back(table.enclosure(i, prec));
    sym_mid.push_back((table[i].lo + table[i].hi) / 2);
    names.push_back(table[i].name);
    values.push_back(sym.back());
    mids.push_back(sym_mid.back());
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      names.push_back(table[i].name + "*" + table[j].name);
      values.push_back(sym[i] * sym[j]);
      mids.push_back(sym_mid[i] * sym_mid[j]);
    }
  const std::size_t d = names.size();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(bits / 2));
  std::vector<std::vector<mpz_class>> basis(d, std::vector<mpz_class>(d + 1, 0));
  for (std::size_t i = 0; i < d; ++i) {
    basis[i][i] = 1;
    const mpq_class v = mids[i] * scale;
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
    basis[i][d] = r;
  }
  lll_reduce(basis);
  out.performed = true;
  for (const auto& row : basis) {
    Interval sum = Interval::from_rational(0, prec);
    bool nonzero = false;
    for (std::size_t i = 0; i < d; ++i) {
      if (row[i] == 0) continue;
      nonzero = true;
      sum = sum + Interval::from_rational(mpq_class(row[i]), prec) * values[i];
    }
    if (!nonzero || sum.certain_sign() != 0) continue;
    SymbolRelation r;
    for (std::size_t i = 0; i < d; ++i) {
      if (row[i] == 0) continue;
      r.monomials.push_back(names[i]);
      r.coefficients.push_back(row[i]);
      if (!r.text.empty()) r.text += row[i] < 0 ? " - " : " + ";
      else if (row[i] < 0) r.text += "-";
      const mpz_class a = abs(row[i]);
      if (names[i] == "1") r.text += a.get_str();
      else r.text += (a == 1 ? std::string() : a.get_str() + "*") + names[i];
    }
    r.text += " = 0";
    out.relations.push_back(std::move(r));
  }
  return out;
}

}  // namespace mamlab
