#include <gtest/gtest.h>

#include <random>

#include "mamlab/scalar/matrix.hpp"
#include "mamlab/scalar/parse.hpp"
#include "mamlab/scalar/relation.hpp"
#include "mamlab/scalar/sign.hpp"
#include "support.hpp"

using namespace mamlab;

namespace {

SymbolTable four_symbols() {
  SymbolTable t;
  t.add_sqrt("s", 2, 128);
  t.add_sqrt("t", 3, 128);
  t.add_sqrt("u", 5, 128);
  t.add_sqrt("v", 7, 128);
  return t;
}

Scalar P(const std::string& text, const SymbolTable& t) { return parse_scalar(text, t); }

ScalarMatrix matrix(const std::vector<std::vector<std::string>>& rows, const SymbolTable& t) {
  std::vector<ScalarVector> r;
  for (const auto& row : rows) {
    ScalarVector v;
    for (const auto& e : row) v.push_back(P(e, t));
    r.push_back(v);
  }
  return ScalarMatrix::from_rows(r, rows.empty() ? 0 : rows[0].size());
}

}  // namespace

TEST(Parse, Literal) {
  SymbolTable t;
  const Scalar x = P("3/4", t);
  ASSERT_TRUE(x.is_rational());
  EXPECT_EQ(x.rational_value(), mpq_class(3, 4));
}

TEST(Parse, CancellationIsCanonicalZero) {
  auto t = four_symbols();
  EXPECT_TRUE(P("(s - s)", t).is_zero());
  EXPECT_EQ(P("(s - s)", t), Scalar());
}

TEST(Parse, RationalFunctionReduces) {
  auto t = four_symbols();
  const Scalar x = P("(1+s)/(1-s) * (1-s)", t);
  EXPECT_EQ(x, Scalar(1) + Scalar::symbol(0));
  EXPECT_TRUE(x.denominator().is_one());
  // hand-reduced: (s*s - 1)/(s - 1) = s + 1
  EXPECT_EQ(P("(s*s - 1)/(s - 1)", t), x);
  EXPECT_EQ(P("(s*t - s*u)/(t - u)", t), Scalar::symbol(0));
}

TEST(Parse, Errors) {
  auto t = four_symbols();
  try {
    P("1 + * 2", t);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(P("w + 1", t), ParseError);
  EXPECT_THROW(P("1/(s - s)", t), ParseError);
  EXPECT_THROW(P("(1 + s", t), ParseError);
  EXPECT_THROW(P("", t), ParseError);
}

TEST(Parse, PrintForms) {
  auto t = four_symbols();
  EXPECT_EQ(P("0", t).to_string(t), "0");
  EXPECT_EQ(P("-3/4", t).to_string(t), P(P("-3/4", t).to_string(t), t).to_string(t));
  const Scalar x = P("(s*s - 2*t)/(u + 1)", t);
  EXPECT_EQ(P(x.to_string(t), t), x);
}

TEST(Sign, Examples) {
  SymbolTable t;
  t.add(Symbol{"s", mpq_class(141, 100), mpq_class(142, 100), std::nullopt});
  EXPECT_EQ(sign(Scalar(), t), 0);
  EXPECT_EQ(sign(Scalar::symbol(0), t), 1);
  EXPECT_EQ(sign(-Scalar::symbol(0), t), -1);
  EXPECT_EQ(sign(Scalar::symbol(0) - Scalar(mpq_class(3, 2)), t), -1);
}

TEST(Sign, NonCanonicalZeroExhaustsPrecision) {
  SymbolTable t;
  // s encloses sqrt(2) to 64 bits with no closed form to refine against
  const Interval r = Interval::sqrt_of(2, 64);
  mpq_class lo, hi;
  mpfr_get_q(lo.get_mpq_t(), r.lower().get());
  mpfr_get_q(hi.get_mpq_t(), r.upper().get());
  t.add(Symbol{"s", lo, hi, std::nullopt});
  const Scalar x = Scalar::symbol(0) * Scalar::symbol(0) - Scalar(2);
  EXPECT_FALSE(x.is_zero());
  EXPECT_THROW(sign(x, t, 256), PrecisionExhausted);
}

TEST(Sign, ClosedFormRefines) {
  auto t = four_symbols();
  // s + t - u = 0.9101963924421826459...
  EXPECT_EQ(sign(P("s + t - u - 9101963924421826459/10000000000000000000", t), t), 1);
  EXPECT_EQ(sign(P("s + t - u - 9101963924421826460/10000000000000000000", t), t), -1);
}

TEST(Kernel, SymbolicTwoByFour) {
  auto t = four_symbols();
  const auto m = matrix({{"1", "0", "-s", "-t"}, {"0", "1", "-u", "-v"}}, t);
  const auto basis = kernel_basis(m);
  ASSERT_EQ(basis.size(), 2u);
  for (const auto& x : basis) EXPECT_TRUE(is_zero_vector(m.apply(x)));
  EXPECT_EQ(basis[0], (ScalarVector{P("s", t), P("u", t), Scalar(1), Scalar()}));
  EXPECT_EQ(basis[1], (ScalarVector{P("t", t), P("v", t), Scalar(), Scalar(1)}));
}

TEST(Kernel, IdentityAndRational) {
  SymbolTable t;
  EXPECT_TRUE(kernel_basis(ScalarMatrix::identity(3)).empty());
  const auto m = matrix({{"1", "0", "1", "0"}, {"0", "1", "0", "1"}}, t);
  const auto basis = kernel_basis(m);
  ASSERT_EQ(basis.size(), 2u);
  EXPECT_EQ(basis[0], to_scalars({-1, 0, 1, 0}));
  EXPECT_EQ(basis[1], to_scalars({0, -1, 0, 1}));
}

TEST(Kernel, RandomDimensionPlusRank) {
  auto t = four_symbols();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> c(-2, 2), pick(0, 5);
  const std::vector<std::string> atoms = {"0", "1", "s", "t", "u*v", "(s - 1)/(t + 2)"};
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + trial % 3, cols = 2 + trial % 4;
    ScalarMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = P(atoms[pick(rng)], t).scaled(c(rng));
    if (trial % 5 == 0 && rows > 1)
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = m(0, j) * P("s + u", t);
    const auto basis = kernel_basis(m);
    EXPECT_EQ(basis.size() + rank(m), cols);
    for (const auto& x : basis) EXPECT_TRUE(is_zero_vector(m.apply(x)));
  }
}

TEST(RationalSolutions, Examples) {
  auto t = four_symbols();
  // one row: the constant part (0,0,1,0) and the s-part (1,1,0,0) leave x_4 free
  const auto one_row = rational_solution_space(matrix({{"s", "s", "1", "0"}}, t));
  ASSERT_EQ(one_row.size(), 2u);
  EXPECT_EQ(one_row[0], (QVector{1, -1, 0, 0}));
  EXPECT_EQ(one_row[1], (QVector{0, 0, 0, 1}));

  const auto g1 = rational_solution_space(matrix({{"s", "s", "1", "0"}, {"t", "t", "0", "1"}}, t));
  ASSERT_EQ(g1.size(), 1u);
  EXPECT_EQ(g1[0], (QVector{1, -1, 0, 0}));

  EXPECT_TRUE(rational_solution_space(matrix({{"s", "u", "1", "0"}, {"t", "v", "0", "1"}}, t)).empty());

  const auto q = rational_solution_space(matrix({{"1", "2", "3"}}, t));
  ASSERT_EQ(q.size(), 2u);
  for (const auto& x : q) EXPECT_EQ(x[0] + 2 * x[1] + 3 * x[2], 0);
}

TEST(RationalSolutions, SubsetOfScalarKernel) {
  auto t = four_symbols();
  const auto m = matrix({{"s", "1/s", "s - 1/s", "0", "t"}, {"u", "u", "0", "1", "0"}}, t);
  const auto sols = rational_solution_space(m);
  ASSERT_EQ(sols.size(), 1u);
  for (const auto& x : sols) EXPECT_TRUE(is_zero_vector(m.apply(to_scalars(x))));
}

TEST(Canonicality, RandomTreesAgreeAtRationalPoints) {
  SymbolTable t;
  t.add_sqrt("a", 2, 64);
  t.add_sqrt("b", 3, 64);
  t.add_sqrt("c", 5, 64);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-7, 7), den(1, 4);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto e1 = oracle::random_expr(rng, 3, 3);
    auto e2 = oracle::random_expr(rng, 3, 3);
    Scalar x, y;
    try {
      x = P(oracle::to_text(*e1, t), t);
      y = P(oracle::to_text(*e2, t), t);
    } catch (const ParseError&) {
      continue;  // a divisor was the zero Scalar
    }
    bool all_equal = true, any_point = false;
    for (int k = 0; k < 6; ++k) {
      std::vector<mpq_class> pt(3);
      for (auto& q : pt) q = mpq_class(num(rng), den(rng)), q.canonicalize();
      auto v1 = oracle::eval(*e1, pt), v2 = oracle::eval(*e2, pt);
      auto s1 = oracle::eval(x, pt);
      if (!v1 || !v2 || !s1) continue;
      any_point = true;
      EXPECT_EQ(*s1, *v1);
      if (*v1 != *v2) all_equal = false;
    }
    if (!any_point) continue;
    ++checked;
    // six agreeing random points for unequal functions would be a fluke we accept
    EXPECT_EQ((x - y).is_zero(), all_equal) << oracle::to_text(*e1, t) << " vs " << oracle::to_text(*e2, t);
    // the same function built two ways
    EXPECT_TRUE(((x + y) * (x - y) - (x * x - y * y)).is_zero());
    if (!y.is_zero()) { EXPECT_EQ((x * y) / y, x); }
  }
  EXPECT_GT(checked, 150);
}

TEST(RoundTrip, ThousandRandomTrees) {
  auto t = four_symbols();
  std::mt19937_64 rng(2024);
  int done = 0;
  while (done < 1000) {
    auto e = oracle::random_expr(rng, 4, 4);
    Scalar x;
    try {
      x = P(oracle::to_text(*e, t), t);
    } catch (const ParseError&) {
      continue;
    }
    const std::string printed = x.to_string(t);
    ASSERT_EQ(P(printed, t), x) << printed;
    EXPECT_EQ(P(printed, t).to_string(t), printed);
    ++done;
  }
}

TEST(Gcd, CommonFactorIsRecovered) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coef(-4, 4), var(0, 2), pw(0, 2), nterms(1, 4);
  auto random_poly = [&] {
    Polynomial p;
    const int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
      Polynomial t(coef(rng));
      for (int j = 0; j < 2; ++j) t = t * Polynomial(1).times_monomial(Monomial::variable(var(rng), pw(rng)));
      p = p + t;
    }
    return p;
  };
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Polynomial a = random_poly(), b = random_poly(), c = random_poly();
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    const Polynomial g = gcd(a * c, b * c);
    EXPECT_TRUE(divide_exact(g, c).has_value());
    EXPECT_TRUE(divide_exact(a * c, g).has_value());
    EXPECT_TRUE(divide_exact(b * c, g).has_value());
    // the cofactors are coprime
    EXPECT_TRUE(gcd(*divide_exact(a * c, g), *divide_exact(b * c, g)).is_one());
    if (certainly_coprime(a, b)) { EXPECT_TRUE(gcd(a, b).is_one()); }
    ++checked;
  }
  EXPECT_GT(checked, 150);
}

TEST(Relations, LllFindsPlantedShortVector) {
  // rows e_i | round(2^40 x_i) with x_2 = 3 x_0 - 2 x_1
  std::vector<mpq_class> x{mpq_class("7074237752028440/5000000000000000"), mpq_class("1732050807568877/1000000000000000")};
  x.push_back(3 * x[0] - 2 * x[1]);
  const mpz_class scale = mpz_class(1) << 40;
  std::vector<std::vector<mpz_class>> b;
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<mpz_class> row(4, 0);
    row[i] = 1;
    const mpq_class v = x[i] * scale;
    row[3] = v.get_num() / v.get_den();
    b.push_back(row);
  }
  lll_reduce(b);
  std::vector<mpz_class> c(b[0].begin(), b[0].begin() + 3);
  if (c[0] < 0)
    for (auto& e : c) e = -e;
  EXPECT_EQ(c, (std::vector<mpz_class>{3, -2, -1}));
}

TEST(Relations, SquareRootsAreFlagged) {
  // the only integer relations among 1, s_i, s_i s_j for s = sqrt(2), sqrt(3),
  // sqrt(5), sqrt(7) are combinations of s_i^2 = radicand
  const SymbolTable t = four_symbols();
  const RelationScan r = scan_symbol_relations(t);
  ASSERT_TRUE(r.performed);
  EXPECT_EQ(r.relations.size(), 4u);
  for (const auto& rel : r.relations) {
    mpz_class total = 0;
    for (std::size_t i = 0; i < rel.monomials.size(); ++i) {
      const std::string& m = rel.monomials[i];
      if (m == "1") {
        total += rel.coefficients[i];
        continue;
      }
      ASSERT_EQ(m.size(), 3u) << rel.text;
      ASSERT_EQ(m[0], m[2]) << rel.text;
      const auto idx = t.find(std::string(1, m[0]));
      ASSERT_TRUE(idx.has_value());
      total += rel.coefficients[i] * t[*idx].sqrt_radicand->get_num();
    }
    EXPECT_EQ(total, 0) << rel.text;
  }
}

TEST(Relations, PiHasNone) {
  SymbolTable t;
  const Interval p = Interval::pi(140);
  mpq_class lo, hi;
  mpfr_get_q(lo.get_mpq_t(), p.lower().get());
  mpfr_get_q(hi.get_mpq_t(), p.upper().get());
  t.add(Symbol{"p", lo, hi, std::nullopt});
  const RelationScan r = scan_symbol_relations(t);
  EXPECT_TRUE(r.performed);
  EXPECT_TRUE(r.relations.empty());
}

TEST(Relations, WideEnclosuresAreSkipped) {
  SymbolTable t;
  t.add(Symbol{"s", mpq_class(141, 100), mpq_class(142, 100), std::nullopt});
  const RelationScan r = scan_symbol_relations(t);
  EXPECT_FALSE(r.performed);
  EXPECT_TRUE(r.relations.empty());
}
