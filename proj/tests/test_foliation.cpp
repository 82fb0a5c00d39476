#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <chrono>
#include <random>

#include "mamlab/fixtures.hpp"
#include "mamlab/foliation.hpp"
#include "lattice_oracle.hpp"

using namespace mamlab;

namespace {

std::vector<Problem> all_fixtures() {
  std::vector<Problem> out;
  for (const auto& name : fixture_names()) {
    if (name == "simplex-n") {
      for (int n = 1; n <= 4; ++n) out.push_back(fixture_simplex(n));
    } else {
      out.push_back(fixture(name));
    }
  }
  return out;
}

}  // namespace

TEST(GammaRank, Examples) {
  const FanData rat = fixture_hopf_rational().fan;
  EXPECT_EQ(gamma_rank(rat, {}), 2u);
  const FanData gen = fixture_hopf_generic().fan;
  EXPECT_EQ(gamma_rank(gen, {}), 0u);
  EXPECT_EQ(gamma_rank(gen, {1, 2}), 2u);
  EXPECT_EQ(gamma_rank(gen, {1}), 0u);  // γ_2 = uγ_3 + vγ_4 forces γ_2 = γ_3 = γ_4 = 0
  EXPECT_EQ(gamma_rank(fixture_torus1().fan, {}), 2u);
  EXPECT_THROW(gamma_rank(gen, {1, 2, 3}), DomainError);
  EXPECT_THROW(gamma_rank(gen, {4}), DomainError);
}

TEST(GammaRank, MatchesLatticeSearchOnEveryFace) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t faces = 0;
  for (const auto& p : all_fixtures())
    for (const auto& face : p.fan.complex.faces()) {
      EXPECT_EQ(gamma_rank(p.fan, face), oracle::brute_gamma_rank(p.fan, face)) << p.name << " " << face_text(face);
      ++faces;
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(secs, 30.0);
  EXPECT_GT(faces, 80u);
}

TEST(GammaRank, BoundsAndMonotonicity) {
  for (const auto& p : all_fixtures()) {
    const auto ell = p.fan.ell();
    const auto faces = p.fan.complex.faces();
    std::map<Face, std::size_t> rk;
    for (const auto& face : faces) rk[face] = gamma_rank(p.fan, face);
    for (const auto& a : faces)
      for (const auto& b : faces)
        if (is_subset(a, b)) { EXPECT_LE(rk[a], rk[b]) << p.name << " " << face_text(a) << " " << face_text(b); }
    if (!ell) continue;
    for (const auto& face : faces) EXPECT_LE(rk[face], 2 * *ell) << p.name;
    const bool complete = validate_fan(p.fan).ok() && is_complete(p.fan).complete;
    if (complete)
      for (const auto& face : p.fan.complex.maximal_faces())
        if (face.size() == p.fan.n) { EXPECT_EQ(rk[face], 2 * *ell) << p.name << " " << face_text(face); }
  }
}

TEST(LeafType, Examples) {
  const auto rat = leaf_type(fixture_hopf_rational().fan, {});
  EXPECT_EQ(rat.torus, 2u);
  EXPECT_EQ(rat.affine, 0u);
  EXPECT_TRUE(rat.compact);

  const FanData gen = fixture_hopf_generic().fan;
  const auto open = leaf_type(gen, {});
  EXPECT_EQ(open.torus, 0u);
  EXPECT_EQ(open.affine, 2u);
  EXPECT_FALSE(open.compact);
  EXPECT_EQ(open.f_leaf, "C^1 / (lattice of rank 0)");
  EXPECT_TRUE(leaf_type(gen, {2, 3}).compact);
  EXPECT_EQ(all_leaves(gen).size(), gen.complex.face_count());
}

TEST(Seifert, Examples) {
  const auto rat = detect_seifert(fixture_hopf_rational().fan);
  EXPECT_TRUE(rat.rational);
  EXPECT_TRUE(rat.generators_primitive);
  EXPECT_EQ(rat.lattice_basis.size(), 2u);
  EXPECT_NE(rat.base.find("n=2, 3 rays"), std::string::npos);
  EXPECT_NE(rat.base.find("projective space CP^2"), std::string::npos);
  ASSERT_TRUE(rat.weights.has_value());
  EXPECT_EQ(*rat.weights, (std::vector<mpz_class>{1, 1, 1}));

  const auto w = detect_seifert(fixture_hopf_weighted().fan);
  EXPECT_TRUE(w.rational);
  ASSERT_TRUE(w.weights.has_value());
  EXPECT_EQ(*w.weights, (std::vector<mpz_class>{1, 2, 1}));
  EXPECT_NE(w.base.find("CP^2(1,2,1)"), std::string::npos);

  EXPECT_FALSE(detect_seifert(fixture_hopf_generic().fan).rational);
  EXPECT_FALSE(detect_seifert(fixture_hopf_irr().fan).rational);
  EXPECT_TRUE(detect_seifert(fixture_torus1().fan).rational);

  // a_1 = 2 e_1 is twice a lattice vector of N_Z = Z^2
  FanData sq = fixture_square().fan;
  sq.vectors[0] = detail::ints({2, 0});
  const auto s = detect_seifert(sq);
  EXPECT_TRUE(s.rational);
  EXPECT_FALSE(s.generators_primitive);
  EXPECT_FALSE(s.primitive[0]);
  EXPECT_TRUE(s.primitive[1]);
}

TEST(Seifert, RationalIffFullRankAtEmptyFace) {
  for (const auto& p : all_fixtures()) {
    const auto ell = p.fan.ell();
    if (!ell) continue;
    EXPECT_EQ(detect_seifert(p.fan).rational, gamma_rank(p.fan, {}) == 2 * *ell) << p.name;
  }
}

TEST(Hermite, KernelLatticeIsSaturated) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> c(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + trial % 3, cols = rows + 1 + trial % 3;
    ZMatrix m(rows, std::vector<mpz_class>(cols));
    for (auto& r : m)
      for (auto& x : r) x = c(rng);
    const auto h = column_hermite(m, cols);
    // U is unimodular: det = ±1 by fraction-free elimination
    QMatrix u(cols, QVector(cols));
    for (std::size_t i = 0; i < cols; ++i)
      for (std::size_t j = 0; j < cols; ++j) u[i][j] = h.u[i][j];
    mpq_class det = 1;
    for (std::size_t k = 0; k < cols; ++k) {
      std::size_t p = k;
      while (p < cols && sgn(u[p][k]) == 0) ++p;
      ASSERT_LT(p, cols);
      if (p != k) {
        std::swap(u[p], u[k]);
        det = -det;
      }
      det *= u[k][k];
      for (std::size_t i = k + 1; i < cols; ++i) {
        const mpq_class f = u[i][k] / u[k][k];
        for (std::size_t j = k; j < cols; ++j) u[i][j] -= f * u[k][j];
      }
    }
    EXPECT_EQ(abs(det), 1);
    // C U = [H | 0]
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k) {
        mpz_class v = 0;
        for (std::size_t j = 0; j < cols; ++j) v += m[i][j] * h.u[j][k];
        EXPECT_EQ(v, k < h.rank ? h.h[i][k] : mpz_class(0));
      }
    QMatrix mq(rows, QVector(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) mq[i][j] = m[i][j];
    EXPECT_EQ(h.rank, rational_rank(mq, cols));
  }
}

TEST(CoordinateSubmanifolds, HopfAndSquare) {
  const FanData rat = fixture_hopf_rational().fan;
  const auto subs = coordinate_submanifolds(rat);
  ASSERT_EQ(subs.size(), 16u);
  const auto& top = subs.back();
  EXPECT_EQ(top.j, (Face{1, 2, 3, 4}));
  EXPECT_EQ(top.k_j, rat.complex);
  EXPECT_TRUE(top.nonempty);
  EXPECT_EQ(top.complex_dimension, std::optional<std::size_t>(3));
  EXPECT_TRUE(top.valid_fan && top.complete);
  const auto& empty = subs.front();
  EXPECT_TRUE(empty.j.empty());
  EXPECT_TRUE(empty.k_j.maximal_faces().empty());
  EXPECT_FALSE(empty.nonempty);
  const auto tri = coordinate_submanifold(rat, {1, 2, 3});
  EXPECT_EQ(tri.k_j, boundary_of_simplex(2, 4));
  EXPECT_FALSE(tri.nonempty);  // z_4 = 0 is excluded since {4} is a ghost
  EXPECT_TRUE(tri.valid_fan && tri.complete);

  const FanData sq = fixture_square().fan;
  const auto line = coordinate_submanifold(sq, {1, 3});
  EXPECT_EQ(line.span_dimension, 1u);
  EXPECT_TRUE(line.valid_fan && line.complete);
  EXPECT_FALSE(line.nonempty);
  const auto three = coordinate_submanifold(sq, {1, 2, 3});
  EXPECT_TRUE(three.nonempty);
  EXPECT_EQ(three.complex_dimension, std::optional<std::size_t>(2));
  EXPECT_FALSE(three.complete);
  // order is a linear extension of inclusion
  const auto all = coordinate_submanifolds(sq);
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = 0; b < a; ++b) EXPECT_FALSE(is_subset(all[a].j, all[b].j) && all[a].j != all[b].j);
  EXPECT_EQ(coordinate_submanifolds(sq, {{3, 1}, {1, 3}, {2}}).size(), 2u);
}
