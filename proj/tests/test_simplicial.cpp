#include <gtest/gtest.h>

#include <random>

#include "mamlab/simplicial.hpp"

using namespace mamlab;

namespace {

SimplicialComplex square_boundary() { return SimplicialComplex(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}); }

SimplicialComplex random_complex(std::mt19937_64& rng, int m) {
  std::uniform_int_distribution<int> count(0, 5), bit(0, 2);
  std::vector<Face> faces;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    Face f;
    for (int v = 1; v <= m; ++v)
      if (bit(rng) == 0) f.push_back(v);
    faces.push_back(f);
  }
  return SimplicialComplex(m, faces);
}

}  // namespace

TEST(IsFace, BoundaryOfTriangle) {
  const auto k = boundary_of_simplex(2, 3);
  EXPECT_TRUE(k.is_face({1, 2}));
  EXPECT_FALSE(k.is_face({1, 2, 3}));
  EXPECT_TRUE(k.is_face({}));
  EXPECT_TRUE(empty_complex(3).is_face({}));
  EXPECT_THROW(k.is_face({4}), InputError);
}

TEST(FullSubcomplex, Examples) {
  const auto k = boundary_of_simplex(2, 3);
  const auto kj = full_subcomplex(k, {1, 2});
  EXPECT_EQ(kj.maximal_faces(), (std::vector<Face>{{1, 2}}));
  EXPECT_EQ(full_subcomplex(k, {1, 2, 3}), k);
  const auto e = full_subcomplex(k, {});
  EXPECT_TRUE(e.maximal_faces().empty());
  EXPECT_EQ(e.ghosts(), (Face{1, 2, 3}));
}

TEST(Link, Examples) {
  const auto k = boundary_of_simplex(2, 3);
  EXPECT_EQ(link(k, {1}).maximal_faces(), (std::vector<Face>{{2}, {3}}));
  EXPECT_EQ(link(k, {}), k);
  EXPECT_EQ(link(square_boundary(), {2}).maximal_faces(), (std::vector<Face>{{1}, {3}}));
  EXPECT_THROW(link(k, {1, 2, 3}), DomainError);
}

TEST(Nerve, Examples) {
  // square with facets 1..4 in cyclic order: vertices lie on adjacent pairs
  EXPECT_EQ(nerve_complex({{1, 2}, {2, 3}, {3, 4}, {4, 1}}, 4), square_boundary());
  EXPECT_EQ(nerve_complex({{2, 3}, {1, 3}, {1, 2}}, 3), boundary_of_simplex(2, 3));
  EXPECT_EQ(nerve_complex({{1}, {2}}, 2).maximal_faces(), (std::vector<Face>{{1}, {2}}));
  EXPECT_THROW(nerve_complex({}, 2), InputError);
}

TEST(Generators, Examples) {
  const auto k = boundary_of_simplex(2, 4);
  EXPECT_EQ(k.maximal_faces(), (std::vector<Face>{{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(k.ghosts(), (Face{4}));
  const auto e = empty_complex(2);
  EXPECT_EQ(e.face_count(), 1u);
  EXPECT_EQ(e.ghosts(), (Face{1, 2}));
  const auto j = join(boundary_of_simplex(1, 2), boundary_of_simplex(1, 2));
  EXPECT_EQ(j.maximal_faces(), (std::vector<Face>{{1, 3}, {1, 4}, {2, 3}, {2, 4}}));
  EXPECT_THROW(boundary_of_simplex(3, 3), InputError);
}

TEST(Properties, DownwardClosure) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto k = random_complex(rng, 6);
    for (const auto& f : k.faces()) {
      ASSERT_TRUE(k.is_face(f));
      for (const auto& g : all_subsets(f)) EXPECT_TRUE(k.is_face(g));
    }
    // faces() is exactly the set of subsets passing is_face
    std::size_t count = 0;
    for (const auto& f : all_subsets(full_range(6))) count += k.is_face(f);
    EXPECT_EQ(count, k.face_count());
  }
}

TEST(Properties, FullSubcomplexComposes) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto k = random_complex(rng, 6);
    Face j, jp;
    for (int v = 1; v <= 6; ++v) {
      if (bit(rng)) j.push_back(v);
      if (bit(rng)) jp.push_back(v);
    }
    EXPECT_EQ(full_subcomplex(full_subcomplex(k, j), jp), full_subcomplex(k, face_intersection(j, jp)));
  }
}

TEST(Properties, LinkAndJoinCounts) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_complex(rng, 4), b = random_complex(rng, 3);
    EXPECT_EQ(link(a, {}), a);
    EXPECT_EQ(join(a, b).face_count(), a.face_count() * b.face_count());
  }
}
