#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mamlab/fixtures.hpp"
#include "mamlab/kahler.hpp"

using namespace mamlab;

namespace {

BetaSystem betas(const Problem& p) {
  const auto r = weak_normal_certificate(p.fan);
  return beta_vectors(p.fan, std::get<WeakNormalCertificate>(r));
}

PolytopeH polytope(const Problem& p) { return PolytopeH{p.fan.n, p.fan.vectors, *p.offsets, p.fan.table}; }

const ScalarVector& beta_of(const BetaSystem& b, const Face& f) {
  for (std::size_t k = 0; k < b.faces.size(); ++k)
    if (b.faces[k] == f) return b.beta[k];
  throw std::runtime_error("no such face");
}

PointC ones(std::size_t m) { return PointC(m, 1.0); }

PointC random_point(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> x(-1, 1), th(0, 6.283185307179586);
  PointC z(m);
  for (auto& c : z) c = std::polar(std::exp(x(rng)), th(rng));
  return z;
}

/// d²/dt² f(e^{tλ_1} z_1, ...) by Richardson on central differences of the
/// potential evaluated at scaled complex points. The step is matched to the
/// spread of ⟨β_I, λ⟩, the rate at which the softmax weights move.
double fd_oracle(const BetaSystem& b, const PointC& z, const Eigen::VectorXd& l) {
  const Eigen::VectorXd s = b.numeric * l;
  const double h = 0.05 / std::max(s.maxCoeff() - s.minCoeff(), 1e-300);
  auto f = [&](double t) {
    PointC w = z;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] *= std::exp(t * l[static_cast<Eigen::Index>(i)]);
    return potential(b, w);
  };
  auto d2 = [&](double h) { return (f(h) - 2 * f(0) + f(-h)) / (h * h); };
  return (4 * d2(h / 2) - d2(h)) / 3;
}

std::vector<Problem> audited() {
  return {fixture("square"), fixture("hopf-rational"), fixture("hopf-weighted"), fixture("hopf-generic"),
          fixture_simplex(1), fixture_simplex(2), fixture_simplex(3), fixture_simplex(4)};
}

}  // namespace

TEST(Beta, SquareExamples) {
  const Problem sq = fixture("square");
  const BetaSystem b = beta_vectors(sq.fan, *certificate_from_offsets(sq.fan, *sq.offsets));
  EXPECT_EQ(b.scale, 1);
  EXPECT_EQ(beta_of(b, {1, 2}), detail::ints({0, 0, 2, 2}));
  EXPECT_EQ(beta_of(b, {2, 3}), detail::ints({2, 0, 0, 2}));
  EXPECT_EQ(beta_of(b, {3, 4}), detail::ints({2, 2, 0, 0}));
  EXPECT_EQ(beta_of(b, {1, 4}), detail::ints({0, 2, 2, 0}));
  EXPECT_FALSE(b.single_term);
}

TEST(Beta, ZeroPatternsAndKernelPairing) {
  for (const auto& p : audited()) {
    const BetaSystem b = betas(p);
    const SignOracle oracle(p.fan.table);
    ASSERT_EQ(b.faces, p.fan.complex.facets()) << p.name;
    for (std::size_t k = 0; k < b.faces.size(); ++k)
      for (std::size_t i = 0; i < b.m(); ++i) {
        const Scalar& v = b.beta[k][i];
        if (std::binary_search(b.faces[k].begin(), b.faces[k].end(), static_cast<int>(i + 1))) {
          EXPECT_TRUE(v.is_zero());
        } else if (!v.is_zero()) {
          EXPECT_GE(oracle(v - Scalar(2)), 0) << p.name;
        }
      }
    for (const auto& l : kernel_of_A(p.fan))
      for (const auto& beta : b.beta) EXPECT_EQ(dot(beta, l), dot(b.b, l)) << p.name;
  }
}

TEST(Beta, TorusSingleTerm) {
  const Problem t = fixture("torus-1");
  const BetaSystem b = betas(t);
  ASSERT_TRUE(b.single_term);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 10; ++k) {
    const PointC z = random_point(rng, 2);
    const Eigen::VectorXd x = log_moduli(z);
    EXPECT_NEAR(potential(b, z), b.numeric.row(0).dot(x), 1e-12);
    EXPECT_EQ(radial_form(b, z, Eigen::VectorXd::Random(2)), 0);
  }
}

TEST(Beta, CorruptCertificateIsRejected) {
  const Problem sq = fixture("square");
  auto c = *certificate_from_offsets(sq.fan, *sq.offsets);
  c.beta[0][2] = Scalar(3);
  EXPECT_THROW(beta_vectors(sq.fan, c), DomainError);
}

TEST(Potential, Examples) {
  const Problem sq = fixture("square");
  const BetaSystem b = betas(sq);
  EXPECT_NEAR(potential(b, ones(4)), std::log(4.0), 1e-15);
  const PointC z{0.0, 0.0, {0.3, 0.4}, 2.0};
  // only β_{12} = (0,0,2,2) survives
  EXPECT_NEAR(potential(b, z), std::log(0.25 * 4.0), 1e-14);
  EXPECT_THROW(potential(b, PointC{0.0, 1.0, 0.0, 1.0}), DomainError);
  EXPECT_THROW(radial_form(b, z, Eigen::VectorXd::Ones(4)), DomainError);
}

TEST(RadialForm, Examples) {
  const Problem sq = fixture("square");
  const BetaSystem b = betas(sq);
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(4);
  e1[0] = 1;
  // values (0,2,2,0) with uniform weights
  EXPECT_NEAR(radial_form(b, ones(4), e1), 1.0, 1e-15);
  EXPECT_EQ(radial_form(b, ones(4), Eigen::VectorXd::Zero(4)), 0);
  Eigen::VectorXd k(4);
  k << 1, 0, 1, 0;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) EXPECT_LT(radial_form(b, random_point(rng, 4), k), 1e-24);
}

TEST(Hessian, ConsistencyAndFiniteDifferences) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (const auto& p : audited()) {
    const BetaSystem b = betas(p);
    const std::size_t m = b.m();
    const Eigen::MatrixXd ker = kernel_numeric(p.fan);
    for (int k = 0; k < 200; ++k) {
      const PointC z = random_point(rng, m);
      Eigen::VectorXd l(static_cast<Eigen::Index>(m));
      for (auto& v : l) v = g(rng);
      l.normalize();
      if ((l - ker * (ker.transpose() * l)).norm() < 0.1) continue;
      const double r = radial_form(b, z, l);
      ASSERT_GT(r, 0) << p.name;
      const Eigen::MatrixXd h = hessian_log(b, log_moduli(z));
      EXPECT_NEAR(l.dot(h * l) / r, 1.0, 1e-12) << p.name;
      EXPECT_NEAR(fd_oracle(b, z, l) / r, 1.0, 1e-6) << p.name;
      EXPECT_NEAR((complex_hessian_log(b, log_moduli(z)) * 4 - h).norm(), 0.0, 1e-14);
    }
  }
}

TEST(Hessian, RankIsNAndKernelIsKerA) {
  std::mt19937_64 rng(23);
  for (const auto& p : {fixture("square"), fixture("hopf-rational"), fixture("hopf-generic")}) {
    const BetaSystem b = betas(p);
    const Eigen::MatrixXd ker = kernel_numeric(p.fan);
    for (int k = 0; k < 100; ++k) {
      const Eigen::MatrixXd h = hessian_log(b, log_moduli(random_point(rng, b.m())));
      EXPECT_LT((h - h.transpose()).norm(), 1e-14);
      EXPECT_LT((h * ker).norm(), 1e-10 * h.norm()) << p.name;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
      const double top = eig.eigenvalues().maxCoeff();
      std::size_t rank = 0;
      for (double e : eig.eigenvalues()) {
        EXPECT_GT(e, -1e-12 * top);
        if (e > 1e-8 * top) ++rank;
      }
      EXPECT_EQ(rank, p.fan.n) << p.name;
    }
  }
}

TEST(Audit, PassesOnEveryNormalFanFixture) {
  for (const auto& p : audited()) {
    const KahlerAudit a = kahler_audit(p.fan, betas(p));
    EXPECT_TRUE(a.kernel_ok()) << p.name << " " << a.kernel_max_relative;
    EXPECT_TRUE(a.positive_ok()) << p.name;
    EXPECT_EQ(a.off_kernel_samples, 100u);
    EXPECT_TRUE(a.hessian_ok()) << p.name << " " << a.kernel_dim_min << " " << a.max_principal_angle;
    EXPECT_TRUE(a.fd_ok()) << p.name << " " << a.fd_max_relative;
    EXPECT_TRUE(a.consistency_ok()) << p.name << " " << a.consistency_max_relative;
  }
  const Problem t = fixture("torus-1");
  const KahlerAudit a = kahler_audit(t.fan, betas(t));
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(a.off_kernel_samples, 0u);
  EXPECT_EQ(a.kernel_dim_min, 2u);
}

TEST(Audit, DeterministicGivenSeed) {
  const Problem p = fixture("hopf-generic");
  const BetaSystem b = betas(p);
  KahlerAuditOptions o;
  o.seed = 42;
  const KahlerAudit x = kahler_audit(p.fan, b, o), y = kahler_audit(p.fan, b, o);
  EXPECT_EQ(x.fd_max_relative, y.fd_max_relative);
  EXPECT_EQ(x.off_kernel_min, y.off_kernel_min);
}

TEST(Quadrics, SquareAndHopf) {
  const Problem sq = fixture("square");
  const QuadricSystem q = gamma_matrix(sq.fan, *sq.offsets);
  ASSERT_EQ(q.gamma.rows(), 2u);
  EXPECT_EQ(q.gamma.row(0), detail::ints({1, 0, 1, 0}));
  EXPECT_EQ(q.gamma.row(1), detail::ints({0, 1, 0, 1}));
  EXPECT_EQ(q.rhs, detail::ints({2, 2}));
  EXPECT_EQ(quadric_residual(q, ones(4)).norm(), 0);
  EXPECT_LT(quadric_residual(q, PointC{std::sqrt(2.0), 1.0, 0.0, 1.0}).norm(), 1e-15);
  EXPECT_EQ(quadric_residual(q, PointC(4, 0.0)), -q.rhs_d);

  const Problem h = fixture("hopf-rational");
  const QuadricSystem qh = gamma_matrix(h.fan, *h.offsets);
  ASSERT_EQ(qh.gamma.rows(), 2u);
  EXPECT_EQ(qh.gamma.row(0), detail::ints({1, 1, 1, 0}));
  EXPECT_EQ(qh.gamma.row(1), detail::ints({0, 0, 0, 1}));

  for (const auto& p : audited()) {
    const QuadricSystem g = gamma_matrix(p.fan, *p.offsets);
    EXPECT_EQ(g.gamma.rows(), static_cast<std::size_t>(p.fan.m()) - p.fan.n);
    EXPECT_TRUE((g.gamma * ScalarMatrix::from_rows(p.fan.vectors, p.fan.n)).is_zero());
  }
}

TEST(SampleZP, PointsLieOnTheQuadrics) {
  for (const auto& p : audited()) {
    const PolytopeH poly = polytope(p);
    const SimplicialComplex kp = normal_fan(poly).fan.complex;
    const QuadricSystem q = gamma_matrix(p.fan, *p.offsets);
    const auto pts = sample_zp(poly, 9, 100);
    ASSERT_EQ(pts.size(), 100u);
    double worst = 0;
    for (const auto& z : pts) {
      worst = std::max(worst, quadric_residual(q, z).cwiseAbs().maxCoeff());
      EXPECT_TRUE(membership(kp, z).in_u);
      for (const auto& c : z) EXPECT_GT(std::abs(c), 0.0);
    }
    EXPECT_LT(worst, 1e-10) << p.name;
    const auto rep = nondegeneracy_check(q, kp, pts);
    EXPECT_TRUE(rep.full_rank()) << p.name;
    EXPECT_TRUE(rep.all_in_u);
    if (p.name == "square") {
      EXPECT_LT(worst, 1e-12);
      EXPECT_GT(rep.min_singular, 0.1);
    }
  }
}

TEST(SampleZP, VertexPointsVanishOnTheirFacets) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> th(0, 6.0);
  for (const auto& p : audited()) {
    const PolytopeH poly = polytope(p);
    const auto nf = normal_fan(poly);
    const QuadricSystem q = gamma_matrix(p.fan, *p.offsets);
    for (const auto& v : nf.vertices) {
      std::vector<double> phases(poly.m());
      for (auto& t : phases) t = th(rng);
      const PointC z = zp_point(poly, v.u, phases);
      const Membership mem = membership(nf.fan.complex, z);
      EXPECT_EQ(mem.zero_set, v.active);
      EXPECT_TRUE(mem.in_u);
      EXPECT_LT(quadric_residual(q, z).norm(), 1e-12);
      EXPECT_TRUE(nondegeneracy_check(q, nf.fan.complex, {z}).full_rank()) << p.name;
    }
  }
  const Problem sq = fixture("square");
  EXPECT_THROW(zp_point(polytope(sq), detail::ints({2, 0}), std::vector<double>(4)), DomainError);
}

TEST(SampleZP, Deterministic) {
  const PolytopeH poly = polytope(fixture("hopf-generic"));
  EXPECT_EQ(sample_zp(poly, 4, 10), sample_zp(poly, 4, 10));
  EXPECT_NE(sample_zp(poly, 4, 10), sample_zp(poly, 5, 10));
}

TEST(Nondegeneracy, RepeatedRowDrops) {
  const Problem sq = fixture("square");
  QuadricSystem q = gamma_matrix(sq.fan, *sq.offsets);
  q.gamma_d.row(1) = q.gamma_d.row(0);
  const auto rep = nondegeneracy_check(q, sq.fan.complex, sample_zp(polytope(sq), 2, 10));
  EXPECT_FALSE(rep.full_rank());
  EXPECT_EQ(rep.min_rank, 1u);
}

TEST(Membership, Examples) {
  const SimplicialComplex k = boundary_of_simplex(2, 4);
  EXPECT_TRUE(membership(k, PointC{0.0, 1.0, 1.0, 1.0}).in_u);
  EXPECT_FALSE(membership(k, PointC{0.0, 0.0, 0.0, 1.0}).in_u);
  const Membership a = membership(k, PointC{0.5, 1.0, 1.0, 1.0});
  EXPECT_TRUE(a.in_zk);
  EXPECT_EQ(a.margin, 0);
  EXPECT_FALSE(membership(k, PointC{0.5, 0.5, 0.5, 1.0}).in_zk);
  EXPECT_FALSE(membership(k, PointC{0.5, 1.0, 1.5, 1.0}).in_zk);
  // the ghost 4 may never have modulus < 1
  EXPECT_FALSE(membership(k, PointC{1.0, 1.0, 1.0, 0.5}).in_zk);
  EXPECT_THROW(membership(k, PointC{1.0}), InputError);
}
