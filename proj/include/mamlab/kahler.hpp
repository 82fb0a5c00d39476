#pragma once

// The potential f = log Σ_I |z|^{β_I}, its radial Hessian, and the
// Hermitian-quadric realization of Z_P.
//
// β_I and Γ are built and checked exactly; everything analytic runs in
// double precision through Eigen. In log-moduli x_k = log|z_k| the potential
// is F(x) = log Σ_I exp⟨β_I, x⟩, and d²/dt² F(x + tλ) is the variance of
// ⟨β_I, λ⟩ under the softmax weights p_I ∝ exp⟨β_I, x⟩. The complex Hessian
// of f in the coordinates w_k = log z_k is a quarter of the real Hessian of F.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mamlab/error.hpp"
#include "mamlab/fan.hpp"
#include "mamlab/structure.hpp"

namespace mamlab {

using PointC = std::vector<std::complex<double>>;

inline Eigen::VectorXd to_eigen(const ScalarVector& v, const SymbolTable& t) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = to_double(v[i], t);
  return out;
}

/// Orthonormal basis of Ker A (columns), from the exact kernel.
inline Eigen::MatrixXd kernel_numeric(const FanData& f) {
  const auto basis = kernel_of_A(f);
  const Eigen::Index m = f.m();
  Eigen::MatrixXd k(m, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) k.col(static_cast<Eigen::Index>(j)) = to_eigen(basis[j], f.table);
  if (k.cols() == 0) return k;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(k);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m, k.cols());
}

// ---------------------------------------------------------------------------
// β vectors

struct BetaSystem {
  std::vector<Face> faces;
  std::vector<ScalarVector> beta;
  ScalarVector b;
  mpq_class scale = 1;
  /// Row k is β for faces[k], in double precision.
  Eigen::MatrixXd numeric;
  /// Only the face ∅ is maximal (n = 0): F is linear in x.
  bool single_term = false;

  std::size_t m() const { return static_cast<std::size_t>(numeric.cols()); }
};

/// The β_I of a weak-normal certificate, with the exact checks that β_I - β_J
/// lies in the row space of A and that ⟨β_I, λ⟩ = ⟨b, λ⟩ for λ ∈ Ker A.
inline BetaSystem beta_vectors(const FanData& f, const WeakNormalCertificate& cert, int max_bits = kDefaultMaxBits) {
  const SignOracle oracle(f.table, max_bits);
  std::string why;
  if (!verify_certificate(f, cert, oracle, &why)) throw DomainError("corrupt certificate: " + why);
  const std::size_t m = static_cast<std::size_t>(f.m());
  const ScalarMatrix at = ScalarMatrix::from_rows(f.vectors, f.n);
  for (std::size_t k = 1; k < cert.beta.size(); ++k) {
    ScalarVector diff(m);
    for (std::size_t i = 0; i < m; ++i) diff[i] = cert.beta[k][i] - cert.beta[0][i];
    const bool in_row_space = f.n == 0 ? is_zero_vector(diff) : solve(at, diff).has_value();
    if (!in_row_space)
      throw DomainError("beta difference for " + face_text(cert.faces[k]) + " is not in the row space of A");
  }
  for (const auto& lambda : kernel_of_A(f)) {
    const Scalar target = dot(cert.b, lambda);
    for (std::size_t k = 0; k < cert.beta.size(); ++k)
      if (!(dot(cert.beta[k], lambda) == target))
        throw DomainError("<beta, lambda> differs from <b, lambda> on " + face_text(cert.faces[k]));
  }
  BetaSystem out;
  out.faces = cert.faces;
  out.beta = cert.beta;
  out.b = cert.b;
  out.scale = cert.scale;
  out.numeric.resize(static_cast<Eigen::Index>(cert.beta.size()), static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < cert.beta.size(); ++k)
    out.numeric.row(static_cast<Eigen::Index>(k)) = to_eigen(cert.beta[k], f.table).transpose();
  out.single_term = cert.beta.size() == 1;
  return out;
}

// ---------------------------------------------------------------------------
// Potential and radial Hessian

/// Softmax weights p_I ∝ exp⟨β_I, x⟩.
inline Eigen::VectorXd softmax_weights(const BetaSystem& b, const Eigen::VectorXd& x) {
  Eigen::VectorXd s = b.numeric * x;
  s = (s.array() - s.maxCoeff()).exp().matrix();
  return s / s.sum();
}

/// F(x) = log Σ_I exp⟨β_I, x⟩.
inline double log_potential(const BetaSystem& b, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != b.m()) throw InputError("point has wrong length");
  const Eigen::VectorXd s = b.numeric * x;
  const double top = s.maxCoeff();
  return top + std::log((s.array() - top).exp().sum());
}

inline Eigen::VectorXd log_moduli(const PointC& z) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] == 0.0) throw DomainError("coordinate " + std::to_string(i + 1) + " is zero");
    x[static_cast<Eigen::Index>(i)] = std::log(std::abs(z[i]));
  }
  return x;
}

/// f(z) = log Σ_I |z|^{β_I} with 0^0 = 1. A term survives only when β_I
/// vanishes on every zero coordinate of z.
inline double potential(const BetaSystem& b, const PointC& z) {
  if (z.size() != b.m()) throw InputError("point has wrong length");
  std::vector<double> exps;
  for (Eigen::Index k = 0; k < b.numeric.rows(); ++k) {
    double e = 0;
    bool alive = true;
    for (std::size_t i = 0; i < z.size() && alive; ++i) {
      const double beta = b.numeric(k, static_cast<Eigen::Index>(i));
      if (z[i] == 0.0) alive = b.beta[static_cast<std::size_t>(k)][i].is_zero();
      else if (beta != 0) e += beta * std::log(std::abs(z[i]));
    }
    if (alive) exps.push_back(e);
  }
  if (exps.empty()) throw DomainError("point is not in U(K): its zero set lies in no maximal face");
  const double top = *std::max_element(exps.begin(), exps.end());
  double sum = 0;
  for (double e : exps) sum += std::exp(e - top);
  return top + std::log(sum);
}

/// d²/dt² F(x + tλ) at t = 0: the softmax variance of ⟨β_I, λ⟩.
inline double radial_form_log(const BetaSystem& b, const Eigen::VectorXd& x, const Eigen::VectorXd& lambda) {
  if (static_cast<std::size_t>(lambda.size()) != b.m()) throw InputError("direction has wrong length");
  const Eigen::VectorXd p = softmax_weights(b, x);
  const Eigen::VectorXd s = b.numeric * lambda;
  const double mean = p.dot(s);
  return p.dot((s.array() - mean).square().matrix());
}

/// The same variance at z ∈ (C^×)^m.
inline double radial_form(const BetaSystem& b, const PointC& z, const Eigen::VectorXd& lambda) {
  return radial_form_log(b, log_moduli(z), lambda);
}

/// H = Σ p_I (β_I - μ)(β_I - μ)^T with μ = Σ p_I β_I.
inline Eigen::MatrixXd hessian_log(const BetaSystem& b, const Eigen::VectorXd& x) {
  const Eigen::VectorXd p = softmax_weights(b, x);
  const Eigen::RowVectorXd mu = p.transpose() * b.numeric;
  const Eigen::MatrixXd centered = b.numeric.rowwise() - mu;
  return centered.transpose() * p.asDiagonal() * centered;
}

/// ∂²f/∂w_j∂w̄_k in w_k = log z_k; real because f depends on |z| only.
inline Eigen::MatrixXd complex_hessian_log(const BetaSystem& b, const Eigen::VectorXd& x) {
  return hessian_log(b, x) / 4.0;
}

// ---------------------------------------------------------------------------
// Quadrics

struct QuadricSystem {
  /// (m - n) x m, rows in reduced echelon form.
  ScalarMatrix gamma;
  ScalarVector rhs;
  Eigen::MatrixXd gamma_d;
  Eigen::VectorXd rhs_d;
};

/// Γ with rows spanning the relations among the a_i, and rhs = Γb.
inline QuadricSystem gamma_matrix(const FanData& f, const ScalarVector& b) {
  const std::size_t m = static_cast<std::size_t>(f.m());
  if (b.size() != m) throw InputError("offset vector has wrong length");
  QuadricSystem q;
  q.gamma = ScalarMatrix::from_rows(kernel_of_A(f), m);
  if (rref(q.gamma).size() != m - f.n) throw DomainError("relation matrix is not of full rank");
  if (!(q.gamma * ScalarMatrix::from_rows(f.vectors, f.n)).is_zero()) throw DomainError("Γ A^T is not zero");
  q.rhs = q.gamma.apply(b);
  q.gamma_d.resize(static_cast<Eigen::Index>(q.gamma.rows()), static_cast<Eigen::Index>(m));
  for (std::size_t r = 0; r < q.gamma.rows(); ++r)
    q.gamma_d.row(static_cast<Eigen::Index>(r)) = to_eigen(q.gamma.row(r), f.table).transpose();
  q.rhs_d = to_eigen(q.rhs, f.table);
  return q;
}

inline Eigen::VectorXd moment(const PointC& z) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) y[static_cast<Eigen::Index>(i)] = std::norm(z[i]);
  return y;
}

/// Γ μ(z) - Γ b.
inline Eigen::VectorXd quadric_residual(const QuadricSystem& q, const PointC& z) {
  if (static_cast<Eigen::Index>(z.size()) != q.gamma_d.cols()) throw InputError("point has wrong length");
  return q.gamma_d * moment(z) - q.rhs_d;
}

// ---------------------------------------------------------------------------
// Membership

struct Membership {
  bool in_u = false;
  bool in_zk = false;
  Face zero_set;
  /// min_i ||z_i| - 1|: how close the |z_i| < 1 decisions were.
  double margin = std::numeric_limits<double>::infinity();
  double tolerance = 0;
};

/// in_U: {i : z_i = 0} ∈ K on the exact input zeros. in_ZK: all |z_i| ≤ 1
/// and {i : |z_i| < 1} ∈ K, with |z_i| within `tol` of 1 counted as 1.
inline Membership membership(const SimplicialComplex& k, const PointC& z, double tol = 1e-12) {
  if (z.size() != static_cast<std::size_t>(k.m())) throw InputError("point has wrong length");
  Membership r;
  r.tolerance = tol;
  Face inside;
  bool bounded = true;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double a = std::abs(z[i]);
    if (z[i] == 0.0) r.zero_set.push_back(static_cast<int>(i + 1));
    r.margin = std::min(r.margin, std::abs(a - 1));
    if (a > 1 + tol) bounded = false;
    else if (a < 1 - tol) inside.push_back(static_cast<int>(i + 1));
  }
  r.in_u = k.is_face(r.zero_set);
  r.in_zk = bounded && k.is_face(inside);
  return r;
}

// ---------------------------------------------------------------------------
// Sampling Z_P

/// z_k = sqrt(y_k) e^{iθ_k} with y = A^T u + b computed exactly, so facets
/// through u give exact zeros.
inline PointC zp_point(const PolytopeH& p, const ScalarVector& u, const std::vector<double>& phases) {
  if (phases.size() != p.m()) throw InputError("phase vector has wrong length");
  PointC z(p.m());
  for (std::size_t i = 0; i < p.m(); ++i) {
    const Scalar y = p.slack(i, u);
    const double v = y.is_zero() ? 0.0 : to_double(y, p.table);
    if (v < 0) throw DomainError("point lies outside the polytope");
    z[i] = std::polar(std::sqrt(v), phases[i]);
  }
  return z;
}

/// Uniform u in P by rejection from the vertex bounding box, lifted to Z_P
/// with uniform phases.
inline std::vector<PointC> sample_zp(const PolytopeH& p, std::uint64_t seed, std::size_t count,
                                     int max_bits = kDefaultMaxBits) {
  const SignOracle oracle(p.table, max_bits);
  check_polytope(p, oracle);
  const auto vertices = polytope_vertices(p, oracle);
  const Eigen::Index n = static_cast<Eigen::Index>(p.n), m = static_cast<Eigen::Index>(p.m());
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = -lo;
  for (const auto& v : vertices) {
    const Eigen::VectorXd u = to_eigen(v.u, p.table);
    lo = lo.cwiseMin(u);
    hi = hi.cwiseMax(u);
  }
  Eigen::MatrixXd at(m, n);
  for (Eigen::Index i = 0; i < m; ++i) at.row(i) = to_eigen(p.vectors[static_cast<std::size_t>(i)], p.table).transpose();
  const Eigen::VectorXd b = to_eigen(p.offsets, p.table);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double two_pi = 2 * std::acos(-1.0);
  std::vector<PointC> out;
  const std::size_t budget = 10000 * (count + 1);
  for (std::size_t tries = 0; out.size() < count; ++tries) {
    if (tries >= budget) throw DomainError("rejection sampling exhausted its budget");
    Eigen::VectorXd u(n);
    for (Eigen::Index k = 0; k < n; ++k) u[k] = lo[k] + (hi[k] - lo[k]) * unit(rng);
    const Eigen::VectorXd y = at * u + b;
    if (y.minCoeff() < 0) continue;
    PointC z(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) z[static_cast<std::size_t>(i)] = std::polar(std::sqrt(y[i]), two_pi * unit(rng));
    out.push_back(std::move(z));
  }
  return out;
}

struct NondegeneracyReport {
  std::size_t samples = 0;
  std::size_t expected_rank = 0;
  /// Smallest rank and smallest (m - n)-th singular value over the samples.
  std::size_t min_rank = 0;
  double min_singular = std::numeric_limits<double>::infinity();
  std::size_t worst_sample = 0;
  bool all_in_u = true;
  double tolerance = 0;

  bool full_rank() const { return min_rank == expected_rank; }
};

/// Rank of the Jacobian of z ↦ Γ μ(z) in the radial coordinates, i.e. Γ with
/// column k scaled by 2|z_k|, at every sample.
inline NondegeneracyReport nondegeneracy_check(const QuadricSystem& q, const SimplicialComplex& k,
                                               const std::vector<PointC>& samples, double tol = 1e-8) {
  NondegeneracyReport r;
  r.samples = samples.size();
  r.expected_rank = static_cast<std::size_t>(q.gamma_d.rows());
  r.min_rank = r.expected_rank;
  r.tolerance = tol;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const PointC& z = samples[s];
    if (static_cast<Eigen::Index>(z.size()) != q.gamma_d.cols()) throw InputError("point has wrong length");
    Eigen::VectorXd scale(q.gamma_d.cols());
    for (std::size_t i = 0; i < z.size(); ++i) scale[static_cast<Eigen::Index>(i)] = 2 * std::abs(z[i]);
    const Eigen::MatrixXd jac = q.gamma_d * scale.asDiagonal();
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(jac).singularValues();
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] > tol) ++rank;
    const double smallest = r.expected_rank == 0 ? std::numeric_limits<double>::infinity()
                                                 : sv.size() < jac.rows() ? 0.0 : sv[jac.rows() - 1];
    if (rank < r.min_rank) r.min_rank = rank;
    if (smallest < r.min_singular) {
      r.min_singular = smallest;
      r.worst_sample = s;
    }
    if (!membership(k, z).in_u) r.all_in_u = false;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Audit

struct KahlerAuditOptions {
  std::uint64_t seed = 1;
  std::size_t points = 100;
  std::size_t fd_pairs = 200;
  double tol_kernel = 1e-10;
  double tol_eig = 1e-8;
  double tol_angle = 1e-6;
  double tol_fd = 1e-6;
  double tol_consistency = 1e-12;
  double min_projection = 0.1;
};

struct KahlerAudit {
  KahlerAuditOptions options;
  std::size_t m = 0, n = 0;
  /// max over points and Ker A basis vectors of radial_form / (|λ|² max|β|²).
  double kernel_max_relative = 0;
  /// min radial form over directions at least min_projection away from Ker A.
  double off_kernel_min = 0;
  std::size_t off_kernel_samples = 0;
  /// Most negative eigenvalue of H relative to its spectral norm.
  double min_eigen_relative = 0;
  std::size_t kernel_dim_min = 0, kernel_dim_max = 0;
  /// sin of the largest principal angle between the near-zero eigenspace and Ker A.
  double max_principal_angle = 0;
  double consistency_max_relative = 0;
  double fd_max_relative = 0;

  bool kernel_ok() const { return kernel_max_relative < options.tol_kernel; }
  bool positive_ok() const { return off_kernel_samples == 0 || off_kernel_min > 0; }
  bool hessian_ok() const {
    return min_eigen_relative > -options.tol_eig && kernel_dim_min == m - n && kernel_dim_max == m - n &&
           max_principal_angle < options.tol_angle;
  }
  bool fd_ok() const { return fd_max_relative < options.tol_fd; }
  bool consistency_ok() const { return consistency_max_relative < options.tol_consistency; }
  bool passed() const { return kernel_ok() && positive_ok() && hessian_ok() && fd_ok() && consistency_ok(); }
};

/// Second derivative of F along x + tλ by Richardson-extrapolated central
/// differences of the potential itself, with the step scaled to the spread
/// of ⟨β_I, λ⟩.
inline double second_difference(const BetaSystem& b, const Eigen::VectorXd& x, const Eigen::VectorXd& lambda,
                                double relative_step = 0.05) {
  const Eigen::VectorXd s = b.numeric * lambda;
  const double spread = s.maxCoeff() - s.minCoeff();
  if (spread == 0) return 0;
  const double h = relative_step / spread;
  auto d2 = [&](double t) {
    return (log_potential(b, x + t * lambda) - 2 * log_potential(b, x) + log_potential(b, x - t * lambda)) / (t * t);
  };
  return (4 * d2(h / 2) - d2(h)) / 3;
}

/// Numeric audit of the transverse Kähler form at seeded points of (C^×)^m.
/// Log-moduli are uniform in [-1, 1] divided by the largest |β| entry, which
/// keeps every softmax weight within a bounded factor of the others; far
/// outside that box H stays rank n but is singular in double precision.
inline KahlerAudit kahler_audit(const FanData& f, const BetaSystem& b, const KahlerAuditOptions& opt = {}) {
  KahlerAudit a;
  a.options = opt;
  a.m = static_cast<std::size_t>(f.m());
  a.n = f.n;
  const Eigen::Index m = static_cast<Eigen::Index>(a.m);
  const Eigen::MatrixXd ker = kernel_numeric(f);
  const Eigen::MatrixXd proj = ker * ker.transpose();
  const double beta_scale = std::max(1.0, b.numeric.rowwise().squaredNorm().maxCoeff());
  a.kernel_dim_min = a.m;

  std::mt19937_64 rng(opt.seed);
  const double beta_max = std::max(1.0, b.numeric.cwiseAbs().maxCoeff());
  std::uniform_real_distribution<double> unit(-1.0 / beta_max, 1.0 / beta_max);
  std::normal_distribution<double> gauss;
  auto random_x = [&] {
    Eigen::VectorXd x(m);
    for (Eigen::Index i = 0; i < m; ++i) x[i] = unit(rng);
    return x;
  };
  auto off_kernel_direction = [&]() -> std::optional<Eigen::VectorXd> {
    if (ker.cols() == m) return std::nullopt;
    for (;;) {
      Eigen::VectorXd l(m);
      for (Eigen::Index i = 0; i < m; ++i) l[i] = gauss(rng);
      l.normalize();
      if ((l - proj * l).norm() >= opt.min_projection) return l;
    }
  };

  for (std::size_t p = 0; p < opt.points; ++p) {
    const Eigen::VectorXd x = random_x();
    for (Eigen::Index j = 0; j < ker.cols(); ++j)
      a.kernel_max_relative = std::max(a.kernel_max_relative, radial_form_log(b, x, ker.col(j)) / beta_scale);
    const Eigen::MatrixXd h = hessian_log(b, x);
    if (const auto l = off_kernel_direction()) {
      const double r = radial_form_log(b, x, *l);
      a.off_kernel_min = a.off_kernel_samples++ ? std::min(a.off_kernel_min, r) : r;
      const double quad = l->dot(h * *l);
      a.consistency_max_relative = std::max(a.consistency_max_relative, std::abs(quad - r) / r);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    const Eigen::VectorXd ev = eig.eigenvalues();
    const double norm = std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
    std::size_t zero = 0;
    for (Eigen::Index i = 0; i < m; ++i)
      if (ev[i] <= opt.tol_eig * norm) ++zero;
    if (norm > 0) a.min_eigen_relative = std::min(a.min_eigen_relative, ev.minCoeff() / norm);
    a.kernel_dim_min = std::min(a.kernel_dim_min, zero);
    a.kernel_dim_max = std::max(a.kernel_dim_max, zero);
    if (zero > 0 && ker.cols() > 0) {
      // eigenvalues ascend, so the near-zero eigenvectors come first
      const Eigen::MatrixXd near = eig.eigenvectors().leftCols(static_cast<Eigen::Index>(zero));
      const Eigen::MatrixXd off = near - proj * near;
      const double angle = Eigen::JacobiSVD<Eigen::MatrixXd>(off).singularValues()[0];
      a.max_principal_angle = std::max(a.max_principal_angle, angle);
    }
  }

  for (std::size_t p = 0; p < opt.fd_pairs; ++p) {
    const Eigen::VectorXd x = random_x();
    const auto l = off_kernel_direction();
    if (!l) break;
    const double r = radial_form_log(b, x, *l);
    a.fd_max_relative = std::max(a.fd_max_relative, std::abs(second_difference(b, x, *l) - r) / r);
  }
  return a;
}

}  // namespace mamlab
