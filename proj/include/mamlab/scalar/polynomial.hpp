#pragma once

// Sparse multivariate polynomials over Q with a recursive primitive-PRS gcd.
//
// Variables are identified by index into a SymbolTable. Terms are kept sorted
// in strictly descending lexicographic monomial order (x_0 > x_1 > ...), with
// no zero coefficients, so two polynomials are equal iff their term vectors
// are equal.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace mamlab {

/// Exponent vector with trailing zeros trimmed; the empty vector is 1.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) { trim(); }

  static Monomial variable(std::size_t index, std::uint32_t power = 1) {
    std::vector<std::uint32_t> e(index + 1, 0);
    e[index] = power;
    return Monomial(std::move(e));
  }

  std::uint32_t exponent(std::size_t var) const { return var < exps_.size() ? exps_[var] : 0; }
  std::size_t size() const { return exps_.size(); }
  bool is_one() const { return exps_.empty(); }
  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (auto e : exps_) d += e;
    return d;
  }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& o) const {
    std::vector<std::uint32_t> e(std::max(exps_.size(), o.exps_.size()), 0);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = exponent(i) + o.exponent(i);
    return Monomial(std::move(e));
  }

  bool divides(const Monomial& o) const {
    if (exps_.size() > o.exps_.size()) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > o.exps_[i]) return false;
    return true;
  }

  /// o / *this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const {
    std::vector<std::uint32_t> e(o.exps_);
    for (std::size_t i = 0; i < exps_.size(); ++i) e[i] -= exps_[i];
    return Monomial(std::move(e));
  }

  Monomial without(std::size_t var) const {
    if (var >= exps_.size()) return *this;
    std::vector<std::uint32_t> e(exps_);
    e[var] = 0;
    return Monomial(std::move(e));
  }

  /// Lexicographic comparison, missing entries read as zero.
  friend int compare(const Monomial& a, const Monomial& b) {
    const std::size_t n = std::max(a.exps_.size(), b.exps_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = a.exponent(i), y = b.exponent(i);
      if (x != y) return x < y ? -1 : 1;
    }
    return 0;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }

 private:
  void trim() {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
  }
  std::vector<std::uint32_t> exps_;
};

struct Term {
  Monomial mono;
  mpq_class coeff;
};

namespace detail {

// Arithmetic modulo the Mersenne prime 2^61 - 1, used only to certify that
// two polynomials are coprime before running the exact PRS.
constexpr std::uint64_t kModP = (std::uint64_t(1) << 61) - 1;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(x & kModP) + static_cast<std::uint64_t>(x >> 61);
  return r >= kModP ? r - kModP : r;
}
inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t r = a + b;
  return r >= kModP ? r - kModP : r;
}
inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kModP - b; }
inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul_mod(a, a))
    if (e & 1) r = mul_mod(r, a);
  return r;
}
inline std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kModP - 2); }

inline std::optional<std::uint64_t> rational_mod(const mpq_class& q) {
  const mpz_class p(kModP);
  mpz_class n = q.get_num() % p, d = q.get_den() % p;
  if (n < 0) n += p;
  if (d == 0) return std::nullopt;
  return mul_mod(n.get_ui(), inv_mod(d.get_ui()));
}

/// Fixed evaluation point for variable i (mod p).
inline std::uint64_t mod_point(std::size_t i) {
  std::uint64_t z = 0x9E3779B97F4A7C15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return (z ^ (z >> 31)) % kModP;
}

/// Degree of the monic gcd of two dense univariate polynomials mod p.
inline std::size_t gcd_degree_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  auto trim = [](std::vector<std::uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    while (a.size() >= b.size() && !a.empty()) {
      const std::uint64_t f = mul_mod(a.back(), inv_mod(b.back()));
      const std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] = sub_mod(a[k + shift], mul_mod(f, b[k]));
      trim(a);
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

}  // namespace detail

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long v) : Polynomial(mpq_class(v)) {}
  Polynomial(const mpq_class& c) {
    if (sgn(c) != 0) terms_.push_back({Monomial(), c});
  }
  static Polynomial variable(std::size_t index) {
    Polynomial p;
    p.terms_.push_back({Monomial::variable(index), mpq_class(1)});
    return p;
  }
  static Polynomial monomial(const Monomial& m, const mpq_class& c) {
    Polynomial p;
    if (sgn(c) != 0) p.terms_.push_back({m, c});
    return p;
  }
  /// Builds from arbitrary (possibly repeated, unsorted) terms.
  static Polynomial from_terms(std::vector<Term> terms) {
    std::map<Monomial, mpq_class> acc;
    for (auto& t : terms) acc[t.mono] += t.coeff;
    return from_map(acc);
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1; }
  mpq_class constant_value() const {
    if (terms_.empty()) return 0;
    const auto& last = terms_.back();
    return last.mono.is_one() ? last.coeff : mpq_class(0);
  }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }
  const mpq_class& leading_coeff() const { return terms_.front().coeff; }

  /// One past the largest variable index that occurs.
  std::size_t variable_span() const {
    std::size_t s = 0;
    for (const auto& t : terms_) s = std::max(s, t.mono.size());
    return s;
  }
  std::uint32_t degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.exponent(var));
    return d;
  }

  /// Coefficients with respect to `var`, as polynomials free of `var`.
  std::map<std::uint32_t, Polynomial> coefficients_in(std::size_t var) const {
    std::map<std::uint32_t, std::map<Monomial, mpq_class>> parts;
    for (const auto& t : terms_) parts[t.mono.exponent(var)][t.mono.without(var)] += t.coeff;
    std::map<std::uint32_t, Polynomial> out;
    for (auto& [d, m] : parts) out.emplace(d, from_map(m));
    return out;
  }
  Polynomial leading_coeff_in(std::size_t var) const {
    const auto c = coefficients_in(var);
    return c.empty() ? Polynomial() : c.rbegin()->second;
  }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.is_constant()) return a.scaled(b.terms_[0].coeff);
    if (a.is_constant()) return b.scaled(a.terms_[0].coeff);
    std::map<Monomial, mpq_class> acc;
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) acc[x.mono * y.mono] += x.coeff * y.coeff;
    return from_map(acc);
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const mpq_class& c) const {
    if (sgn(c) == 0) return {};
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }
  Polynomial times_monomial(const Monomial& m) const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.mono = t.mono * m;
    return r;  // multiplication by a monomial preserves lex order
  }

  /// Scales so the leading coefficient is 1 (zero stays zero).
  Polynomial monic() const {
    if (is_zero() || leading_coeff() == 1) return *this;
    return scaled(mpq_class(1) / leading_coeff());
  }

  /// Exact quotient a / b, or nullopt when b does not divide a.
  friend std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) return std::nullopt;
    if (b.is_constant()) return a.scaled(mpq_class(1) / b.terms_[0].coeff);
    Polynomial r = a;
    std::vector<Term> q;
    const Term& lb = b.leading();
    while (!r.is_zero()) {
      const Term& lr = r.leading();
      if (!lb.mono.divides(lr.mono)) return std::nullopt;
      Term t{lb.mono.quotient_of(lr.mono), lr.coeff / lb.coeff};
      r -= b.times_monomial(t.mono).scaled(t.coeff);
      q.push_back(std::move(t));
    }
    Polynomial out;
    out.terms_ = std::move(q);  // generated in descending order
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Monic gcd over Q[x_0, x_1, ...]; gcd(0, 0) = 0.
  friend Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Polynomial(1);
    if (a == b) return a.monic();
    if (certainly_coprime(a, b)) return Polynomial(1);
    const std::size_t var = std::max(a.variable_span(), b.variable_span()) - 1;
    if (a.degree_in(var) == 0) return gcd(a, b.content_in(var));
    if (b.degree_in(var) == 0) return gcd(a.content_in(var), b);

    const Polynomial ca = a.content_in(var), cb = b.content_in(var);
    const Polynomial g_content = gcd(ca, cb);
    Polynomial p = *divide_exact(a, ca);
    Polynomial q = *divide_exact(b, cb);
    if (p.degree_in(var) < q.degree_in(var)) std::swap(p, q);
    while (!q.is_zero()) {
      Polynomial r = pseudo_remainder(p, q, var);
      p = std::move(q);
      if (r.is_zero()) break;
      if (r.degree_in(var) == 0) {
        p = Polynomial(1);
        break;
      }
      q = r.primitive_part_in(var);
    }
    return (g_content * p.primitive_part_in(var)).monic();
  }

  /// Coprimality certificate: if, for each variable x, the images of a and b
  /// with the other variables specialized (mod p) have a constant gcd while a
  /// keeps its x-degree, then gcd(a, b) has x-degree 0 (its leading
  /// coefficient divides lc_x(a), so its image keeps its degree and divides
  /// both images). False means "unknown".
  friend bool certainly_coprime(const Polynomial& a, const Polynomial& b) {
    const std::size_t span = std::max(a.variable_span(), b.variable_span());
    for (std::size_t var = 0; var < span; ++var) {
      const std::uint32_t da = a.degree_in(var), db = b.degree_in(var);
      if (da == 0 || db == 0) continue;
      const auto ia = a.image_mod(var), ib = b.image_mod(var);
      if (!ia || !ib || ia->size() != da + 1u) return false;
      if (detail::gcd_degree_mod(*ia, *ib) != 0) return false;
    }
    return true;
  }

  /// Dense coefficients in `var` mod p, other variables at fixed points.
  std::optional<std::vector<std::uint64_t>> image_mod(std::size_t var) const {
    std::vector<std::uint64_t> out(degree_in(var) + 1u, 0);
    for (const auto& t : terms_) {
      auto c = detail::rational_mod(t.coeff);
      if (!c) return std::nullopt;
      std::uint64_t v = *c;
      for (std::size_t i = 0; i < t.mono.size(); ++i)
        if (i != var && t.mono.exponent(i)) v = detail::mul_mod(v, detail::pow_mod(detail::mod_point(i), t.mono.exponent(i)));
      const std::uint32_t e = t.mono.exponent(var);
      out[e] = detail::add_mod(out[e], v);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
  }

  /// Content with respect to `var`: monic gcd of the coefficients in var.
  Polynomial content_in(std::size_t var) const {
    Polynomial g;
    for (const auto& [d, c] : coefficients_in(var)) {
      g = gcd(g, c);
      if (g.is_one()) break;
    }
    return g;
  }
  Polynomial primitive_part_in(std::size_t var) const {
    if (is_zero()) return {};
    return *divide_exact(*this, content_in(var));
  }

  /// Any polynomial r with lc(b)^k a = q b + r and deg_var r < deg_var b.
  friend Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
    const std::uint32_t db = b.degree_in(var);
    const Polynomial lb = b.leading_coeff_in(var);
    Polynomial r = a;
    while (!r.is_zero() && r.degree_in(var) >= db) {
      const std::uint32_t dr = r.degree_in(var);
      const Polynomial lr = r.leading_coeff_in(var);
      r = lb * r - (lr * b).times_monomial(Monomial::variable(var, dr - db));
    }
    return r;
  }

 private:
  static Polynomial from_map(const std::map<Monomial, mpq_class>& acc) {
    Polynomial p;
    p.terms_.reserve(acc.size());
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
      if (sgn(it->second) != 0) p.terms_.push_back({it->first, it->second});
    return p;
  }
  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    Polynomial r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == a.terms_.size()) c = -1;
      else if (j == b.terms_.size()) c = 1;
      else c = compare(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        Term t = b.terms_[j++];
        if (subtract) t.coeff = -t.coeff;
        r.terms_.push_back(std::move(t));
      } else {
        mpq_class s = subtract ? mpq_class(a.terms_[i].coeff - b.terms_[j].coeff)
                               : mpq_class(a.terms_[i].coeff + b.terms_[j].coeff);
        if (sgn(s) != 0) r.terms_.push_back({a.terms_[i].mono, s});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

}  // namespace mamlab
