#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mamlab/error.hpp"
#include "mamlab/scalar/interval.hpp"

namespace mamlab {

/// Parses "12", "-3/4", "1.41421", "2.5e-3" into an exact rational.
inline mpq_class parse_decimal(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw InputError("empty number");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw InputError("bad rational '" + text + "'");
    if (q.get_den() == 0) throw InputError("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
  }
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    try {
      exp10 = std::stol(s.substr(e + 1));
    } catch (...) {
      throw InputError("bad exponent in '" + text + "'");
    }
    s = s.substr(0, e);
  }
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  std::string digits;
  bool seen_dot = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_dot) throw InputError("bad number '" + text + "'");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) --exp10;
    } else {
      throw InputError("bad number '" + text + "'");
    }
  }
  if (digits.empty()) throw InputError("bad number '" + text + "'");
  mpz_class mant(digits, 10);
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  mpq_class q = exp10 >= 0 ? mpq_class(mant * p10) : mpq_class(mant, p10);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

/// A declared real symbol: a name, an exact rational enclosure, and an
/// optional closed form used to tighten the enclosure on demand.
struct Symbol {
  std::string name;
  mpq_class lo, hi;
  /// The symbol equals sqrt(radicand) when set.
  std::optional<mpq_class> sqrt_radicand;
};

/// Ordered symbols of the field Q(s_1, ..., s_k).
///
/// The real values are assumed algebraically independent over Q. That is the
/// caller's contract and is never verified; exact zero tests and rational
/// stacking rely on it.
class SymbolTable {
 public:
  SymbolTable() = default;

  std::size_t add(Symbol s) {
    if (s.name.empty() || !(std::isalpha(static_cast<unsigned char>(s.name[0])) || s.name[0] == '_'))
      throw InputError("bad symbol name '" + s.name + "'");
    for (char c : s.name)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw InputError("bad symbol name '" + s.name + "'");
    if (index_.count(s.name)) throw InputError("duplicate symbol '" + s.name + "'");
    if (s.lo > s.hi) throw InputError("empty enclosure for symbol '" + s.name + "'");
    if (s.sqrt_radicand) {
      if (sgn(*s.sqrt_radicand) < 0) throw InputError("negative radicand for '" + s.name + "'");
      // the closed form must lie inside the declared enclosure
      const Interval r = Interval::sqrt_of(*s.sqrt_radicand, 256);
      const Interval e = Interval::from_bounds(s.lo, s.hi, 256);
      if (!e.contains(r)) throw InputError("closed form of '" + s.name + "' lies outside its enclosure");
    }
    index_[s.name] = symbols_.size();
    symbols_.push_back(std::move(s));
    return symbols_.size() - 1;
  }

  /// sqrt(q) enclosed to `bits` bits, e.g. sqrt(2) with 128 bits.
  std::size_t add_sqrt(const std::string& name, const mpq_class& radicand, int bits) {
    const Interval r = Interval::sqrt_of(radicand, bits + 4);
    mpq_class lo, hi;
    mpfr_get_q(lo.get_mpq_t(), r.lower().get());
    mpfr_get_q(hi.get_mpq_t(), r.upper().get());
    return add(Symbol{name, lo, hi, radicand});
  }

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const Symbol& operator[](std::size_t i) const { return symbols_.at(i); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Largest b with every enclosure width <= 2^-b (1024 if all are points).
  int stated_precision() const {
    int best = 1024;
    for (const auto& s : symbols_) {
      const mpq_class w = s.hi - s.lo;
      if (sgn(w) == 0) continue;
      const double lw = std::log2(w.get_d());
      best = std::min(best, static_cast<int>(std::floor(-lw)));
    }
    return best;
  }

  /// Enclosure of symbol i at working precision `prec`.
  Interval enclosure(std::size_t i, mpfr_prec_t prec) const {
    const Symbol& s = symbols_.at(i);
    if (s.sqrt_radicand) return Interval::sqrt_of(*s.sqrt_radicand, prec);
    return Interval::from_bounds(s.lo, s.hi, prec);
  }

 private:
  std::vector<Symbol> symbols_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace mamlab
