#pragma once

#include <algorithm>
#include <string>

#include "mamlab/error.hpp"
#include "mamlab/scalar/scalar.hpp"

namespace mamlab {

inline constexpr int kDefaultMaxBits = 4096;
inline constexpr int kInitialBits = 64;

/// Sign of a Scalar: exact for zero, otherwise certified by an interval that
/// excludes zero. Precision doubles from 64 bits up to max_bits.
inline int sign(const Scalar& x, const SymbolTable& table, int max_bits = kDefaultMaxBits) {
  if (x.is_zero()) return 0;
  if (x.is_rational()) return sgn(x.rational_value());
  const auto syms_at = [&](mpfr_prec_t p) { return symbol_enclosures(table, p); };
  for (int bits = kInitialBits;; bits *= 2) {
    bits = std::min(bits, std::max(max_bits, kInitialBits));
    const auto syms = syms_at(bits);
    const int sn = enclose_polynomial(x.numerator(), syms, bits).certain_sign();
    const int sd = x.denominator().is_one() ? 1 : enclose_polynomial(x.denominator(), syms, bits).certain_sign();
    if (sn != 0 && sd != 0) return sn * sd;
    if (bits >= max_bits)
      throw PrecisionExhausted("sign of " + x.to_string(table) + " undecided at " + std::to_string(bits) +
                               " bits");
  }
}

/// Bundles the symbol table with a precision cap for repeated sign queries.
class SignOracle {
 public:
  explicit SignOracle(const SymbolTable& table, int max_bits = kDefaultMaxBits)
      : table_(&table), max_bits_(max_bits) {}

  int operator()(const Scalar& x) const { return sign(x, *table_, max_bits_); }
  bool positive(const Scalar& x) const { return (*this)(x) > 0; }
  bool negative(const Scalar& x) const { return (*this)(x) < 0; }
  /// -1, 0, +1 for a < b, a == b, a > b.
  int compare(const Scalar& a, const Scalar& b) const { return (*this)(a - b); }

  const SymbolTable& table() const { return *table_; }
  int max_bits() const { return max_bits_; }

 private:
  const SymbolTable* table_;
  int max_bits_;
};

/// Midpoint of the interval value at `bits` precision.
inline double to_double(const Scalar& x, const SymbolTable& table, int bits = 128) {
  if (x.is_rational()) return x.rational_value().get_d();
  for (int p = bits; p <= 8192; p *= 2)
    if (auto iv = x.enclose(table, p)) return iv->midpoint();
  throw PrecisionExhausted("cannot evaluate " + x.to_string(table));
}

inline long double to_long_double(const Scalar& x, const SymbolTable& table, int bits = 128) {
  for (int p = bits; p <= 8192; p *= 2)
    if (auto iv = x.enclose(table, p)) return iv->midpoint_ld();
  throw PrecisionExhausted("cannot evaluate " + x.to_string(table));
}

}  // namespace mamlab
