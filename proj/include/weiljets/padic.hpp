#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "weiljets/numbers.hpp"

namespace weiljets {

/// Valuation reported for the zero element.
inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

inline constexpr int kDefaultPrecision = 20;

/// Raised when a result is indistinguishable from zero at the precision cap
/// but the operation needs to tell (inversion, division).
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/**
 * An element of Q_p at capped relative precision.
 *
 * A nonzero value is p^v * u where the unit u (u mod p != 0) is stored
 * modulo p^N; N is the count of significant base-p digits. Zero is the
 * valuation-infinity sentinel and never stores a unit. Arithmetic keeps
 * the minimum precision of its operands; additive cancellation reduces
 * the stored precision digit-for-digit. A sum whose stored digits cancel
 * completely collapses to an *inexact* zero (zero at the working cap):
 * it behaves as zero everywhere except that dividing by it or inverting
 * it raises PrecisionError instead of the division-by-zero error.
 */
class PadicNumber {
 public:
  static PadicNumber zero(std::int64_t prime, int precision = kDefaultPrecision);
  static PadicNumber from_integer(const BigInt& value, std::int64_t prime,
                                  int precision = kDefaultPrecision);
  static PadicNumber from_rational(const BigInt& numerator, const BigInt& denominator,
                                   std::int64_t prime, int precision = kDefaultPrecision);
  static PadicNumber from_rational(const BigRational& value, std::int64_t prime,
                                   int precision = kDefaultPrecision);
  /// Assembles p^valuation * unit directly; unit is reduced mod p^precision.
  static PadicNumber from_unit(long valuation, const BigInt& unit, std::int64_t prime,
                               int precision);

  std::int64_t prime() const { return prime_; }
  int precision() const { return precision_; }
  bool is_zero() const { return zero_; }
  /// Zero produced by full additive cancellation (only known to vanish mod p^cap).
  bool is_inexact_zero() const { return zero_ && inexact_; }
  /// kInfiniteValuation for the zero element.
  long valuation() const { return zero_ ? kInfiniteValuation : valuation_; }
  /// Unit mantissa in [1, p^N); zero element has none (returns 0).
  const BigInt& unit() const { return unit_; }

  /// |x|_p = p^{-v} as an exact rational; 0 for the zero element.
  BigRational norm() const;

  PadicNumber operator-() const;
  PadicNumber operator+(const PadicNumber& other) const;
  PadicNumber operator-(const PadicNumber& other) const;
  PadicNumber operator*(const PadicNumber& other) const;
  PadicNumber operator/(const PadicNumber& other) const;
  PadicNumber& operator+=(const PadicNumber& other) { return *this = *this + other; }
  PadicNumber& operator-=(const PadicNumber& other) { return *this = *this - other; }
  PadicNumber& operator*=(const PadicNumber& other) { return *this = *this * other; }
  PadicNumber& operator/=(const PadicNumber& other) { return *this = *this / other; }

  PadicNumber inverse() const;
  PadicNumber pow(unsigned long exponent) const;

  /// Equal iff primes match, valuations match, and units agree mod p^min(N1,N2).
  bool operator==(const PadicNumber& other) const;
  bool operator!=(const PadicNumber& other) const { return !(*this == other); }

  /// Truncates the unit to n significant digits (n <= precision()).
  PadicNumber with_precision(int n) const;

  /// Digits a_0..a_{N-1} of the value mod p^N; requires valuation >= 0.
  std::vector<std::int64_t> digit_expansion() const;

  /// "p^v * u (mod p^N)", e.g. "5^2 * 2 (mod 5^4)".
  std::string to_string() const;
  /// "...d3 d2 d1 d0 (base p)", most significant stored digit first.
  std::string digit_string() const;

  /// Representative of the unit in (-p^N/2, p^N/2]; handy for display.
  BigInt centered_unit() const;
  /// centered_unit * p^v as an exact rational (0 for zero).
  BigRational centered_value() const;

 private:
  PadicNumber(std::int64_t prime, int precision, bool zero, long valuation, BigInt unit,
              bool inexact = false)
      : prime_(prime), precision_(precision), zero_(zero), inexact_(inexact),
        valuation_(valuation), unit_(std::move(unit)) {}
  static void check_context(std::int64_t prime, int precision);
  BigInt modulus() const;  // p^N
  void require_same_prime(const PadicNumber& other) const;

  std::int64_t prime_;
  int precision_;
  bool zero_;
  bool inexact_;    // zero known only mod p^cap
  long valuation_;  // meaningless when zero_
  BigInt unit_;     // in [1, p^N), coprime to p; 0 when zero_
};

/// True when x == y mod p^k, i.e. val(x - y) >= k.
bool congruent_mod_pk(const PadicNumber& x, const PadicNumber& y, long k);

}  // namespace weiljets
