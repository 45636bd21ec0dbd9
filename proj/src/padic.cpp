#include "weiljets/padic.hpp"

#include <algorithm>
#include <sstream>

namespace weiljets {

namespace {

BigInt pow_bigint(std::int64_t base, long exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    b *= b;
    exp >>= 1;
  }
  return result;
}

}  // namespace

BigRational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return BigRational(BigInt(text));
    }
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return BigRational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational literal: \"" + text + "\"");
  }
}

std::string format_rational(const BigRational& value) {
  std::ostringstream out;
  out << numerator(value);
  if (denominator(value) != 1) out << "/" << denominator(value);
  return out.str();
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) -> std::uint64_t {
    return static_cast<std::uint64_t>((__uint128_t)a * b % m);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e > 0) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == std::uint64_t(n - 1)) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == std::uint64_t(n - 1)) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

BigInt extended_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
  BigInt old_r = a, r = b;
  BigInt old_x = 1, xx = 0;
  BigInt old_y = 0, yy = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_x - q * xx;
    old_x = xx;
    xx = tmp;
    tmp = old_y - q * yy;
    old_y = yy;
    yy = tmp;
  }
  x = old_x;
  y = old_y;
  return old_r;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt x, y;
  BigInt g = extended_gcd(mod_floor(a, m), m, x, y);
  if (g != 1 && g != -1) throw std::domain_error("no modular inverse");
  return mod_floor(x, m);
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

long int_valuation(BigInt n, const BigInt& p) {
  if (n == 0) throw std::domain_error("valuation of 0");
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

void PadicNumber::check_context(std::int64_t prime, int precision) {
  if (!is_prime(prime)) throw std::invalid_argument("p is not prime");
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
}

BigInt PadicNumber::modulus() const { return pow_bigint(prime_, precision_); }

PadicNumber PadicNumber::zero(std::int64_t prime, int precision) {
  check_context(prime, precision);
  return PadicNumber(prime, precision, true, 0, 0);
}

PadicNumber PadicNumber::from_unit(long valuation, const BigInt& unit, std::int64_t prime,
                                   int precision) {
  check_context(prime, precision);
  BigInt u = mod_floor(unit, pow_bigint(prime, precision));
  if (u == 0) return PadicNumber(prime, precision, true, 0, 0);
  if (u % prime == 0) throw std::invalid_argument("unit mantissa divisible by p");
  return PadicNumber(prime, precision, false, valuation, std::move(u));
}

PadicNumber PadicNumber::from_integer(const BigInt& value, std::int64_t prime, int precision) {
  return from_rational(value, 1, prime, precision);
}

PadicNumber PadicNumber::from_rational(const BigInt& numerator, const BigInt& denominator,
                                       std::int64_t prime, int precision) {
  check_context(prime, precision);
  if (denominator == 0) throw std::invalid_argument("denominator is zero");
  if (numerator == 0) return zero(prime, precision);
  BigInt p = prime;
  BigInt num = numerator, den = denominator;
  long v = int_valuation(num, p) - int_valuation(den, p);
  while (num % p == 0) num /= p;
  while (den % p == 0) den /= p;
  BigInt m = pow_bigint(prime, precision);
  BigInt u = mod_floor(num, m) * mod_inverse(den, m) % m;
  return PadicNumber(prime, precision, false, v, mod_floor(u, m));
}

PadicNumber PadicNumber::from_rational(const BigRational& value, std::int64_t prime,
                                       int precision) {
  return from_rational(boost::multiprecision::numerator(value),
                       boost::multiprecision::denominator(value), prime, precision);
}

BigRational PadicNumber::norm() const {
  if (zero_) return BigRational(0);
  if (valuation_ >= 0) return BigRational(1, pow_bigint(prime_, valuation_));
  return BigRational(pow_bigint(prime_, -valuation_));
}

void PadicNumber::require_same_prime(const PadicNumber& other) const {
  if (prime_ != other.prime_) throw std::invalid_argument("prime mismatch");
}

PadicNumber PadicNumber::operator-() const {
  if (zero_) return *this;
  return PadicNumber(prime_, precision_, false, valuation_, modulus() - unit_);
}

PadicNumber PadicNumber::operator+(const PadicNumber& other) const {
  require_same_prime(other);
  int n = std::min(precision_, other.precision_);
  if (zero_) return other.with_precision(n);
  if (other.zero_) return with_precision(n);
  const PadicNumber& lo = (valuation_ <= other.valuation_) ? *this : other;
  const PadicNumber& hi = (valuation_ <= other.valuation_) ? other : *this;
  // sum is known modulo p^sigma; everything below is bookkeeping around that
  long sigma = std::min(valuation_ + precision_, other.valuation_ + other.precision_);
  int window = static_cast<int>(sigma - lo.valuation_);
  long shift = hi.valuation_ - lo.valuation_;
  BigInt m = pow_bigint(prime_, window);
  BigInt s = lo.unit_;
  if (shift < window) s += hi.unit_ * pow_bigint(prime_, shift);
  s = mod_floor(s, m);
  if (s == 0)
    return PadicNumber(prime_, window, true, 0, 0, /*inexact=*/true);  // all digits cancelled
  long k = int_valuation(s, prime_);
  // cancellation eats k digits
  int reduced = window - static_cast<int>(k);
  BigInt u = mod_floor(s / pow_bigint(prime_, k), pow_bigint(prime_, reduced));
  return PadicNumber(prime_, reduced, false, lo.valuation_ + k, std::move(u));
}

PadicNumber PadicNumber::operator-(const PadicNumber& other) const { return *this + (-other); }

PadicNumber PadicNumber::operator*(const PadicNumber& other) const {
  require_same_prime(other);
  int n = std::min(precision_, other.precision_);
  if (zero_ || other.zero_) {
    bool exact = (zero_ && !inexact_) || (other.zero_ && !other.inexact_);
    return PadicNumber(prime_, n, true, 0, 0, /*inexact=*/!exact);
  }
  BigInt m = pow_bigint(prime_, n);
  BigInt u = unit_ * other.unit_ % m;
  return PadicNumber(prime_, n, false, valuation_ + other.valuation_, std::move(u));
}

PadicNumber PadicNumber::operator/(const PadicNumber& other) const {
  require_same_prime(other);
  if (other.is_inexact_zero())
    throw PrecisionError("divisor is indistinguishable from zero at the precision cap");
  if (other.zero_) throw std::domain_error("division by zero");
  int n = std::min(precision_, other.precision_);
  if (zero_) return PadicNumber(prime_, n, true, 0, 0, inexact_);
  BigInt m = pow_bigint(prime_, n);
  BigInt u = mod_floor(unit_, m) * mod_inverse(other.unit_, m) % m;
  return PadicNumber(prime_, n, false, valuation_ - other.valuation_, std::move(u));
}

PadicNumber PadicNumber::inverse() const {
  if (is_inexact_zero())
    throw PrecisionError("inverting a value indistinguishable from zero at the precision cap");
  if (zero_) throw std::domain_error("division by zero");
  BigInt m = modulus();
  return PadicNumber(prime_, precision_, false, -valuation_, mod_inverse(unit_, m));
}

PadicNumber PadicNumber::pow(unsigned long exponent) const {
  PadicNumber result = from_integer(1, prime_, precision_);
  PadicNumber base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

bool PadicNumber::operator==(const PadicNumber& other) const {
  if (prime_ != other.prime_) return false;
  if (zero_ || other.zero_) return zero_ && other.zero_;
  if (valuation_ != other.valuation_) return false;
  int n = std::min(precision_, other.precision_);
  BigInt m = pow_bigint(prime_, n);
  return mod_floor(unit_, m) == mod_floor(other.unit_, m);
}

PadicNumber PadicNumber::with_precision(int n) const {
  if (n < 1) throw std::invalid_argument("precision must be >= 1");
  if (n >= precision_) return *this;
  if (zero_) return PadicNumber(prime_, n, true, 0, 0, inexact_);
  return PadicNumber(prime_, n, false, valuation_, mod_floor(unit_, pow_bigint(prime_, n)));
}

std::vector<std::int64_t> PadicNumber::digit_expansion() const {
  if (!zero_ && valuation_ < 0) throw std::domain_error("not a p-adic integer");
  std::vector<std::int64_t> digits(precision_, 0);
  if (zero_) return digits;
  BigInt x = mod_floor(unit_ * pow_bigint(prime_, valuation_), modulus());
  for (int i = 0; i < precision_ && x != 0; ++i) {
    digits[i] = static_cast<std::int64_t>(x % prime_);
    x /= prime_;
  }
  return digits;
}

std::string PadicNumber::to_string() const {
  std::ostringstream out;
  if (zero_) {
    out << "0 (mod " << prime_ << "^" << precision_ << ")";
    return out.str();
  }
  out << prime_ << "^" << valuation_ << " * " << unit_ << " (mod " << prime_ << "^" << precision_
      << ")";
  return out.str();
}

std::string PadicNumber::digit_string() const {
  auto digits = digit_expansion();
  std::ostringstream out;
  out << "...";
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    out << *it;
    if (std::next(it) != digits.rend()) out << " ";
  }
  out << " (base " << prime_ << ")";
  return out.str();
}

BigInt PadicNumber::centered_unit() const {
  if (zero_) return 0;
  BigInt m = modulus();
  BigInt half = m / 2;
  return (unit_ > half) ? unit_ - m : unit_;
}

BigRational PadicNumber::centered_value() const {
  if (zero_) return BigRational(0);
  BigInt c = centered_unit();
  if (valuation_ >= 0) return BigRational(c * pow_bigint(prime_, valuation_));
  return BigRational(c, pow_bigint(prime_, -valuation_));
}

bool congruent_mod_pk(const PadicNumber& x, const PadicNumber& y, long k) {
  PadicNumber d = x - y;
  return d.is_zero() || d.valuation() >= k;
}

}  // namespace weiljets
