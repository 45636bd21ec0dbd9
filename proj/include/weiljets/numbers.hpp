#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace weiljets {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Parses "a/b", "a", "-a/b" into an exact rational. Throws std::invalid_argument on junk.
BigRational parse_rational(const std::string& text);

/// Formats as "a/b", or "a" when the denominator is 1.
std::string format_rational(const BigRational& value);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::int64_t n);

/// Extended Euclid: returns g = gcd(a, b) and sets x, y with a*x + b*y = g.
BigInt extended_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y);

/// Inverse of a modulo m (m > 1). Throws std::domain_error when gcd(a, m) != 1.
BigInt mod_inverse(const BigInt& a, const BigInt& m);

/// a mod m normalized into [0, m).
BigInt mod_floor(const BigInt& a, const BigInt& m);

/// Multiplicity of p in n (n != 0).
long int_valuation(BigInt n, const BigInt& p);

}  // namespace weiljets
