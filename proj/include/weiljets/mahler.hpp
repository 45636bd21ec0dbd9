#pragma once

#include <optional>
#include <span>
#include <vector>

#include "weiljets/padic.hpp"

namespace weiljets {

/// Coefficients a_0..a_K of a Mahler expansion f(x) = sum a_n C(x, n).
struct MahlerCoefficients {
  std::int64_t prime;
  int precision;
  std::vector<PadicNumber> coeffs;
};

/// Fits a_n = sum_{k<=n} (-1)^{n-k} C(n,k) f(k) from samples f(0), f(1), ..., f(K).
MahlerCoefficients mahler_coefficients(std::span<const PadicNumber> samples);

/// C(x, n) = x(x-1)...(x-n+1)/n! for x in Z_p; lands in Z_p.
PadicNumber binomial_polynomial(const PadicNumber& x, unsigned n);

/// sum a_n C(x, n) for x in Z_p.
PadicNumber mahler_eval(const MahlerCoefficients& coeffs, const PadicNumber& x);

struct DecayEntry {
  unsigned n;
  std::optional<long> valuation;        ///< val(a_n); nullopt when a_n = 0
  std::optional<long> ratio_valuation;  ///< val(a_n / n); diagnostic only, no verdict attached
};

struct DecayReport {
  bool decays = false;  ///< max |a_n| over the final tail_window entries <= p^-threshold
  long threshold = 0;
  int tail_window = 0;
  std::vector<DecayEntry> profile;
};

DecayReport mahler_continuity_check(const MahlerCoefficients& coeffs,
                                    std::optional<long> threshold = std::nullopt,
                                    int tail_window = 5);

}  // namespace weiljets
