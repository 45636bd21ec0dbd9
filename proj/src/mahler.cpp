#include "weiljets/mahler.hpp"

#include <stdexcept>

namespace weiljets {

MahlerCoefficients mahler_coefficients(std::span<const PadicNumber> samples) {
  if (samples.empty()) throw std::invalid_argument("need at least one sample");
  const std::int64_t p = samples[0].prime();
  const int n = samples[0].precision();
  for (const auto& s : samples)
    if (s.prime() != p) throw std::invalid_argument("sample prime mismatch");

  MahlerCoefficients out{p, n, {}};
  const std::size_t count = samples.size();
  std::vector<BigInt> binom(count, 0);  // row of Pascal's triangle
  for (std::size_t row = 0; row < count; ++row) {
    binom[row] = 1;
    for (std::size_t k = row; k-- > 1;) binom[k] += binom[k - 1];
    PadicNumber a = PadicNumber::zero(p, n);
    for (std::size_t k = 0; k <= row; ++k) {
      PadicNumber term = samples[k] * PadicNumber::from_integer(binom[k], p, n);
      a = ((row - k) % 2 == 0) ? a + term : a - term;
    }
    out.coeffs.push_back(a);
  }
  return out;
}

PadicNumber binomial_polynomial(const PadicNumber& x, unsigned n) {
  if (!x.is_zero() && x.valuation() < 0)
    throw std::domain_error("binomial polynomial needs x in Z_p");
  const std::int64_t p = x.prime();
  const int prec = x.precision();
  PadicNumber c = PadicNumber::from_integer(1, p, prec);
  for (unsigned k = 1; k <= n; ++k) {
    c = c * (x - PadicNumber::from_integer(k - 1, p, prec));
    c = c / PadicNumber::from_integer(k, p, prec);
  }
  return c;
}

PadicNumber mahler_eval(const MahlerCoefficients& coeffs, const PadicNumber& x) {
  if (!x.is_zero() && x.valuation() < 0)
    throw std::domain_error("mahler_eval needs x in Z_p");
  if (x.prime() != coeffs.prime) throw std::invalid_argument("prime mismatch");
  const std::int64_t p = coeffs.prime;
  const int prec = coeffs.precision;
  PadicNumber acc = PadicNumber::zero(p, prec);
  PadicNumber binom = PadicNumber::from_integer(1, p, prec);  // C(x, 0)
  for (std::size_t n = 0; n < coeffs.coeffs.size(); ++n) {
    if (n > 0) {
      binom = binom * (x - PadicNumber::from_integer(n - 1, p, prec));
      binom = binom / PadicNumber::from_integer(n, p, prec);
    }
    acc += coeffs.coeffs[n] * binom;
  }
  return acc;
}

DecayReport mahler_continuity_check(const MahlerCoefficients& coeffs,
                                    std::optional<long> threshold, int tail_window) {
  DecayReport report;
  report.threshold = threshold.value_or(coeffs.precision);
  report.tail_window = tail_window;
  for (std::size_t n = 0; n < coeffs.coeffs.size(); ++n) {
    DecayEntry entry;
    entry.n = static_cast<unsigned>(n);
    const PadicNumber& a = coeffs.coeffs[n];
    if (!a.is_zero()) {
      entry.valuation = a.valuation();
      if (n > 0) {
        long shift = int_valuation(BigInt(n), BigInt(coeffs.prime));
        entry.ratio_valuation = a.valuation() - shift;
      }
    }
    report.profile.push_back(entry);
  }
  report.decays = true;
  std::size_t start = coeffs.coeffs.size() > static_cast<std::size_t>(tail_window)
                          ? coeffs.coeffs.size() - tail_window
                          : 0;
  for (std::size_t n = start; n < coeffs.coeffs.size(); ++n) {
    const auto& v = report.profile[n].valuation;
    if (v && *v < report.threshold) {
      report.decays = false;
      break;
    }
  }
  return report;
}

}  // namespace weiljets
