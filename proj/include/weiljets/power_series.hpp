#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weiljets/padic.hpp"
#include "weiljets/weil_algebra.hpp"

namespace weiljets {

using MultiIndex = std::vector<unsigned>;

unsigned total_degree(const MultiIndex& m);

/**
 * Operational convergence certificate for |a_m| R^{|m|} -> 0 on the stored
 * prefix of a truncated series: over the last tail_window degrees the tier
 * norms max_{|m|=d} |a_m| R^d must sit at or below p^{-threshold} and be
 * non-increasing. This certifies only the stored coefficients, not the
 * unknown tail.
 */
struct ConvergenceCertificate {
  bool converges = false;
  long radius_exponent = 0;  ///< R = p^{-r}
  long threshold = 0;
  int tail_window = 0;
  std::optional<int> witness_degree;
  /// degree -> valuation of the tier norm (nullopt: no stored term of that degree)
  std::vector<std::pair<int, std::optional<long>>> tier_valuations;

  std::string to_string() const;
};

struct ConvergenceError : std::runtime_error {
  ConvergenceCertificate certificate;
  explicit ConvergenceError(ConvergenceCertificate cert);
};

enum class EvalCheck { certified, unchecked };

inline constexpr int kTailWindow = 5;

/**
 * Truncated multivariate power series sum_m a_m prod_i (x_i - c_i)^{m_i}
 * with p-adic coefficients. Coefficients are exact up to total degree
 * trunc_degree; higher coefficients are unknown (not asserted zero).
 * Stored sparsely; absent indices are zero.
 */
class PowerSeries {
 public:
  PowerSeries(std::int64_t prime, int precision, int nvars, int trunc_degree,
              std::vector<PadicNumber> center = {});

  static PowerSeries constant(std::int64_t prime, int precision, int nvars,
                              const PadicNumber& value, int trunc_degree);
  /// Univariate polynomial sum coeffs[k] x^k centered at 0. Default cap pads by
  /// the certificate window so the polynomial evaluates anywhere.
  static PowerSeries polynomial(std::int64_t prime, int precision,
                                std::vector<PadicNumber> coeffs, int trunc_degree = -1);

  std::int64_t prime() const { return prime_; }
  int precision() const { return precision_; }
  int nvars() const { return nvars_; }
  int trunc_degree() const { return trunc_degree_; }
  const std::vector<PadicNumber>& center() const { return center_; }
  const std::map<MultiIndex, PadicNumber>& terms() const { return terms_; }

  PadicNumber coeff(const MultiIndex& m) const;
  /// Stores a coefficient (dropping zeros); rejects |m| > trunc_degree.
  void set_term(const MultiIndex& m, const PadicNumber& value);
  void add_term(const MultiIndex& m, const PadicNumber& value);

  PowerSeries operator+(const PowerSeries& other) const;
  PowerSeries operator-(const PowerSeries& other) const;
  PowerSeries operator*(const PowerSeries& other) const;
  PowerSeries operator-() const;
  PowerSeries scale(const PadicNumber& s) const;

  /// Drops coefficients above d and lowers the cap.
  PowerSeries truncated(int d) const;
  /// Raises the declared cap to d: the caller asserts the absent coefficients
  /// between the old and new cap are exactly zero (true for polynomials).
  PowerSeries padded(int d) const;

  /// D_i f; the cap drops by one.
  PowerSeries derivative(int var) const;

  bool operator==(const PowerSeries& other) const;
  bool operator!=(const PowerSeries& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  void require_compatible(const PowerSeries& other) const;
  std::int64_t prime_;
  int precision_;
  int nvars_;
  int trunc_degree_;
  std::vector<PadicNumber> center_;
  std::map<MultiIndex, PadicNumber> terms_;
};

ConvergenceCertificate check_convergence(const PowerSeries& f, long radius_exponent,
                                         std::optional<long> threshold = std::nullopt);
/// Radius given as an exact rational; must be a power of p.
ConvergenceCertificate check_convergence(const PowerSeries& f, const BigRational& radius,
                                         std::optional<long> threshold = std::nullopt);

/// Evaluates at a point of Q_p^n. In certified mode the certificate must pass
/// at the point's distance-from-center radius, else ConvergenceError.
PadicNumber series_eval(const PowerSeries& f, std::span<const PadicNumber> point,
                        EvalCheck check = EvalCheck::certified);

/// The jet lift f^A: evaluates the series with all arithmetic in the Weil
/// algebra of the arguments. Certified mode checks convergence at the
/// projected (base) point.
WeilElement lift_series(const PowerSeries& f, std::span<const WeilElement> args,
                        EvalCheck check = EvalCheck::certified);

/// Substitutes the inner series into the outer one. Each inner constant term
/// must equal the matching outer center coordinate; inner series must share
/// shape, center, and context. The result cap is the tightest input cap.
PowerSeries compose(const PowerSeries& outer, std::span<const PowerSeries> inner);

/// The coordinate function x_var as a series around center 0.
PowerSeries variable_series(std::int64_t prime, int precision, int nvars, int var,
                            int trunc_degree);

/// Sets x_var = center_var and drops that variable (center-0 series only).
PowerSeries substitute_zero(const PowerSeries& f, int var);

/// Re-homes a center-0 series into new_nvars variables; old variable i becomes
/// var_map[i].
PowerSeries embed_variables(const PowerSeries& f, int new_nvars,
                            const std::vector<int>& var_map);

/// 1/f for f with invertible constant term, same cap (center-0 series only).
PowerSeries reciprocal(const PowerSeries& f);

}  // namespace weiljets
