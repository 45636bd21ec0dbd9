#pragma once

#include "weiljets/weil_bundle.hpp"

namespace weiljets {

/// Polynomial system over Z_p: m center-0 polynomials in n variables with
/// integral coefficients. Stored series are exact (no hidden tail), so
/// evaluation needs no convergence certificate.
struct DiophantineSystem {
  std::int64_t prime = 0;
  int precision = 0;
  int nvars = 0;
  std::vector<PowerSeries> equations;

  static DiophantineSystem create(std::int64_t prime, int precision, int nvars,
                                  std::vector<PowerSeries> equations);
  int size() const { return static_cast<int>(equations.size()); }
};

struct ResidualReport {
  /// val(f_i(x)); kInfiniteValuation marks an exact zero.
  std::vector<long> valuations;
  /// true iff every residual valuation reaches the working precision.
  bool solves = false;
};

ResidualReport evaluate_system(const DiophantineSystem& system,
                               std::span<const PadicNumber> point);

/// Entry (i, j) = (D_j f_i)(x).
PadicMatrix jacobian(const DiophantineSystem& system, std::span<const PadicNumber> point);

/**
 * First-order data at a solution: the kernel of the Jacobian at precision,
 * computed by valuation-pivoted elimination. Rank is rank at precision N;
 * pivot valuations are reported so near-singular systems are visible.
 */
struct TangentSolution {
  std::vector<PadicNumber> base;
  std::vector<std::vector<PadicNumber>> kernel_basis;
  std::vector<long> residual_valuations;
  int rank = 0;
  std::vector<long> pivot_valuations;
};

TangentSolution tangent_space(const DiophantineSystem& system,
                              std::span<const PadicNumber> base);

/// The dual-number points of the solution variety over one base point:
/// xi(x_j) = base_j + v_j eps for v in the kernel span.
struct InfinitesimalFamily {
  AlgebraPtr algebra;
  std::vector<PadicNumber> base;
  std::vector<std::vector<PadicNumber>> kernel_basis;

  /// Jet for v = sum combination_r * kernel_basis[r].
  WeilPoint jet(std::span<const PadicNumber> combination) const;
  /// Jet for an arbitrary tangent candidate v (kernel membership not assumed).
  WeilPoint jet_for_vector(std::span<const PadicNumber> v) const;
};

InfinitesimalFamily infinitesimal_points(const DiophantineSystem& system,
                                         std::span<const PadicNumber> base,
                                         AlgebraPtr dual_numbers);

struct JetVerification {
  std::vector<long> base_valuations;  ///< alpha_1 parts of the lifted equations
  std::vector<long> eps_valuations;   ///< eps parts
  bool ok = false;                    ///< all parts vanish at precision
};

JetVerification verify_infinitesimal(const DiophantineSystem& system, const WeilPoint& jet);

struct HenselResult {
  std::vector<PadicNumber> solution;
  /// Minimal residual valuation before each step and after the last one.
  std::vector<long> residual_history;
};

/**
 * Newton iteration from an approximate root mod p of a square system with
 * unit Jacobian; converges quadratically to precision N. Throws
 * std::domain_error when the seed does not qualify.
 */
HenselResult hensel_lift(const DiophantineSystem& system, std::span<const BigInt> seed);

}  // namespace weiljets
