#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weiljets/execution.hpp"
#include "weiljets/padic.hpp"

namespace weiljets {

/// Structure-constant validation failure; the message carries witnessing indices (1-based).
struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class WeilAlgebra;
using AlgebraPtr = std::shared_ptr<const WeilAlgebra>;

/**
 * A Weil algebra A = Q_p (+) 𝔄 of dimension l, presented by structure
 * constants c[i][j][k] (alpha_i * alpha_j = sum_k c[i][j][k] alpha_k) with
 * alpha_1 = 1 at index 0. Construction validates the unit law, commutativity,
 * associativity mod p^N, and nilpotency of the ideal spanned by alpha_2..alpha_l;
 * instances are immutable afterwards.
 */
class WeilAlgebra {
 public:
  /// constants is a flat l*l*l tensor, index (i*l + j)*l + k, all 0-based.
  static AlgebraPtr build(std::int64_t prime, int precision, int dim,
                          std::vector<PadicNumber> constants,
                          Execution exec = Execution::parallel);
  /// Q_p[eps]/(eps^2).
  static AlgebraPtr dual_numbers(std::int64_t prime, int precision);
  /// Q_p[eps]/(eps^{order+1}), basis 1, eps, ..., eps^order.
  static AlgebraPtr jet_algebra(std::int64_t prime, int precision, int order);

  std::int64_t prime() const { return prime_; }
  int precision() const { return precision_; }
  int dim() const { return dim_; }
  int nilpotency_index() const { return nilpotency_index_; }
  const PadicNumber& c(int i, int j, int k) const {
    return constants_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
  }
  const std::vector<PadicNumber>& constants() const { return constants_; }

  bool equivalent(const WeilAlgebra& other) const;

  PadicNumber scalar_zero() const { return PadicNumber::zero(prime_, precision_); }
  PadicNumber scalar_one() const { return PadicNumber::from_integer(1, prime_, precision_); }

 private:
  WeilAlgebra(std::int64_t prime, int precision, int dim, std::vector<PadicNumber> constants,
              int nilpotency_index)
      : prime_(prime), precision_(precision), dim_(dim), constants_(std::move(constants)),
        nilpotency_index_(nilpotency_index) {}

  std::int64_t prime_;
  int precision_;
  int dim_;
  std::vector<PadicNumber> constants_;
  int nilpotency_index_;
};

/// Associativity sweep over all (i,j,k,r); returns the lexicographically first
/// violating quadruple (0-based) or nullopt. Exposed with both execution paths
/// so the parallel kernel can be checked against the serial reference.
std::optional<std::array<int, 4>> associativity_witness(const std::vector<PadicNumber>& constants,
                                                        int dim, long threshold, Execution exec);

/// Element of a Weil algebra: coordinates in the basis alpha_1..alpha_l.
class WeilElement {
 public:
  WeilElement(AlgebraPtr algebra, std::vector<PadicNumber> coeffs);
  static WeilElement zero(const AlgebraPtr& algebra);
  static WeilElement one(const AlgebraPtr& algebra);
  static WeilElement from_scalar(const AlgebraPtr& algebra, const PadicNumber& value);
  /// Basis element alpha_{index+1} (index 0 is the unit).
  static WeilElement basis(const AlgebraPtr& algebra, int index);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<PadicNumber>& coeffs() const { return coeffs_; }
  const PadicNumber& coeff(int j) const { return coeffs_[j]; }

  /// pr: A -> Q_p, the alpha_1 coordinate.
  const PadicNumber& project() const { return coeffs_[0]; }
  /// |a|_A = max_j |coeffs_j|_p.
  BigRational norm() const;

  WeilElement operator+(const WeilElement& other) const;
  WeilElement operator-(const WeilElement& other) const;
  WeilElement operator*(const WeilElement& other) const;
  WeilElement operator-() const;
  WeilElement scale(const PadicNumber& s) const;
  /// Geometric series over the nilpotent part; throws when project() is zero.
  WeilElement inverse() const;
  WeilElement pow(unsigned long exponent) const;

  bool is_zero() const;
  bool operator==(const WeilElement& other) const;
  bool operator!=(const WeilElement& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  void require_same_algebra(const WeilElement& other) const;
  AlgebraPtr algebra_;
  std::vector<PadicNumber> coeffs_;
};

/// Componentwise val(a-b) >= k.
bool congruent_mod_pk(const WeilElement& a, const WeilElement& b, long k);

}  // namespace weiljets
