#pragma once

#include "weiljets/power_series.hpp"

namespace weiljets {

/**
 * Coefficients of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Z_p.
 * The formal expansion at the origin exists for any such data; the
 * discriminant is exposed so callers can check global smoothness.
 */
struct WeierstrassCurve {
  PadicNumber a1, a2, a3, a4, a6;

  static WeierstrassCurve create(PadicNumber a1, PadicNumber a2, PadicNumber a3, PadicNumber a4,
                                 PadicNumber a6);

  std::int64_t prime() const { return a1.prime(); }
  int precision() const { return a1.precision(); }
  PadicNumber discriminant() const;
  /// Throws std::domain_error when the discriminant vanishes at precision.
  void validate_nonsingular() const;
};

struct FglAxiomReport {
  bool identity = false;       ///< F(z,0) = z and F(0,w) = w
  bool commutativity = false;  ///< F(z,w) = F(w,z)
  bool associativity = false;  ///< F(F(z,w),u) = F(z,F(w,u))
  bool inverse_law = false;    ///< F(z, i(z)) = 0
  bool all() const { return identity && commutativity && associativity && inverse_law; }
};

/**
 * Formal group law of a Weierstrass curve in the parameter z = -x/y, built by
 * the chord construction on the s = -1/y expansion: F(z,w) to total degree D,
 * the formal inverse i(z), and the invariant-differential density
 * P(z) = 1/(dF/dw)(z,0) to degree D-1.
 */
class FormalGroupLaw {
 public:
  static FormalGroupLaw build(const WeierstrassCurve& curve, int degree);

  const WeierstrassCurve& curve() const { return curve_; }
  int degree() const { return degree_; }
  const PowerSeries& sum() const { return sum_; }                        // F(z, w)
  const PowerSeries& inverse_series() const { return inverse_; }        // i(z)
  const PowerSeries& invariant_coeff() const { return invariant_; }     // P(z)

 private:
  FormalGroupLaw(WeierstrassCurve curve, int degree, PowerSeries sum, PowerSeries inverse,
                 PowerSeries invariant)
      : curve_(std::move(curve)), degree_(degree), sum_(std::move(sum)),
        inverse_(std::move(inverse)), invariant_(std::move(invariant)) {}

  WeierstrassCurve curve_;
  int degree_;
  PowerSeries sum_;
  PowerSeries inverse_;
  PowerSeries invariant_;
};

/// Coefficientwise axiom suite at the law's truncation degree.
FglAxiomReport verify_fgl_axioms(const FormalGroupLaw& fgl);

/// Group law on dual-number jets: lift of F. Arguments must project into the
/// formal-group domain val >= 1.
WeilElement jet_group_add(const FormalGroupLaw& fgl, const WeilElement& x, const WeilElement& y);
WeilElement jet_negate(const FormalGroupLaw& fgl, const WeilElement& x);

/// Image of a dual jet under E^A ~ E-hat x Q_p: t = z1 * P(z0), which makes
/// the second factor additive under the jet group law.
struct TrivializedJet {
  PadicNumber z0;
  PadicNumber t;
};

TrivializedJet trivialize(const FormalGroupLaw& fgl, const WeilElement& x);
WeilElement untrivialize(const FormalGroupLaw& fgl, const AlgebraPtr& dual,
                         const PadicNumber& z0, const PadicNumber& t);

}  // namespace weiljets
