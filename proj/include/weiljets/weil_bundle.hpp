#pragma once

#include <map>
#include <span>

#include "weiljets/linalg.hpp"
#include "weiljets/power_series.hpp"

namespace weiljets {

/**
 * An infinitely near point over a chart, as the n x l coordinate matrix
 * x_{i,j}: row i holds the coefficients of xi(x_i) in the algebra basis,
 * so column 0 is the base point.
 */
class WeilPoint {
 public:
  WeilPoint(AlgebraPtr algebra, PadicMatrix coords);
  static WeilPoint from_rows(std::span<const WeilElement> rows);

  const AlgebraPtr& algebra() const { return algebra_; }
  int base_dim() const { return static_cast<int>(coords_.size()); }
  const PadicMatrix& coords() const { return coords_; }

  WeilElement row(int i) const;
  std::vector<WeilElement> rows() const;
  /// The base point pi_M(xi): column 0.
  std::vector<PadicNumber> project() const;

  bool operator==(const WeilPoint& other) const;
  bool operator!=(const WeilPoint& other) const { return !(*this == other); }

 private:
  AlgebraPtr algebra_;
  PadicMatrix coords_;
};

/// Components of phi_j . phi_i^{-1}: n series in n shared variables.
struct ChartTransition {
  std::vector<PowerSeries> components;

  int dim() const { return static_cast<int>(components.size()); }
  void validate() const;
};

/// Chart whose components are the coordinates themselves.
ChartTransition identity_transition(std::int64_t prime, int precision, int nvars,
                                    int trunc_degree,
                                    std::vector<PadicNumber> center = {});

/// Applies the transition to an infinitely near point: every output
/// coordinate row is the jet lift of the matching component series.
WeilPoint transition_lift(const ChartTransition& transition, const WeilPoint& point,
                          EvalCheck check = EvalCheck::certified);

/// Evaluates the unique projectable lift of X = sum a_i d/dx_i at a point of
/// M^A: component i is the jet lift of the coefficient series a_i.
std::vector<WeilElement> lift_vector_field(std::span<const PowerSeries> coefficients,
                                           const WeilPoint& point,
                                           EvalCheck check = EvalCheck::certified);

/// Tangent vector to M^A in chart coordinates: n x l coordinate velocities.
/// d(pi_M) keeps column 0.
using VelocityMatrix = PadicMatrix;

/// A k-form sum_I f_I dx^I with strictly increasing index sets I (0-based).
struct KForm {
  int nvars = 0;
  int degree = 0;
  std::map<std::vector<int>, PowerSeries> components;

  void set_component(std::vector<int> index_set, PowerSeries coefficient);
};

/// Pairs the lifted form against k tangent vectors of M^A with all arithmetic
/// in A: sum_I lift(f_I) det[ dx_{i_a}(v_b) ].
WeilElement evaluate_lifted_form(const KForm& omega, const WeilPoint& point,
                                 std::span<const VelocityMatrix> vectors,
                                 EvalCheck check = EvalCheck::certified);

/// Christoffel symbols Gamma_{ij}^k as series in the base coordinates,
/// indexed (i*n + j)*n + k.
struct ChristoffelData {
  int dim = 0;
  std::vector<PowerSeries> symbols;

  const PowerSeries& at(int i, int j, int k) const {
    return symbols[(static_cast<std::size_t>(i) * dim + j) * dim + k];
  }
  void validate() const;
};

/**
 * Covariant derivative on the Weil bundle: component k is
 * lift(sum_i X^i D_i Y^k) + sum_{i,j} lift(X^i) lift(Y^j) lift(Gamma_{ij}^k);
 * the directional derivative is formed symbolically on series first.
 */
std::vector<WeilElement> lift_connection(const ChristoffelData& christoffel,
                                         std::span<const PowerSeries> x_field,
                                         std::span<const PowerSeries> y_field,
                                         const WeilPoint& point,
                                         EvalCheck check = EvalCheck::certified);

/// Truncated expansion of (a z + b)/(c z + d) around the given center;
/// requires c*center + d to be invertible.
PowerSeries mobius_series(const PadicNumber& a, const PadicNumber& b, const PadicNumber& c,
                          const PadicNumber& d, const PadicNumber& center, int trunc_degree);

/**
 * Built-in charts on P^1: phi_0 = z, phi_1 = 1/z, phi_2 = 1/(z - p), giving
 * the cocycle t12 . t01 = t02 on unit-ball points around the chosen unit
 * center (t01, t02 centered there; t12 at its image 1/center).
 */
struct P1ChartSet {
  ChartTransition t01;
  ChartTransition t12;
  ChartTransition t02;
};

P1ChartSet p1_charts(std::int64_t prime, int precision, int trunc_degree,
                     const PadicNumber& center);

}  // namespace weiljets
