#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "weiljets/elliptic.hpp"

using namespace weiljets;
using weiljets::testing::make_rng;
using weiljets::testing::random_zp;

namespace {

PadicNumber p5(long v, int n = 20) { return PadicNumber::from_integer(v, 5, n); }

WeierstrassCurve curve_a(long a1, long a2 = 0, long a3 = 0, long a4 = 0, long a6 = 0,
                         int n = 20) {
  return WeierstrassCurve::create(p5(a1, n), p5(a2, n), p5(a3, n), p5(a4, n), p5(a6, n));
}

WeierstrassCurve random_curve(std::mt19937_64& rng, int n = 20) {
  auto coeff = [&]() { return p5(static_cast<long>(rng() % 25) - 12, n); };
  return WeierstrassCurve::create(coeff(), coeff(), coeff(), coeff(), coeff());
}

WeilElement dual_jet(const AlgebraPtr& a, const PadicNumber& z0, const PadicNumber& z1) {
  return WeilElement(a, {z0, z1});
}

}  // namespace

TEST_CASE("discriminants") {
  // y^2 = x^3 - x has discriminant 64
  auto smooth = curve_a(0, 0, 0, -1, 0);
  CHECK(smooth.discriminant() == p5(64));
  CHECK_NOTHROW(smooth.validate_nonsingular());

  // y^2 + xy = x^3 is nodal; the formal expansion still exists
  auto nodal = curve_a(1);
  CHECK(nodal.discriminant().is_zero());
  CHECK_THROWS_AS(nodal.validate_nonsingular(), std::domain_error);

  CHECK_THROWS_AS(WeierstrassCurve::create(PadicNumber::from_rational(1, 5, 5, 20), p5(0), p5(0),
                                           p5(0), p5(0)),
                  std::invalid_argument);
}

TEST_CASE("group law of the a1-only curve to degree 2") {
  auto fgl = FormalGroupLaw::build(curve_a(1), 2);
  const auto& f = fgl.sum();
  CHECK(f.coeff({1, 0}) == p5(1));
  CHECK(f.coeff({0, 1}) == p5(1));
  CHECK(f.coeff({1, 1}) == p5(-1));
  CHECK(f.terms().size() == 3);
}

TEST_CASE("curves with a1 = a2 = 0 have no quadratic part") {
  auto fgl = FormalGroupLaw::build(curve_a(0, 0, 2, 3, 1), 2);
  const auto& f = fgl.sum();
  CHECK(f.coeff({1, 1}).is_zero());
  CHECK(f.coeff({2, 0}).is_zero());
  CHECK(f.coeff({0, 2}).is_zero());
}

TEST_CASE("first-order law is plain addition") {
  auto rng = make_rng(401);
  auto fgl = FormalGroupLaw::build(random_curve(rng), 1);
  CHECK(fgl.sum().terms().size() == 2);
  CHECK(fgl.sum().coeff({1, 0}) == p5(1));
  CHECK(fgl.sum().coeff({0, 1}) == p5(1));
  // degree-1 invariant density is 1, so t = z1
  CHECK(fgl.invariant_coeff().coeff({0}) == p5(1));
  CHECK(fgl.invariant_coeff().terms().size() == 1);
}

TEST_CASE("degree-3 coefficients for the a1,a2 family") {
  auto rng = make_rng(409);
  for (int trial = 0; trial < 5; ++trial) {
    long a1 = static_cast<long>(rng() % 9) - 4;
    long a2 = static_cast<long>(rng() % 9) - 4;
    auto fgl = FormalGroupLaw::build(curve_a(a1, a2), 3);
    const auto& f = fgl.sum();
    CHECK(f.coeff({1, 1}) == p5(-a1));
    CHECK(f.coeff({2, 1}) == p5(-a2));
    CHECK(f.coeff({1, 2}) == p5(-a2));
    CHECK(f.coeff({3, 0}).is_zero());
    CHECK(f.coeff({0, 3}).is_zero());
    CHECK(f.coeff({2, 0}).is_zero());
  }
}

TEST_CASE("axioms hold coefficientwise for random curves at degree 6") {
  auto rng = make_rng(419);
  for (int trial = 0; trial < 3; ++trial) {
    auto fgl = FormalGroupLaw::build(random_curve(rng), 6);
    auto report = verify_fgl_axioms(fgl);
    CHECK(report.identity);
    CHECK(report.commutativity);
    CHECK(report.associativity);
    CHECK(report.inverse_law);
  }
}

TEST_CASE("jet addition on the a1-only curve") {
  auto fgl = FormalGroupLaw::build(curve_a(1), 2);
  auto dual = WeilAlgebra::dual_numbers(5, 20);
  auto x = dual_jet(dual, p5(5), p5(1));
  auto y = dual_jet(dual, p5(10), p5(0));
  auto sum = jet_group_add(fgl, x, y);
  // F(5,10) = 15 - 50; eps part (1 - w0) z1 + (1 - z0) w1 = -9
  CHECK(sum.coeff(0) == p5(-35));
  CHECK(sum.coeff(1) == p5(-9));

  CHECK(jet_group_add(fgl, x, WeilElement::zero(dual)) == x);

  // the inverse law on jets holds to the truncation depth of the law
  auto fgl6 = FormalGroupLaw::build(curve_a(1), 6);
  auto back = jet_group_add(fgl6, x, jet_negate(fgl6, x));
  CHECK(congruent_mod_pk(back, WeilElement::zero(dual), 6));

  auto outside = dual_jet(dual, p5(2), p5(0));
  CHECK_THROWS_AS(jet_group_add(fgl, outside, y), std::domain_error);
}

TEST_CASE("jet addition differentiates the group law") {
  auto rng = make_rng(421);
  auto dual = WeilAlgebra::dual_numbers(5, 20);
  for (int trial = 0; trial < 20; ++trial) {
    auto fgl = FormalGroupLaw::build(random_curve(rng), 6);
    auto five = p5(5);
    auto z0 = five * random_zp(rng, 5, 20, 2);
    auto w0 = five * random_zp(rng, 5, 20, 2);
    auto z1 = random_zp(rng, 5, 20, 2);
    auto w1 = random_zp(rng, 5, 20, 2);
    auto sum = jet_group_add(fgl, dual_jet(dual, z0, z1), dual_jet(dual, w0, w1));

    std::vector<PadicNumber> at{z0, w0};
    auto fz = series_eval(fgl.sum().derivative(0), at, EvalCheck::unchecked);
    auto fw = series_eval(fgl.sum().derivative(1), at, EvalCheck::unchecked);
    CHECK(sum.coeff(0) == series_eval(fgl.sum(), at, EvalCheck::unchecked));
    CHECK(sum.coeff(1) == fz * z1 + fw * w1);

    // and it is exactly the jet lift of F
    std::vector<WeilElement> args{dual_jet(dual, z0, z1), dual_jet(dual, w0, w1)};
    CHECK(sum == lift_series(fgl.sum(), args, EvalCheck::unchecked));
  }
}

TEST_CASE("explicit first-order law for the a1,a2 family at degree 3") {
  // Differentiating F = z + w - a1 zw - a2(z^2 w + z w^2) gives
  //   eps = z1 + w1 - a1(w0 z1 + z0 w1)
  //         - a2((2 z0 w0 + w0^2) z1 + (z0^2 + 2 z0 w0) w1),
  // the symmetric completion of the first-order expansion.
  auto rng = make_rng(431);
  auto dual = WeilAlgebra::dual_numbers(5, 20);
  for (int trial = 0; trial < 10; ++trial) {
    long a1 = static_cast<long>(rng() % 7) - 3;
    long a2 = static_cast<long>(rng() % 7) - 3;
    auto fgl = FormalGroupLaw::build(curve_a(a1, a2), 3);
    auto five = p5(5);
    auto z0 = five * random_zp(rng, 5, 20, 1);
    auto w0 = five * random_zp(rng, 5, 20, 1);
    auto z1 = random_zp(rng, 5, 20, 1);
    auto w1 = random_zp(rng, 5, 20, 1);
    auto sum = jet_group_add(fgl, dual_jet(dual, z0, z1), dual_jet(dual, w0, w1));

    auto c = [&](long v) { return p5(v); };
    auto expected = z1 + w1 - c(a1) * (w0 * z1 + z0 * w1) -
                    c(a2) * ((c(2) * z0 * w0 + w0 * w0) * z1 + (z0 * z0 + c(2) * z0 * w0) * w1);
    CHECK(sum.coeff(1) == expected);
  }
}

TEST_CASE("negation example and involution") {
  auto rng = make_rng(433);
  auto dual = WeilAlgebra::dual_numbers(5, 20);

  // with a1 = a3 = 0 the formal inverse is exactly -z
  auto fgl = FormalGroupLaw::build(curve_a(0, 3, 0, 2, 1), 4);
  auto x = dual_jet(dual, p5(10), p5(7));
  auto negated = jet_negate(fgl, x);
  CHECK(negated.coeff(0) == p5(-10));
  CHECK(negated.coeff(1) == p5(-7));
  CHECK(jet_negate(fgl, WeilElement::zero(dual)).is_zero());

  for (int trial = 0; trial < 10; ++trial) {
    auto general = FormalGroupLaw::build(random_curve(rng), 6);
    // exact statement at truncation: i(i(z)) = z coefficientwise
    std::vector<PowerSeries> twice{general.inverse_series()};
    CHECK(compose(general.inverse_series(), twice) ==
          variable_series(5, 20, 1, 0, general.degree()));
    // jet-level involution holds to the truncation depth
    auto jet = dual_jet(dual, p5(5) * random_zp(rng, 5, 20, 2), random_zp(rng, 5, 20, 2));
    CHECK(congruent_mod_pk(jet_negate(general, jet_negate(general, jet)), jet, 6));
  }
}

TEST_CASE("invariant differential identity") {
  auto rng = make_rng(439);
  for (int trial = 0; trial < 3; ++trial) {
    auto fgl = FormalGroupLaw::build(random_curve(rng), 6);
    // P(F(z,w)) * dF/dw(z,w) = P(w) coefficientwise to degree 5
    std::vector<PowerSeries> at_f{fgl.sum()};
    auto lhs = compose(fgl.invariant_coeff(), at_f) * fgl.sum().derivative(1);
    auto rhs = embed_variables(fgl.invariant_coeff(), 2, {1});
    CHECK(lhs == rhs);
  }
}

TEST_CASE("trivialization") {
  auto dual = WeilAlgebra::dual_numbers(5, 20);
  auto fgl = FormalGroupLaw::build(curve_a(1), 6);

  SUBCASE("zero tangent maps to zero") {
    auto triv = trivialize(fgl, dual_jet(dual, p5(5), p5(0)));
    CHECK(triv.t.is_zero());
  }

  SUBCASE("roundtrip") {
    auto rng = make_rng(443);
    for (int trial = 0; trial < 30; ++trial) {
      auto jet = dual_jet(dual, p5(5) * random_zp(rng, 5, 20, 2), random_zp(rng, 5, 20, 2));
      auto triv = trivialize(fgl, jet);
      CHECK(untrivialize(fgl, dual, triv.z0, triv.t) == jet);
    }
  }

  SUBCASE("tangent parts add after trivialization") {
    auto rng = make_rng(449);
    auto deep = p5(125);  // sample at valuation >= 3 so the truncation tail stays below p^14
    for (int trial = 0; trial < 30; ++trial) {
      auto x = dual_jet(dual, deep * random_zp(rng, 5, 20, 1), random_zp(rng, 5, 20, 1));
      auto y = dual_jet(dual, deep * random_zp(rng, 5, 20, 1), random_zp(rng, 5, 20, 1));
      auto sum = jet_group_add(fgl, x, y);
      auto lhs = trivialize(fgl, sum).t;
      auto rhs = trivialize(fgl, x).t + trivialize(fgl, y).t;
      CHECK(congruent_mod_pk(lhs, rhs, 20 - 6));
    }
  }
}
