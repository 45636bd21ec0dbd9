#include "weiljets/elliptic.hpp"

#include "weiljets/linalg.hpp"

namespace weiljets {

namespace {

void require_integral(const PadicNumber& a, const char* name) {
  if (!a.is_zero() && a.valuation() < 0)
    throw std::invalid_argument(std::string("Weierstrass coefficient ") + name +
                                " must lie in Z_p");
}

// series of all monomials z^i w^j with i + j = n - 1: (w^n - z^n)/(w - z)
PowerSeries homogeneous_slice(std::int64_t p, int prec, unsigned n, int cap) {
  PowerSeries out(p, prec, 2, cap);
  PadicNumber one = PadicNumber::from_integer(1, p, prec);
  for (unsigned i = 0; i + 1 <= n; ++i) {
    unsigned j = n - 1 - i;
    if (static_cast<int>(i + j) > cap) continue;
    out.set_term({i, j}, one);
  }
  return out;
}

}  // namespace

WeierstrassCurve WeierstrassCurve::create(PadicNumber a1, PadicNumber a2, PadicNumber a3,
                                          PadicNumber a4, PadicNumber a6) {
  require_integral(a1, "a1");
  require_integral(a2, "a2");
  require_integral(a3, "a3");
  require_integral(a4, "a4");
  require_integral(a6, "a6");
  std::int64_t p = a1.prime();
  if (a2.prime() != p || a3.prime() != p || a4.prime() != p || a6.prime() != p)
    throw std::invalid_argument("curve coefficients must share one prime");
  return WeierstrassCurve{std::move(a1), std::move(a2), std::move(a3), std::move(a4),
                          std::move(a6)};
}

PadicNumber WeierstrassCurve::discriminant() const {
  auto scalar = [&](long v) { return PadicNumber::from_integer(v, prime(), precision()); };
  PadicNumber b2 = a1 * a1 + scalar(4) * a2;
  PadicNumber b4 = scalar(2) * a4 + a1 * a3;
  PadicNumber b6 = a3 * a3 + scalar(4) * a6;
  PadicNumber b8 = a1 * a1 * a6 + scalar(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return -(b2 * b2 * b8) - scalar(8) * b4 * b4 * b4 - scalar(27) * b6 * b6 +
         scalar(9) * b2 * b4 * b6;
}

void WeierstrassCurve::validate_nonsingular() const {
  if (is_zero_at(discriminant(), precision()))
    throw std::domain_error("degenerate curve: discriminant vanishes at precision");
}

FormalGroupLaw FormalGroupLaw::build(const WeierstrassCurve& curve, int degree) {
  if (degree < 1) throw std::invalid_argument("truncation degree must be >= 1");
  const std::int64_t p = curve.prime();
  const int prec = curve.precision();
  const int work = degree + 2;    // bivariate slack so F is exact to `degree`
  const int s_degree = work + 1;  // univariate expansion feeding the slice sums

  // s(t) = t^3 + a1 t s + a2 t^2 s + a3 s^2 + a4 t s^2 + a6 s^3, solved by
  // fixed-point iteration; each pass stabilizes at least one more degree.
  PowerSeries t = variable_series(p, prec, 1, 0, s_degree);
  PowerSeries t2 = t * t;
  PowerSeries t3 = t2 * t;
  PowerSeries s(p, prec, 1, s_degree);
  for (int iter = 0; iter <= s_degree + 1; ++iter) {
    PowerSeries s2 = s * s;
    PowerSeries next = t3 + t.scale(curve.a1) * s + t2.scale(curve.a2) * s +
                       s2.scale(curve.a3) + (t * s2).scale(curve.a4) +
                       (s2 * s).scale(curve.a6);
    if (next == s) break;
    s = std::move(next);
  }

  // chord slope lambda(z,w) = sum_n c_n (w^n - z^n)/(w - z) and offset nu
  PowerSeries lambda(p, prec, 2, work);
  for (unsigned n = 3; n <= static_cast<unsigned>(s_degree); ++n) {
    PadicNumber cn = s.coeff({n});
    if (cn.is_zero()) continue;
    lambda = lambda + homogeneous_slice(p, prec, n, work).scale(cn);
  }
  PowerSeries z = variable_series(p, prec, 2, 0, work);
  PowerSeries s_of_z(p, prec, 2, work);
  for (const auto& [m, a] : s.terms()) {
    if (static_cast<int>(m[0]) > work) continue;
    s_of_z.set_term({m[0], 0}, a);
  }
  PowerSeries nu = s_of_z - lambda * z;

  // third chord intersection: t3 = -z - w - (a1 l + a2 n + a3 l^2 + 2 a4 l n + 3 a6 l^2 n)
  //                                        / (1 + a2 l + a4 l^2 + a6 l^3)
  auto scalar = [&](long v) { return PadicNumber::from_integer(v, p, prec); };
  PowerSeries w = variable_series(p, prec, 2, 1, work);
  PowerSeries l2 = lambda * lambda;
  PowerSeries numerator = lambda.scale(curve.a1) + nu.scale(curve.a2) + l2.scale(curve.a3) +
                          (lambda * nu).scale(curve.a4 * scalar(2)) +
                          (l2 * nu).scale(curve.a6 * scalar(3));
  PowerSeries denominator =
      PowerSeries::constant(p, prec, 2, scalar(1), work) + lambda.scale(curve.a2) +
      l2.scale(curve.a4) + (l2 * lambda).scale(curve.a6);
  PowerSeries third = -z - w - numerator * reciprocal(denominator);

  // formal inverse in one variable: i(t) = -t / (1 - a1 t - a3 s(t))
  PowerSeries tu = variable_series(p, prec, 1, 0, work);
  PowerSeries su = s.truncated(work);
  PowerSeries inv_den = PowerSeries::constant(p, prec, 1, scalar(1), work) -
                        tu.scale(curve.a1) - su.scale(curve.a3);
  PowerSeries inverse = (-tu) * reciprocal(inv_den);

  // F(z,w) = i(third chord intersection)
  std::vector<PowerSeries> at_third{third};
  PowerSeries sum = compose(inverse, at_third).truncated(degree);
  inverse = inverse.truncated(degree);

  // invariant density P(z) = 1 / (dF/dw)(z, 0)
  PowerSeries fw_at_zero = substitute_zero(sum.derivative(1), 1);
  PowerSeries invariant = reciprocal(fw_at_zero);  // degree - 1 cap via the derivative

  return FormalGroupLaw(curve, degree, std::move(sum), std::move(inverse),
                        std::move(invariant));
}

FglAxiomReport verify_fgl_axioms(const FormalGroupLaw& fgl) {
  const PowerSeries& f = fgl.sum();
  const std::int64_t p = f.prime();
  const int prec = f.precision();
  const int d = fgl.degree();
  FglAxiomReport report;

  PowerSeries z1 = variable_series(p, prec, 1, 0, d);
  report.identity = (substitute_zero(f, 1) == z1) && (substitute_zero(f, 0) == z1);

  PowerSeries swapped = embed_variables(f, 2, {1, 0});
  report.commutativity = (swapped == f);

  PowerSeries z3 = variable_series(p, prec, 3, 0, d);
  PowerSeries w3 = variable_series(p, prec, 3, 1, d);
  PowerSeries u3 = variable_series(p, prec, 3, 2, d);
  PowerSeries f_zw = embed_variables(f, 3, {0, 1});
  PowerSeries f_wu = embed_variables(f, 3, {1, 2});
  std::vector<PowerSeries> left_args{f_zw, u3};
  std::vector<PowerSeries> right_args{z3, f_wu};
  report.associativity = (compose(f, left_args) == compose(f, right_args));

  std::vector<PowerSeries> inv_args{variable_series(p, prec, 1, 0, d), fgl.inverse_series()};
  report.inverse_law = compose(f, inv_args).terms().empty();
  return report;
}

namespace {

void require_dual_jet(const FormalGroupLaw& fgl, const WeilElement& x) {
  const auto& algebra = *x.algebra();
  if (algebra.dim() != 2 || algebra.nilpotency_index() != 2)
    throw std::invalid_argument("jet group operations need dual-number arguments");
  if (algebra.prime() != fgl.sum().prime())
    throw std::invalid_argument("jet prime does not match the group law");
  const PadicNumber& base = x.project();
  if (!base.is_zero() && base.valuation() < 1)
    throw std::domain_error("jet base point outside the formal-group domain |z| < 1");
}

}  // namespace

WeilElement jet_group_add(const FormalGroupLaw& fgl, const WeilElement& x,
                          const WeilElement& y) {
  require_dual_jet(fgl, x);
  require_dual_jet(fgl, y);
  std::vector<WeilElement> args{x, y};
  return lift_series(fgl.sum(), args, EvalCheck::unchecked);
}

WeilElement jet_negate(const FormalGroupLaw& fgl, const WeilElement& x) {
  require_dual_jet(fgl, x);
  std::vector<WeilElement> args{x};
  return lift_series(fgl.inverse_series(), args, EvalCheck::unchecked);
}

TrivializedJet trivialize(const FormalGroupLaw& fgl, const WeilElement& x) {
  require_dual_jet(fgl, x);
  std::vector<PadicNumber> base{x.project()};
  PadicNumber density = series_eval(fgl.invariant_coeff(), base, EvalCheck::unchecked);
  return TrivializedJet{x.project(), x.coeff(1) * density};
}

WeilElement untrivialize(const FormalGroupLaw& fgl, const AlgebraPtr& dual,
                         const PadicNumber& z0, const PadicNumber& t) {
  if (!z0.is_zero() && z0.valuation() < 1)
    throw std::domain_error("base point outside the formal-group domain |z| < 1");
  std::vector<PadicNumber> base{z0};
  PadicNumber density = series_eval(fgl.invariant_coeff(), base, EvalCheck::unchecked);
  return WeilElement(dual, {z0, t / density});
}

}  // namespace weiljets
