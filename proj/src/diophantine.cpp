#include "weiljets/diophantine.hpp"

namespace weiljets {

DiophantineSystem DiophantineSystem::create(std::int64_t prime, int precision, int nvars,
                                            std::vector<PowerSeries> equations) {
  if (equations.empty()) throw std::invalid_argument("system needs at least one equation");
  for (const auto& f : equations) {
    if (f.prime() != prime || f.nvars() != nvars)
      throw std::invalid_argument("equation context mismatch");
    for (const auto& c : f.center())
      if (!c.is_zero()) throw std::invalid_argument("equations must be centered at 0");
    for (const auto& [m, a] : f.terms())
      if (a.valuation() < 0)
        throw std::invalid_argument("equations must have coefficients in Z_p");
  }
  return DiophantineSystem{prime, precision, nvars, std::move(equations)};
}

namespace {

void require_integral_point(std::span<const PadicNumber> point) {
  for (const auto& x : point)
    if (!x.is_zero() && x.valuation() < 0)
      throw std::invalid_argument("point must lie in Z_p^n");
}

}  // namespace

ResidualReport evaluate_system(const DiophantineSystem& system,
                               std::span<const PadicNumber> point) {
  if (static_cast<int>(point.size()) != system.nvars)
    throw std::invalid_argument("point arity mismatch");
  require_integral_point(point);
  ResidualReport report;
  report.solves = true;
  for (const auto& f : system.equations) {
    PadicNumber value = series_eval(f, point, EvalCheck::unchecked);
    report.valuations.push_back(value.valuation());
    if (value.valuation() < system.precision) report.solves = false;
  }
  return report;
}

PadicMatrix jacobian(const DiophantineSystem& system, std::span<const PadicNumber> point) {
  if (static_cast<int>(point.size()) != system.nvars)
    throw std::invalid_argument("point arity mismatch");
  require_integral_point(point);
  PadicMatrix out;
  for (const auto& f : system.equations) {
    std::vector<PadicNumber> row;
    for (int j = 0; j < system.nvars; ++j)
      row.push_back(series_eval(f.derivative(j), point, EvalCheck::unchecked));
    out.push_back(std::move(row));
  }
  return out;
}

TangentSolution tangent_space(const DiophantineSystem& system,
                              std::span<const PadicNumber> base) {
  auto residuals = evaluate_system(system, base);
  if (!residuals.solves)
    throw std::domain_error("base point is not a solution at the working precision");
  TangentSolution out;
  out.base.assign(base.begin(), base.end());
  out.residual_valuations = residuals.valuations;
  PadicMatrix j = jacobian(system, base);
  Elimination e = eliminate(j, system.precision);
  out.rank = e.rank;
  out.pivot_valuations = e.pivot_valuations;
  out.kernel_basis = kernel_basis(j, system.precision);
  return out;
}

WeilPoint InfinitesimalFamily::jet(std::span<const PadicNumber> combination) const {
  if (combination.size() != kernel_basis.size())
    throw std::invalid_argument("one coefficient per kernel vector");
  std::vector<PadicNumber> v(base.size(), PadicNumber::zero(algebra->prime(),
                                                            algebra->precision()));
  for (std::size_t r = 0; r < kernel_basis.size(); ++r)
    for (std::size_t jx = 0; jx < v.size(); ++jx) v[jx] += combination[r] * kernel_basis[r][jx];
  return jet_for_vector(v);
}

WeilPoint InfinitesimalFamily::jet_for_vector(std::span<const PadicNumber> v) const {
  if (v.size() != base.size()) throw std::invalid_argument("tangent vector arity mismatch");
  PadicMatrix coords;
  for (std::size_t jx = 0; jx < base.size(); ++jx)
    coords.push_back({base[jx], v[jx]});
  return WeilPoint(algebra, std::move(coords));
}

InfinitesimalFamily infinitesimal_points(const DiophantineSystem& system,
                                         std::span<const PadicNumber> base,
                                         AlgebraPtr dual_numbers) {
  if (dual_numbers->dim() != 2 || dual_numbers->nilpotency_index() != 2)
    throw std::invalid_argument("infinitesimal solutions are built over dual numbers");
  auto tangent = tangent_space(system, base);
  return InfinitesimalFamily{std::move(dual_numbers), std::move(tangent.base),
                             std::move(tangent.kernel_basis)};
}

JetVerification verify_infinitesimal(const DiophantineSystem& system, const WeilPoint& jet) {
  if (jet.base_dim() != system.nvars) throw std::invalid_argument("jet arity mismatch");
  JetVerification out;
  out.ok = true;
  auto rows = jet.rows();
  for (const auto& f : system.equations) {
    WeilElement value = lift_series(f, rows, EvalCheck::unchecked);
    long base_val = value.coeff(0).valuation();
    long eps_val = value.coeff(1).valuation();
    out.base_valuations.push_back(base_val);
    out.eps_valuations.push_back(eps_val);
    if (base_val < system.precision || eps_val < system.precision) out.ok = false;
  }
  return out;
}

HenselResult hensel_lift(const DiophantineSystem& system, std::span<const BigInt> seed) {
  const int n = system.nvars;
  if (system.size() != n)
    throw std::invalid_argument("Hensel lifting needs a square system");
  if (static_cast<int>(seed.size()) != n) throw std::invalid_argument("seed arity mismatch");

  std::vector<PadicNumber> x;
  for (const auto& s : seed) x.push_back(PadicNumber::from_integer(s, system.prime,
                                                                   system.precision));

  auto residual_floor = [&](const ResidualReport& r) {
    long floor = kInfiniteValuation;
    for (long v : r.valuations) floor = std::min(floor, v);
    return floor;
  };

  auto first = evaluate_system(system, x);
  if (residual_floor(first) < 1)
    throw std::domain_error("seed is not an approximate root mod p");
  {
    Elimination mod_p = eliminate(jacobian(system, x), 1);
    if (mod_p.rank != n)
      throw std::domain_error("Jacobian at the seed is not invertible mod p");
  }

  HenselResult result;
  result.solution = x;
  result.residual_history.push_back(residual_floor(first));
  const int max_steps = 2 * (32 - __builtin_clz(static_cast<unsigned>(system.precision))) + 4;
  for (int step = 0; step < max_steps; ++step) {
    if (result.residual_history.back() >= system.precision) break;
    std::vector<PadicNumber> values;
    for (const auto& f : system.equations)
      values.push_back(series_eval(f, result.solution, EvalCheck::unchecked));
    auto j = jacobian(system, result.solution);
    auto delta = solve_square(j, values, system.precision);
    for (int i = 0; i < n; ++i) result.solution[i] -= delta[i];
    result.residual_history.push_back(
        residual_floor(evaluate_system(system, result.solution)));
  }
  if (result.residual_history.back() < system.precision)
    throw std::runtime_error("Newton iteration failed to reach the working precision");
  return result;
}

}  // namespace weiljets
