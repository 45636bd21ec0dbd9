#include "weiljets/weil_bundle.hpp"

namespace weiljets {

WeilPoint::WeilPoint(AlgebraPtr algebra, PadicMatrix coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (!algebra_) throw std::invalid_argument("null algebra");
  if (coords_.empty()) throw std::invalid_argument("point needs at least one coordinate row");
  for (const auto& row : coords_) {
    if (static_cast<int>(row.size()) != algebra_->dim())
      throw std::invalid_argument("coordinate row width does not match algebra dimension");
    for (const auto& entry : row)
      if (entry.prime() != algebra_->prime())
        throw std::invalid_argument("coordinate prime does not match algebra");
  }
}

WeilPoint WeilPoint::from_rows(std::span<const WeilElement> rows) {
  if (rows.empty()) throw std::invalid_argument("point needs at least one coordinate row");
  PadicMatrix coords;
  for (const auto& r : rows) coords.push_back(r.coeffs());
  return WeilPoint(rows[0].algebra(), std::move(coords));
}

WeilElement WeilPoint::row(int i) const { return WeilElement(algebra_, coords_.at(i)); }

std::vector<WeilElement> WeilPoint::rows() const {
  std::vector<WeilElement> out;
  out.reserve(coords_.size());
  for (int i = 0; i < base_dim(); ++i) out.push_back(row(i));
  return out;
}

std::vector<PadicNumber> WeilPoint::project() const {
  std::vector<PadicNumber> out;
  out.reserve(coords_.size());
  for (const auto& row : coords_) out.push_back(row[0]);
  return out;
}

bool WeilPoint::operator==(const WeilPoint& other) const {
  if (!algebra_->equivalent(*other.algebra_) || coords_.size() != other.coords_.size())
    return false;
  for (std::size_t i = 0; i < coords_.size(); ++i)
    for (std::size_t j = 0; j < coords_[i].size(); ++j)
      if (coords_[i][j] != other.coords_[i][j]) return false;
  return true;
}

void ChartTransition::validate() const {
  if (components.empty()) throw std::invalid_argument("transition needs components");
  const PowerSeries& first = components[0];
  if (first.nvars() != dim())
    throw std::invalid_argument("transition must have one component per variable");
  for (const auto& c : components) {
    if (c.nvars() != first.nvars() || c.prime() != first.prime())
      throw std::invalid_argument("transition component context mismatch");
    for (int i = 0; i < first.nvars(); ++i)
      if (c.center()[i] != first.center()[i])
        throw std::invalid_argument("transition component center mismatch");
  }
}

ChartTransition identity_transition(std::int64_t prime, int precision, int nvars,
                                    int trunc_degree, std::vector<PadicNumber> center) {
  if (center.empty()) center.assign(nvars, PadicNumber::zero(prime, precision));
  ChartTransition t;
  for (int k = 0; k < nvars; ++k) {
    PowerSeries comp(prime, precision, nvars, trunc_degree, center);
    comp.set_term(MultiIndex(nvars, 0), center[k]);
    MultiIndex unit(nvars, 0);
    unit[k] = 1;
    comp.set_term(unit, PadicNumber::from_integer(1, prime, precision));
    t.components.push_back(std::move(comp));
  }
  return t;
}

WeilPoint transition_lift(const ChartTransition& transition, const WeilPoint& point,
                          EvalCheck check) {
  transition.validate();
  if (transition.dim() != point.base_dim())
    throw std::invalid_argument("transition dimension does not match point");
  auto rows = point.rows();
  std::vector<WeilElement> out;
  out.reserve(rows.size());
  for (const auto& component : transition.components)
    out.push_back(lift_series(component, rows, check));
  return WeilPoint::from_rows(out);
}

std::vector<WeilElement> lift_vector_field(std::span<const PowerSeries> coefficients,
                                           const WeilPoint& point, EvalCheck check) {
  if (static_cast<int>(coefficients.size()) != point.base_dim())
    throw std::invalid_argument("vector field needs one coefficient per coordinate");
  auto rows = point.rows();
  std::vector<WeilElement> out;
  out.reserve(coefficients.size());
  for (const auto& a : coefficients) out.push_back(lift_series(a, rows, check));
  return out;
}

void KForm::set_component(std::vector<int> index_set, PowerSeries coefficient) {
  if (static_cast<int>(index_set.size()) != degree)
    throw std::invalid_argument("index set size does not match form degree");
  for (std::size_t a = 0; a < index_set.size(); ++a) {
    if (index_set[a] < 0 || index_set[a] >= nvars)
      throw std::invalid_argument("form index out of range");
    if (a > 0 && index_set[a] <= index_set[a - 1])
      throw std::invalid_argument("form index set must be strictly increasing");
  }
  components.insert_or_assign(std::move(index_set), std::move(coefficient));
}

namespace {

WeilElement weil_determinant(const std::vector<std::vector<WeilElement>>& m, const AlgebraPtr& a) {
  const std::size_t k = m.size();
  if (k == 0) return WeilElement::one(a);
  if (k == 1) return m[0][0];
  // Laplace expansion along the first row; forms stay small (k <= n)
  WeilElement acc = WeilElement::zero(a);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::vector<WeilElement>> minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<WeilElement> row;
      for (std::size_t cc = 0; cc < k; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    WeilElement term = m[0][c] * weil_determinant(minor, a);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

WeilElement evaluate_lifted_form(const KForm& omega, const WeilPoint& point,
                                 std::span<const VelocityMatrix> vectors, EvalCheck check) {
  if (omega.nvars != point.base_dim())
    throw std::invalid_argument("form arity does not match point dimension");
  if (static_cast<int>(vectors.size()) != omega.degree)
    throw std::invalid_argument("a k-form pairs against k tangent vectors");
  const AlgebraPtr& algebra = point.algebra();
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != omega.nvars)
      throw std::invalid_argument("tangent vector row count mismatch");
    for (const auto& row : v)
      if (static_cast<int>(row.size()) != algebra->dim())
        throw std::invalid_argument("tangent vector column count mismatch");
  }

  auto rows = point.rows();
  WeilElement acc = WeilElement::zero(algebra);
  for (const auto& [index_set, coefficient] : omega.components) {
    // matrix of dx_{i_a}(v_b), everything in A
    std::vector<std::vector<WeilElement>> pairing;
    for (int a = 0; a < omega.degree; ++a) {
      std::vector<WeilElement> row;
      for (int b = 0; b < omega.degree; ++b)
        row.emplace_back(algebra, vectors[b][index_set[a]]);
      pairing.push_back(std::move(row));
    }
    acc = acc + lift_series(coefficient, rows, check) * weil_determinant(pairing, algebra);
  }
  return acc;
}

void ChristoffelData::validate() const {
  if (symbols.size() != static_cast<std::size_t>(dim) * dim * dim)
    throw std::invalid_argument("Christoffel data must hold n^3 series");
}

std::vector<WeilElement> lift_connection(const ChristoffelData& christoffel,
                                         std::span<const PowerSeries> x_field,
                                         std::span<const PowerSeries> y_field,
                                         const WeilPoint& point, EvalCheck check) {
  const int n = point.base_dim();
  christoffel.validate();
  if (christoffel.dim != n || static_cast<int>(x_field.size()) != n ||
      static_cast<int>(y_field.size()) != n)
    throw std::invalid_argument("connection data dimension mismatch");

  auto rows = point.rows();
  const AlgebraPtr& algebra = point.algebra();
  std::vector<WeilElement> x_at, y_at;
  for (int i = 0; i < n; ++i) x_at.push_back(lift_series(x_field[i], rows, check));
  for (int j = 0; j < n; ++j) y_at.push_back(lift_series(y_field[j], rows, check));

  std::vector<WeilElement> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    // X(Y^k) assembled symbolically, then lifted
    std::optional<PowerSeries> directional;
    for (int i = 0; i < n; ++i) {
      PowerSeries term = x_field[i] * y_field[k].derivative(i);
      directional = directional ? *directional + term : term;
    }
    WeilElement component = lift_series(*directional, rows, check);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const PowerSeries& gamma = christoffel.at(i, j, k);
        component = component + x_at[i] * y_at[j] * lift_series(gamma, rows, check);
      }
    out.push_back(std::move(component));
  }
  return out;
}

PowerSeries mobius_series(const PadicNumber& a, const PadicNumber& b, const PadicNumber& c,
                          const PadicNumber& d, const PadicNumber& center, int trunc_degree) {
  const std::int64_t p = center.prime();
  const int n = center.precision();
  PadicNumber q = c * center + d;
  if (q.is_zero()) throw std::domain_error("Mobius series has a pole at the center");
  PadicNumber value = (a * center + b) / q;  // f(center)
  PadicNumber slope = a;
  PadicNumber t = -(c / q);
  // (A + B u) / (q (1 - t u)) = sum_j (A t^j + B t^{j-1}) / q * u^j
  PadicNumber big_a = a * center + b;
  PowerSeries f(p, n, 1, trunc_degree, {center});
  f.set_term({0}, value);
  PadicNumber tj = PadicNumber::from_integer(1, p, n);  // t^{j-1}
  for (int j = 1; j <= trunc_degree; ++j) {
    PadicNumber coeff = (big_a * t * tj + slope * tj) / q;
    f.set_term({static_cast<unsigned>(j)}, coeff);
    tj = tj * t;
  }
  return f;
}

P1ChartSet p1_charts(std::int64_t prime, int precision, int trunc_degree,
                     const PadicNumber& center) {
  if (center.is_zero() || center.valuation() != 0)
    throw std::invalid_argument("P1 chart center must be a unit");
  auto scalar = [&](long v) { return PadicNumber::from_integer(v, prime, precision); };
  P1ChartSet set;
  // phi_1 . phi_0^{-1} : y -> 1/y
  set.t01.components.push_back(
      mobius_series(scalar(0), scalar(1), scalar(1), scalar(0), center, trunc_degree));
  // phi_2 . phi_0^{-1} : y -> 1/(y - p)
  set.t02.components.push_back(
      mobius_series(scalar(0), scalar(1), scalar(1), scalar(-prime), center, trunc_degree));
  // phi_2 . phi_1^{-1} : w -> w/(1 - p w), centered at the image 1/center
  set.t12.components.push_back(mobius_series(scalar(1), scalar(0), scalar(-prime), scalar(1),
                                             center.inverse(), trunc_degree));
  return set;
}

}  // namespace weiljets
