#include "weiljets/power_series.hpp"

#include <algorithm>
#include <sstream>

namespace weiljets {

unsigned total_degree(const MultiIndex& m) {
  unsigned d = 0;
  for (unsigned e : m) d += e;
  return d;
}

std::string ConvergenceCertificate::to_string() const {
  std::ostringstream out;
  out << (converges ? "converges" : "diverges") << " at R = p^" << -radius_exponent
      << " (threshold p^-" << threshold << ", window " << tail_window << ")";
  if (witness_degree) out << "; witness degree " << *witness_degree;
  out << "; tiers:";
  for (const auto& [d, v] : tier_valuations) {
    out << " d=" << d << ":";
    if (v)
      out << *v;
    else
      out << "empty";
  }
  return out.str();
}

ConvergenceError::ConvergenceError(ConvergenceCertificate cert)
    : std::runtime_error("convergence check failed: " + cert.to_string()),
      certificate(std::move(cert)) {}

PowerSeries::PowerSeries(std::int64_t prime, int precision, int nvars, int trunc_degree,
                         std::vector<PadicNumber> center)
    : prime_(prime), precision_(precision), nvars_(nvars), trunc_degree_(trunc_degree),
      center_(std::move(center)) {
  if (nvars_ < 1) throw std::invalid_argument("nvars must be >= 1");
  if (trunc_degree_ < 0) throw std::invalid_argument("trunc_degree must be >= 0");
  if (center_.empty())
    center_.assign(nvars_, PadicNumber::zero(prime_, precision_));
  if (static_cast<int>(center_.size()) != nvars_)
    throw std::invalid_argument("center size does not match nvars");
  for (const auto& c : center_)
    if (c.prime() != prime_) throw std::invalid_argument("center prime mismatch");
}

PowerSeries PowerSeries::constant(std::int64_t prime, int precision, int nvars,
                                  const PadicNumber& value, int trunc_degree) {
  PowerSeries f(prime, precision, nvars, trunc_degree);
  f.set_term(MultiIndex(nvars, 0), value);
  return f;
}

PowerSeries PowerSeries::polynomial(std::int64_t prime, int precision,
                                    std::vector<PadicNumber> coeffs, int trunc_degree) {
  int deg = 0;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) deg = static_cast<int>(k);
  if (trunc_degree < 0) trunc_degree = deg + kTailWindow;
  PowerSeries f(prime, precision, 1, trunc_degree);
  for (std::size_t k = 0; k < coeffs.size(); ++k) f.set_term({static_cast<unsigned>(k)}, coeffs[k]);
  return f;
}

PadicNumber PowerSeries::coeff(const MultiIndex& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? PadicNumber::zero(prime_, precision_) : it->second;
}

void PowerSeries::set_term(const MultiIndex& m, const PadicNumber& value) {
  if (static_cast<int>(m.size()) != nvars_) throw std::invalid_argument("multi-index arity");
  if (static_cast<int>(total_degree(m)) > trunc_degree_)
    throw std::invalid_argument("term degree exceeds truncation cap");
  if (value.prime() != prime_) throw std::invalid_argument("coefficient prime mismatch");
  if (value.is_zero())
    terms_.erase(m);
  else
    terms_.insert_or_assign(m, value);
}

void PowerSeries::add_term(const MultiIndex& m, const PadicNumber& value) {
  set_term(m, coeff(m) + value);
}

void PowerSeries::require_compatible(const PowerSeries& other) const {
  if (prime_ != other.prime_ || nvars_ != other.nvars_)
    throw std::invalid_argument("series context mismatch");
  for (int i = 0; i < nvars_; ++i)
    if (center_[i] != other.center_[i]) throw std::invalid_argument("series center mismatch");
}

PowerSeries PowerSeries::operator+(const PowerSeries& other) const {
  require_compatible(other);
  PowerSeries out(prime_, std::min(precision_, other.precision_), nvars_,
                  std::min(trunc_degree_, other.trunc_degree_), center_);
  for (const auto& [m, a] : terms_)
    if (static_cast<int>(total_degree(m)) <= out.trunc_degree_) out.set_term(m, a);
  for (const auto& [m, a] : other.terms_)
    if (static_cast<int>(total_degree(m)) <= out.trunc_degree_) out.add_term(m, a);
  return out;
}

PowerSeries PowerSeries::operator-() const {
  PowerSeries out(prime_, precision_, nvars_, trunc_degree_, center_);
  for (const auto& [m, a] : terms_) out.set_term(m, -a);
  return out;
}

PowerSeries PowerSeries::operator-(const PowerSeries& other) const { return *this + (-other); }

PowerSeries PowerSeries::operator*(const PowerSeries& other) const {
  require_compatible(other);
  PowerSeries out(prime_, std::min(precision_, other.precision_), nvars_,
                  std::min(trunc_degree_, other.trunc_degree_), center_);
  for (const auto& [m1, a1] : terms_) {
    unsigned d1 = total_degree(m1);
    for (const auto& [m2, a2] : other.terms_) {
      if (static_cast<int>(d1 + total_degree(m2)) > out.trunc_degree_) continue;
      MultiIndex m(nvars_);
      for (int i = 0; i < nvars_; ++i) m[i] = m1[i] + m2[i];
      out.add_term(m, a1 * a2);
    }
  }
  return out;
}

PowerSeries PowerSeries::scale(const PadicNumber& s) const {
  PowerSeries out(prime_, precision_, nvars_, trunc_degree_, center_);
  if (s.is_zero()) return out;
  for (const auto& [m, a] : terms_) out.set_term(m, a * s);
  return out;
}

PowerSeries PowerSeries::truncated(int d) const {
  PowerSeries out(prime_, precision_, nvars_, d, center_);
  for (const auto& [m, a] : terms_)
    if (static_cast<int>(total_degree(m)) <= d) out.set_term(m, a);
  return out;
}

PowerSeries PowerSeries::padded(int d) const {
  if (d < trunc_degree_) return truncated(d);
  PowerSeries out(prime_, precision_, nvars_, d, center_);
  for (const auto& [m, a] : terms_) out.set_term(m, a);
  return out;
}

PowerSeries PowerSeries::derivative(int var) const {
  if (var < 0 || var >= nvars_) throw std::invalid_argument("variable index out of range");
  PowerSeries out(prime_, precision_, nvars_, std::max(trunc_degree_ - 1, 0), center_);
  for (const auto& [m, a] : terms_) {
    if (m[var] == 0) continue;
    MultiIndex shifted = m;
    shifted[var] -= 1;
    out.set_term(shifted, a * PadicNumber::from_integer(m[var], prime_, precision_));
  }
  return out;
}

bool PowerSeries::operator==(const PowerSeries& other) const {
  if (prime_ != other.prime_ || nvars_ != other.nvars_ || trunc_degree_ != other.trunc_degree_)
    return false;
  for (int i = 0; i < nvars_; ++i)
    if (center_[i] != other.center_[i]) return false;
  if (terms_.size() != other.terms_.size()) return false;
  for (const auto& [m, a] : terms_) {
    auto it = other.terms_.find(m);
    if (it == other.terms_.end() || it->second != a) return false;
  }
  return true;
}

std::string PowerSeries::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, a] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << a.to_string() << ")";
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      out << "*x" << i + 1;
      if (m[i] > 1) out << "^" << m[i];
    }
  }
  if (first) out << "0";
  out << "  [deg<=" << trunc_degree_ << "]";
  return out.str();
}

ConvergenceCertificate check_convergence(const PowerSeries& f, long radius_exponent,
                                         std::optional<long> threshold) {
  ConvergenceCertificate cert;
  cert.radius_exponent = radius_exponent;
  cert.threshold = threshold.value_or(f.precision());
  cert.tail_window = kTailWindow;

  const int top = f.trunc_degree();
  const int low = std::max(0, top - (kTailWindow - 1));
  std::vector<std::optional<long>> tier(top - low + 1);
  for (const auto& [m, a] : f.terms()) {
    int d = static_cast<int>(total_degree(m));
    if (d < low) continue;
    long v = a.valuation() + radius_exponent * d;
    auto& slot = tier[d - low];
    if (!slot || v < *slot) slot = v;
  }
  for (int d = low; d <= top; ++d)
    cert.tier_valuations.emplace_back(d, tier[d - low]);

  cert.converges = true;
  for (int d = low; d <= top; ++d) {
    if (tier[d - low] && *tier[d - low] < cert.threshold) {
      cert.converges = false;
      cert.witness_degree = d;
      return cert;
    }
  }
  std::optional<long> prev;
  for (int d = low; d <= top; ++d) {
    if (!tier[d - low]) continue;
    if (prev && *tier[d - low] < *prev) {  // tier norm increased
      cert.converges = false;
      cert.witness_degree = d;
      return cert;
    }
    prev = tier[d - low];
  }
  return cert;
}

ConvergenceCertificate check_convergence(const PowerSeries& f, const BigRational& radius,
                                         std::optional<long> threshold) {
  if (radius <= 0) throw std::invalid_argument("radius must be positive");
  BigInt num = numerator(radius), den = denominator(radius);
  long r = 0;
  if (num == 1 && den == 1) {
    r = 0;
  } else if (num == 1) {
    r = int_valuation(den, f.prime());
    if (boost::multiprecision::pow(BigInt(f.prime()), static_cast<unsigned>(r)) != den)
      throw std::invalid_argument("radius must be a power of p");
  } else if (den == 1) {
    r = -int_valuation(num, f.prime());
    if (boost::multiprecision::pow(BigInt(f.prime()), static_cast<unsigned>(-r)) != num)
      throw std::invalid_argument("radius must be a power of p");
  } else {
    throw std::invalid_argument("radius must be a power of p");
  }
  return check_convergence(f, r, threshold);
}

namespace {

// ring adapters so one evaluator serves Q_p values, Weil elements, and series
struct PadicOps {
  std::int64_t p;
  int n;
  PadicNumber zero() const { return PadicNumber::zero(p, n); }
  PadicNumber embed(const PadicNumber& c) const { return c; }
  static PadicNumber mul(const PadicNumber& a, const PadicNumber& b) { return a * b; }
  static PadicNumber add(const PadicNumber& a, const PadicNumber& b) { return a + b; }
  static PadicNumber scale(const PadicNumber& a, const PadicNumber& s) { return a * s; }
};

struct WeilOps {
  AlgebraPtr algebra;
  WeilElement zero() const { return WeilElement::zero(algebra); }
  WeilElement embed(const PadicNumber& c) const { return WeilElement::from_scalar(algebra, c); }
  static WeilElement mul(const WeilElement& a, const WeilElement& b) { return a * b; }
  static WeilElement add(const WeilElement& a, const WeilElement& b) { return a + b; }
  static WeilElement scale(const WeilElement& a, const PadicNumber& s) { return a.scale(s); }
};

struct SeriesOps {
  PowerSeries prototype;  // fixes context, shape, center, and output cap
  PowerSeries zero() const { return prototype; }
  PowerSeries embed(const PadicNumber& c) const {
    PowerSeries out = prototype;
    out.set_term(MultiIndex(out.nvars(), 0), c);
    return out;
  }
  static PowerSeries mul(const PowerSeries& a, const PowerSeries& b) { return a * b; }
  static PowerSeries add(const PowerSeries& a, const PowerSeries& b) { return a + b; }
  static PowerSeries scale(const PowerSeries& a, const PadicNumber& s) { return a.scale(s); }
};

template <typename R, typename Ops>
R evaluate_core(const PowerSeries& f, std::span<const R> args, const Ops& ops, int degree_cap) {
  if (static_cast<int>(args.size()) != f.nvars())
    throw std::invalid_argument("argument count does not match nvars");
  std::vector<R> diffs;
  diffs.reserve(args.size());
  for (int i = 0; i < f.nvars(); ++i)
    diffs.push_back(Ops::add(args[i], ops.embed(-f.center()[i])));

  std::vector<unsigned> max_exp(f.nvars(), 0);
  for (const auto& [m, a] : f.terms()) {
    if (static_cast<int>(total_degree(m)) > degree_cap) continue;
    for (int i = 0; i < f.nvars(); ++i) max_exp[i] = std::max(max_exp[i], m[i]);
  }
  std::vector<std::vector<R>> powers(f.nvars());
  for (int i = 0; i < f.nvars(); ++i) {
    powers[i].push_back(ops.embed(PadicNumber::from_integer(1, f.prime(), f.precision())));
    for (unsigned e = 1; e <= max_exp[i]; ++e)
      powers[i].push_back(Ops::mul(powers[i].back(), diffs[i]));
  }

  R acc = ops.zero();
  for (const auto& [m, a] : f.terms()) {
    if (static_cast<int>(total_degree(m)) > degree_cap) continue;
    R term = ops.embed(a);
    for (int i = 0; i < f.nvars(); ++i)
      if (m[i] > 0) term = Ops::mul(term, powers[i][m[i]]);
    acc = Ops::add(acc, term);
  }
  return acc;
}

}  // namespace

PadicNumber series_eval(const PowerSeries& f, std::span<const PadicNumber> point,
                        EvalCheck check) {
  if (static_cast<int>(point.size()) != f.nvars())
    throw std::invalid_argument("point arity does not match nvars");
  if (check == EvalCheck::certified) {
    std::optional<long> r;
    for (int i = 0; i < f.nvars(); ++i) {
      PadicNumber d = point[i] - f.center()[i];
      if (d.is_zero()) continue;
      if (!r || d.valuation() < *r) r = d.valuation();
    }
    if (r) {
      auto cert = check_convergence(f, *r);
      if (!cert.converges) throw ConvergenceError(std::move(cert));
    }
  }
  return evaluate_core<PadicNumber>(f, point, PadicOps{f.prime(), f.precision()},
                                    f.trunc_degree());
}

WeilElement lift_series(const PowerSeries& f, std::span<const WeilElement> args,
                        EvalCheck check) {
  if (args.empty()) throw std::invalid_argument("lift needs at least one argument");
  AlgebraPtr algebra = args[0].algebra();
  for (const auto& a : args)
    if (!algebra->equivalent(*a.algebra())) throw std::invalid_argument("algebra mismatch");
  if (algebra->prime() != f.prime()) throw std::invalid_argument("prime mismatch");
  if (check == EvalCheck::certified) {
    std::vector<PadicNumber> base;
    base.reserve(args.size());
    for (const auto& a : args) base.push_back(a.project());
    std::optional<long> r;
    for (int i = 0; i < f.nvars(); ++i) {
      PadicNumber d = base[i] - f.center()[i];
      if (d.is_zero()) continue;
      if (!r || d.valuation() < *r) r = d.valuation();
    }
    if (r) {
      auto cert = check_convergence(f, *r);
      if (!cert.converges) throw ConvergenceError(std::move(cert));
    }
  }
  return evaluate_core<WeilElement>(f, args, WeilOps{algebra}, f.trunc_degree());
}

PowerSeries compose(const PowerSeries& outer, std::span<const PowerSeries> inner) {
  if (static_cast<int>(inner.size()) != outer.nvars())
    throw std::invalid_argument("inner series count does not match outer nvars");
  const PowerSeries& g0 = inner[0];
  int cap = outer.trunc_degree();
  for (const auto& g : inner) {
    if (g.prime() != outer.prime()) throw std::invalid_argument("prime mismatch");
    if (g.nvars() != g0.nvars()) throw std::invalid_argument("inner series arity mismatch");
    for (int i = 0; i < g.nvars(); ++i)
      if (g.center()[i] != g0.center()[i])
        throw std::invalid_argument("inner series center mismatch");
    cap = std::min(cap, g.trunc_degree());
  }
  for (int i = 0; i < outer.nvars(); ++i) {
    PadicNumber c0 = inner[i].coeff(MultiIndex(g0.nvars(), 0));
    if (c0 != outer.center()[i])
      throw std::invalid_argument("inner constant term must match outer center");
  }
  int precision = std::min(outer.precision(), g0.precision());
  PowerSeries prototype(outer.prime(), precision, g0.nvars(), cap, g0.center());
  return evaluate_core<PowerSeries>(outer, inner, SeriesOps{prototype}, cap);
}

PowerSeries variable_series(std::int64_t prime, int precision, int nvars, int var,
                            int trunc_degree) {
  PowerSeries f(prime, precision, nvars, trunc_degree);
  MultiIndex m(nvars, 0);
  m.at(var) = 1;
  f.set_term(m, PadicNumber::from_integer(1, prime, precision));
  return f;
}

namespace {

void require_center_zero(const PowerSeries& f) {
  for (const auto& c : f.center())
    if (!c.is_zero()) throw std::invalid_argument("operation needs a center-0 series");
}

}  // namespace

PowerSeries substitute_zero(const PowerSeries& f, int var) {
  require_center_zero(f);
  if (f.nvars() < 2) throw std::invalid_argument("substitute_zero needs at least two variables");
  if (var < 0 || var >= f.nvars()) throw std::invalid_argument("variable index out of range");
  PowerSeries out(f.prime(), f.precision(), f.nvars() - 1, f.trunc_degree());
  for (const auto& [m, a] : f.terms()) {
    if (m[var] != 0) continue;
    MultiIndex reduced;
    for (int i = 0; i < f.nvars(); ++i)
      if (i != var) reduced.push_back(m[i]);
    out.set_term(reduced, a);
  }
  return out;
}

PowerSeries embed_variables(const PowerSeries& f, int new_nvars,
                            const std::vector<int>& var_map) {
  require_center_zero(f);
  if (static_cast<int>(var_map.size()) != f.nvars())
    throw std::invalid_argument("variable map arity mismatch");
  PowerSeries out(f.prime(), f.precision(), new_nvars, f.trunc_degree());
  for (const auto& [m, a] : f.terms()) {
    MultiIndex big(new_nvars, 0);
    for (int i = 0; i < f.nvars(); ++i) big.at(var_map[i]) += m[i];
    out.set_term(big, a);
  }
  return out;
}

PowerSeries reciprocal(const PowerSeries& f) {
  require_center_zero(f);
  PadicNumber c0 = f.coeff(MultiIndex(f.nvars(), 0));
  if (c0.is_zero()) throw std::domain_error("reciprocal needs an invertible constant term");
  PadicNumber c0_inv = c0.inverse();
  PowerSeries h = f.scale(c0_inv);
  h.set_term(MultiIndex(f.nvars(), 0), PadicNumber::zero(f.prime(), f.precision()));
  // 1/f = c0^{-1} sum (-h)^k; h has no constant term so the sum stops at the cap
  PowerSeries acc = PowerSeries::constant(f.prime(), f.precision(), f.nvars(),
                                          PadicNumber::from_integer(1, f.prime(), f.precision()),
                                          f.trunc_degree());
  PowerSeries power = acc;
  for (int k = 1; k <= f.trunc_degree(); ++k) {
    power = power * (-h);
    if (power.terms().empty()) break;
    acc = acc + power;
  }
  return acc.scale(c0_inv);
}

}  // namespace weiljets
