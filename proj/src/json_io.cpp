#include "weiljets/json_io.hpp"

#include <fstream>

namespace weiljets {

namespace {

BigInt pow_bigint(std::int64_t base, long exp) {
  BigInt b = base, r = 1;
  while (exp > 0) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

std::int64_t require_int(const Json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number_integer())
    throw std::invalid_argument(std::string("missing integer field \"") + field + "\"");
  return j[field].get<std::int64_t>();
}

}  // namespace

std::optional<BigRational> rational_reconstruct(const PadicNumber& x) {
  if (x.is_zero()) return BigRational(0);
  BigInt modulus = pow_bigint(x.prime(), x.precision());
  BigInt bound = boost::multiprecision::sqrt(BigInt(modulus / 2));
  if (bound < 1) return std::nullopt;
  BigInt r0 = modulus, r1 = x.unit();
  BigInt t0 = 0, t1 = 1;
  while (r1 > bound) {
    BigInt q = r0 / r1;
    BigInt tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0) return std::nullopt;
  BigInt den = t1 < 0 ? BigInt(-t1) : t1;
  BigInt num = t1 < 0 ? BigInt(-r1) : r1;
  if (den > bound || boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den) != 1)
    return std::nullopt;
  if (den % x.prime() == 0) return std::nullopt;
  BigRational unit_value(num, den);
  long v = x.valuation();
  if (v >= 0) return unit_value * BigRational(pow_bigint(x.prime(), v));
  return unit_value / BigRational(pow_bigint(x.prime(), -v));
}

std::string padic_display(const PadicNumber& x) {
  if (auto r = rational_reconstruct(x)) return format_rational(*r);
  return x.to_string();
}

Json valuation_to_json(long v) {
  if (v == kInfiniteValuation) return Json("inf");
  return Json(v);
}

PadicNumber padic_from_json(const Json& j, std::int64_t prime, int precision) {
  if (!j.is_string()) throw std::invalid_argument("numbers must be \"a/b\" strings");
  return PadicNumber::from_rational(parse_rational(j.get<std::string>()), prime, precision);
}

Json series_to_json(const PowerSeries& f) {
  Json out;
  out["prime"] = f.prime();
  out["precision"] = f.precision();
  out["nvars"] = f.nvars();
  out["trunc_degree"] = f.trunc_degree();
  Json center = Json::array();
  for (const auto& c : f.center()) center.push_back(padic_display(c));
  out["center"] = center;
  Json terms = Json::array();
  for (const auto& [m, a] : f.terms()) {
    Json term;
    term["exponents"] = m;
    term["coeff"] = padic_display(a);
    terms.push_back(term);
  }
  out["terms"] = terms;
  return out;
}

PowerSeries series_from_json(const Json& j, std::int64_t default_prime,
                             int default_precision) {
  std::int64_t prime = j.contains("prime") ? require_int(j, "prime") : default_prime;
  int precision =
      j.contains("precision") ? static_cast<int>(require_int(j, "precision")) : default_precision;
  if (prime == 0 || precision == 0)
    throw std::invalid_argument("series needs prime and precision");
  int nvars = static_cast<int>(require_int(j, "nvars"));
  int trunc = static_cast<int>(require_int(j, "trunc_degree"));
  std::vector<PadicNumber> center;
  if (j.contains("center")) {
    for (const auto& c : j.at("center")) center.push_back(padic_from_json(c, prime, precision));
  }
  PowerSeries f(prime, precision, nvars, trunc, std::move(center));
  if (j.contains("terms")) {
    for (const auto& term : j.at("terms")) {
      MultiIndex m = term.at("exponents").get<MultiIndex>();
      f.set_term(m, padic_from_json(term.at("coeff"), prime, precision));
    }
  }
  return f;
}

Json algebra_to_json(const WeilAlgebra& algebra) {
  Json out;
  out["prime"] = algebra.prime();
  out["precision"] = algebra.precision();
  out["dim"] = algebra.dim();
  Json constants = Json::array();
  for (int i = 0; i < algebra.dim(); ++i)
    for (int j = 0; j < algebra.dim(); ++j)
      for (int k = 0; k < algebra.dim(); ++k) {
        const PadicNumber& c = algebra.c(i, j, k);
        if (c.is_zero()) continue;
        Json entry;
        entry["i"] = i + 1;
        entry["j"] = j + 1;
        entry["k"] = k + 1;
        entry["value"] = padic_display(c);
        constants.push_back(entry);
      }
  out["structure_constants"] = constants;
  return out;
}

AlgebraPtr algebra_from_json(const Json& j) {
  std::int64_t prime = require_int(j, "prime");
  int precision = static_cast<int>(require_int(j, "precision"));
  int dim = static_cast<int>(require_int(j, "dim"));
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  std::vector<PadicNumber> constants(static_cast<std::size_t>(dim) * dim * dim,
                                     PadicNumber::zero(prime, precision));
  if (j.contains("structure_constants")) {
    for (const auto& entry : j.at("structure_constants")) {
      long i = require_int(entry, "i"), jj = require_int(entry, "j"), k = require_int(entry, "k");
      if (i < 1 || i > dim || jj < 1 || jj > dim || k < 1 || k > dim)
        throw std::invalid_argument("structure constant index out of range");
      constants[((i - 1) * static_cast<std::size_t>(dim) + (jj - 1)) * dim + (k - 1)] =
          padic_from_json(entry.at("value"), prime, precision);
    }
  }
  return WeilAlgebra::build(prime, precision, dim, std::move(constants));
}

WeilPoint point_from_json(const Json& j, const std::filesystem::path& base_dir) {
  AlgebraPtr algebra;
  const Json& aj = j.at("algebra");
  if (aj.is_string()) {
    std::filesystem::path p = aj.get<std::string>();
    if (p.is_relative() && std::filesystem::exists(base_dir / p)) p = base_dir / p;
    algebra = algebra_from_json(load_json_file(p));
  } else {
    algebra = algebra_from_json(aj);
  }
  PadicMatrix coords;
  for (const auto& row : j.at("coords")) {
    std::vector<PadicNumber> r;
    for (const auto& entry : row)
      r.push_back(padic_from_json(entry, algebra->prime(), algebra->precision()));
    coords.push_back(std::move(r));
  }
  return WeilPoint(std::move(algebra), std::move(coords));
}

Json point_to_json(const WeilPoint& point) {
  Json out;
  out["algebra"] = algebra_to_json(*point.algebra());
  Json coords = Json::array();
  for (const auto& row : point.coords()) {
    Json r = Json::array();
    for (const auto& entry : row) r.push_back(padic_display(entry));
    coords.push_back(r);
  }
  out["coords"] = coords;
  return out;
}

Json element_to_json(const WeilElement& element) {
  Json out;
  Json coeffs = Json::array();
  for (const auto& c : element.coeffs()) coeffs.push_back(padic_display(c));
  out["coeffs"] = coeffs;
  return out;
}

DiophantineSystem system_from_json(const Json& j) {
  std::int64_t prime = require_int(j, "prime");
  int precision = static_cast<int>(require_int(j, "precision"));
  int nvars = static_cast<int>(require_int(j, "nvars"));
  std::vector<PowerSeries> equations;
  for (const auto& ej : j.at("equations"))
    equations.push_back(series_from_json(ej, prime, precision));
  return DiophantineSystem::create(prime, precision, nvars, std::move(equations));
}

WeierstrassCurve curve_from_json(const Json& j, std::int64_t default_prime,
                                 int default_precision) {
  std::int64_t prime = j.contains("prime") ? require_int(j, "prime") : default_prime;
  int precision =
      j.contains("precision") ? static_cast<int>(require_int(j, "precision")) : default_precision;
  auto coeff = [&](const char* name) {
    if (!j.contains(name)) return PadicNumber::zero(prime, precision);
    return padic_from_json(j.at(name), prime, precision);
  };
  return WeierstrassCurve::create(coeff("a1"), coeff("a2"), coeff("a3"), coeff("a4"),
                                  coeff("a6"));
}

std::vector<PadicNumber> padic_list_from_json(const Json& j, const char* field,
                                              std::int64_t& prime_out, int& precision_out) {
  prime_out = require_int(j, "prime");
  precision_out = static_cast<int>(require_int(j, "precision"));
  std::vector<PadicNumber> out;
  for (const auto& s : j.at(field)) out.push_back(padic_from_json(s, prime_out, precision_out));
  return out;
}

Json mahler_to_json(const MahlerCoefficients& coeffs) {
  Json out;
  out["prime"] = coeffs.prime;
  out["precision"] = coeffs.precision;
  Json list = Json::array();
  for (const auto& a : coeffs.coeffs) list.push_back(padic_display(a));
  out["coeffs"] = list;
  return out;
}

MahlerCoefficients mahler_from_json(const Json& j) {
  MahlerCoefficients out{0, 0, {}};
  out.coeffs = padic_list_from_json(j, "coeffs", out.prime, out.precision);
  return out;
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument("bad JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

}  // namespace weiljets
