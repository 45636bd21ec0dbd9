#pragma once

#include <filesystem>
#include <json.hpp>

#include "weiljets/diophantine.hpp"
#include "weiljets/elliptic.hpp"
#include "weiljets/mahler.hpp"

namespace weiljets {

// ordered_json keeps insertion order, so serialized output is byte-stable
using Json = nlohmann::ordered_json;

/// Smallest a/b with a/b = x mod p^N and |a|, b <= sqrt(p^N / 2), when one
/// exists (half-extended Euclid on the unit).
std::optional<BigRational> rational_reconstruct(const PadicNumber& x);

/// "a/b" when the value reconstructs to a rational, else the canonical
/// "p^v * u (mod p^N)" form. Deterministic either way.
std::string padic_display(const PadicNumber& x);

/// Valuations serialize as numbers, with "inf" for the zero element.
Json valuation_to_json(long v);

PadicNumber padic_from_json(const Json& j, std::int64_t prime, int precision);

Json series_to_json(const PowerSeries& f);
/// Fields prime/precision may be omitted when defaults are supplied.
PowerSeries series_from_json(const Json& j, std::int64_t default_prime = 0,
                             int default_precision = 0);

Json algebra_to_json(const WeilAlgebra& algebra);
AlgebraPtr algebra_from_json(const Json& j);

/// { "algebra": <file name or inline object>, "coords": [["a/b", ...], ...] };
/// file names resolve against base_dir.
WeilPoint point_from_json(const Json& j, const std::filesystem::path& base_dir);
/// Output is self-contained: the algebra is inlined.
Json point_to_json(const WeilPoint& point);

Json element_to_json(const WeilElement& element);

DiophantineSystem system_from_json(const Json& j);

WeierstrassCurve curve_from_json(const Json& j, std::int64_t default_prime,
                                 int default_precision);

/// { "prime", "precision", "samples" | "coeffs": ["a/b", ...] }
std::vector<PadicNumber> padic_list_from_json(const Json& j, const char* field,
                                              std::int64_t& prime_out, int& precision_out);
Json mahler_to_json(const MahlerCoefficients& coeffs);
MahlerCoefficients mahler_from_json(const Json& j);

Json load_json_file(const std::filesystem::path& path);

}  // namespace weiljets
