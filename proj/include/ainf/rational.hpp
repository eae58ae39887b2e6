#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace ainf {

// Exact rational scalar. All arithmetic in the engine is exact; there is no
// floating point anywhere.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Serialization: "p/q" in lowest terms with q > 0, or "p" when q == 1.
std::string to_string(const Rational& r);

// Parse "p", "-p", "p/q". Returns nullopt on malformed input.
std::optional<Rational> parse_rational(const std::string& s);

}  // namespace ainf
