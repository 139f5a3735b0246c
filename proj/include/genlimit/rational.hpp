#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace genlimit {

using Rational = boost::rational<std::int64_t>;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Accepts "p/q" or an integer; throws Error(Parameter) on malformed input.
Rational parse_rational(std::string_view text);

}  // namespace genlimit
