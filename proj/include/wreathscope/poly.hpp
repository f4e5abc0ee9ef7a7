#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "wreathscope/config.hpp"

namespace wreathscope {

/// Exponents accepted by the parser must satisfy |e| <= exponent_bound.
inline constexpr std::int64_t kDefaultExponentBound = 1'000'000;

/// Parses Laurent-polynomial notation into a configuration.
///
///   poly  := "0" | term ('+' term)*
///   term  := coeff? 't' ('^' exp)? | coeff
///   coeff := int | '(' int (',' int)* ')'
///   exp   := int | '{' int '}'
///
/// A missing coefficient means 1 and is only allowed over a single cyclic
/// factor. Coefficients must already be reduced; a repeated exponent is an
/// error. Zero-coefficient terms are accepted and dropped.
LampConfig parse_poly(std::string_view text, const GroupDesc& g,
                      std::int64_t exponent_bound = kDefaultExponentBound);

/// Canonical text: terms in strictly increasing exponent order, "0" for the
/// empty configuration.
std::string format_poly(const LampConfig& f, const GroupDesc& g);

/// Element text in the lamp frame: `poly ['@' cursor]`, e.g. "2t^-5",
/// "1 @ 4". Alternatively a word of letters separated by whitespace:
/// `t`, `t^k`, `a`, `a^k`, `a2^k` (generator of the second factor).
Element parse_element(std::string_view text, const GroupDesc& g,
                      std::int64_t exponent_bound = kDefaultExponentBound);
std::string format_element(const Element& x, const GroupDesc& g);

}  // namespace wreathscope
