#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>

#include "rsimple/errors.hpp"

namespace rsimple {

// Arbitrary-precision natural. Values such as k, r and edge multiplicities can
// exceed any machine width; everything that touches them stays exact.
using Nat = boost::multiprecision::cpp_int;

inline Nat parse_nat(const std::string& s) {
    if (s.empty()) throw ParseError("empty integer literal");
    for (char ch : s)
        if (ch < '0' || ch > '9') throw ParseError("not a decimal natural: '" + s + "'");
    return Nat(s);
}

inline std::string to_decimal(const Nat& v) { return v.str(); }

// ceil(a / b) for naturals, b > 0.
inline Nat ceil_div(const Nat& a, const Nat& b) { return (a + b - 1) / b; }

// min(v, cap) as machine integer; nullopt when v does not fit.
inline std::optional<std::int64_t> to_int64(const Nat& v) {
    if (v > Nat(INT64_MAX)) return std::nullopt;
    return static_cast<std::int64_t>(v);
}

// Integer comparison "len >= k/r" done as len*r >= k; avoids rationals.
inline bool times_r_at_least(std::int64_t len, const Nat& r, const Nat& k) {
    return Nat(len) * r >= k;
}

}  // namespace rsimple
