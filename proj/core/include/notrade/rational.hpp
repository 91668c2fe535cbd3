#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace notrade {

// All probabilities, payoffs and expectations are exact rationals with
// arbitrary-precision numerator/denominator. boost keeps them normalized
// (gcd 1, positive denominator), which makes equality decidable -- the
// agreement and announcement machinery relies on that.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "a/b" or "a": optional sign, decimal digits, arbitrary precision,
// nonzero denominator. Anything else (empty, hex, whitespace, floats) throws.
inline Rat parse_rat(std::string_view text) {
    const auto bad = [&] {
        return std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    };
    std::string_view num = text;
    std::string_view den;
    if (size_t slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    if (!num.empty() && (num.front() == '+' || num.front() == '-')) num.remove_prefix(1);
    const auto plain_digits = [](std::string_view part) {
        if (part.empty()) return false;
        for (char c : part)
            if (c < '0' || c > '9') return false;
        return true;
    };
    if (!plain_digits(num)) throw bad();
    if (text.find('/') != std::string_view::npos && !plain_digits(den)) throw bad();
    try {
        return Rat{std::string(text)};
    } catch (const std::exception&) {
        throw bad();  // boost rejects the zero denominator
    }
}

// Canonical form: "a/b" when the denominator is not 1, plain "a" otherwise.
inline std::string format_rat(const Rat& r) { return r.str(); }

inline Rat midpoint(const Rat& a, const Rat& b) { return (a + b) / 2; }

inline double to_double(const Rat& r) { return static_cast<double>(r); }

}  // namespace notrade
