#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace arrmorse {

// Exact arithmetic used for everything lattice-side. Floating point only
// enters once polynomials are handed to the numerical solver.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input-side problems: malformed files, degenerate forms, bad flags.
struct input_error : error {
    using error::error;
};

// Violated internal contracts (exact division failing, etc).
struct internal_error : error {
    using error::error;
};

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline Int numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

// Renders p/q, or just p when q == 1.
inline std::string format_rat(const Rat& r) {
    Int num = numerator(r), den = denominator(r);
    std::string s = num.str();
    if (den != 1) {
        s += "/";
        s += den.str();
    }
    return s;
}

// Parses "p" or "p/q" with an optional leading sign; q must be positive.
// Decimal notation is rejected on purpose: rationals stay exact end to end.
inline Rat parse_rat(const std::string& text) {
    auto bad = [&]() -> Rat {
        throw input_error("not a rational: '" + text + "' (expected p or p/q)");
    };
    if (text.empty()) return bad();
    std::size_t pos = 0;
    bool neg = false;
    if (text[pos] == '+' || text[pos] == '-') {
        neg = text[pos] == '-';
        ++pos;
    }
    std::size_t digits_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits_start) return bad();
    Int num(text.substr(digits_start, pos - digits_start));
    Int den = 1;
    if (pos < text.size()) {
        if (text[pos] != '/') return bad();
        ++pos;
        std::size_t den_start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == den_start || pos != text.size()) return bad();
        den = Int(text.substr(den_start));
        if (den == 0) throw input_error("zero denominator in '" + text + "'");
    }
    if (neg) num = -num;
    return Rat(num, den);
}

// Checked narrowing for report serialization; lattice-scale integers are
// expected to be tiny, so overflow means a bug upstream.
inline std::int64_t to_int64(const Int& value) {
    if (value > std::numeric_limits<std::int64_t>::max() ||
        value < std::numeric_limits<std::int64_t>::min())
        throw internal_error("integer too large for report serialization: " + value.str());
    return value.convert_to<std::int64_t>();
}

} // namespace arrmorse
