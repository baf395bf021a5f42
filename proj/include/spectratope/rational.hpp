#pragma once

#include <spectratope/error.hpp>

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>

namespace spectratope {

// Expression templates are disabled so that `auto` always yields a value.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline Rational rat(long long num, long long den = 1)
{
    if (den == 0) {
        throw Error(ErrorCode::Parse, "zero denominator");
    }
    return Rational(Integer(num), Integer(den));
}

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline int sign(const Rational& q) { return q.sign(); }

namespace detail {

inline bool is_integer_literal(std::string_view s)
{
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        ++i;
    }
    if (i == s.size()) {
        return false;
    }
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    return true;
}

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace detail

/// Parses "p" or "p/q" with optional sign on p; q must be a positive integer.
inline Rational parse_rational(std::string_view text)
{
    const std::string_view s = detail::trim(text);
    const auto slash = s.find('/');
    const std::string_view num = s.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                                 : s.substr(slash + 1);
    if (!detail::is_integer_literal(num) || !detail::is_integer_literal(den) ||
        den.front() == '-' || den.front() == '+') {
        throw Error(ErrorCode::Parse, "not a rational literal: '" + std::string(text) + "'");
    }
    const Integer n(std::string(num.front() == '+' ? num.substr(1) : num));
    const Integer d{std::string(den)};
    if (d == 0) {
        throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
    }
    return Rational(n, d);
}

/// Canonical text: "p" for integers, "p/q" otherwise (lowest terms, q > 0).
inline std::string to_string(const Rational& q)
{
    const Integer d = denominator(q);
    if (d == 1) {
        return numerator(q).str();
    }
    return numerator(q).str() + "/" + d.str();
}

/// Fixed-point rendering with `digits` fractional digits, rounded half away from zero.
inline std::string to_decimal(const Rational& q, int digits)
{
    Integer scale = 1;
    for (int i = 0; i < digits; ++i) {
        scale *= 10;
    }
    const Rational scaled = abs(q) * Rational(scale);
    Integer whole = numerator(scaled) / denominator(scaled);
    if (Rational(whole) + rat(1, 2) <= scaled) {
        whole += 1;
    }
    std::string body = whole.str();
    if (digits > 0) {
        if (body.size() <= static_cast<std::size_t>(digits)) {
            body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
        }
        body.insert(body.size() - static_cast<std::size_t>(digits), ".");
    }
    const bool negative = q < 0 && whole != 0;
    return negative ? "-" + body : body;
}

/// Exact square root when q is the square of a rational.
inline bool rational_sqrt(const Rational& q, Rational& root)
{
    if (q < 0) {
        return false;
    }
    const Integer n = numerator(q);
    const Integer d = denominator(q);
    const Integer rn = boost::multiprecision::sqrt(n);
    const Integer rd = boost::multiprecision::sqrt(d);
    if (rn * rn != n || rd * rd != d) {
        return false;
    }
    root = Rational(rn, rd);
    return true;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

} // namespace spectratope
