#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "cisolate/arith/dyadic.hpp"
#include "cisolate/error.hpp"

namespace cisolate {

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

inline mpz_class parse_integer(std::string_view s) {
    std::string_view body = s;
    bool neg = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        neg = body.front() == '-';
        body.remove_prefix(1);
    }
    if (!all_digits(body)) throw ParseError("not an integer: '" + std::string(s) + "'");
    mpz_class v(std::string(body), 10);
    return neg ? mpz_class(-v) : v;
}

inline mpq_class parse_decimal(std::string_view s) {
    auto dot = s.find('.');
    if (dot == std::string_view::npos) return mpq_class(parse_integer(s));
    std::string_view head = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool neg = !head.empty() && head.front() == '-';
    if (!head.empty() && (head.front() == '-' || head.front() == '+')) head.remove_prefix(1);
    if ((head.empty() && frac.empty()) || (!head.empty() && !all_digits(head)) ||
        (!frac.empty() && !all_digits(frac)))
        throw ParseError("not a decimal: '" + std::string(s) + "'");
    mpz_class num(std::string(head.empty() ? "0" : head) + std::string(frac), 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    mpq_class q(neg ? mpz_class(-num) : num, den);
    q.canonicalize();
    return q;
}

}  // namespace detail

/// Exact value of a numeric token: integer, finite decimal, `p/q`, or `m*2^e`.
inline mpq_class parse_rational(std::string_view s) {
    if (s.empty()) throw ParseError("empty number");
    if (auto star = s.find('*'); star != std::string_view::npos) {
        std::string_view rest = s.substr(star + 1);
        if (rest.size() < 3 || rest.substr(0, 2) != "2^")
            throw ParseError("expected m*2^e, got '" + std::string(s) + "'");
        mpz_class m = detail::parse_integer(s.substr(0, star));
        mpz_class e = detail::parse_integer(rest.substr(2));
        if (!e.fits_slong_p() || abs(e) > kMaxDyadicExponent)
            throw ParseError("exponent out of range in '" + std::string(s) + "'");
        long ev = e.get_si();
        mpq_class q(m);
        if (ev >= 0)
            mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(ev));
        else
            mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-ev));
        return q;
    }
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        mpz_class p = detail::parse_integer(s.substr(0, slash));
        mpz_class d = detail::parse_integer(s.substr(slash + 1));
        if (sgn(d) == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
        mpq_class q(p, d);
        q.canonicalize();
        return q;
    }
    return detail::parse_decimal(s);
}

/// Exact dyadic from a rational whose denominator is a power of two.
inline Dyadic dyadic_from_rational(const mpq_class& q) {
    const mpz_class& den = q.get_den();
    auto tz = static_cast<std::int64_t>(mpz_scan1(den.get_mpz_t(), 0));
    if (den != detail::shl(mpz_class(1), tz))
        throw ParseError("value " + q.get_str() + " is not dyadic");
    return Dyadic(q.get_num(), -tz);
}

inline mpq_class to_rational(const Dyadic& d) {
    mpq_class q(d.mantissa());
    if (d.exponent() >= 0)
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(d.exponent()));
    else
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-d.exponent()));
    return q;
}

/// Accepts `m*2^e`, plain integers and finite decimals, converted exactly.
inline Dyadic parse_dyadic(std::string_view s) {
    if (s.find('/') != std::string_view::npos) throw ParseError("rational is not a dyadic literal");
    return dyadic_from_rational(parse_rational(s));
}

}  // namespace cisolate
