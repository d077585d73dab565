#pragma once

#include <cstdint>
#include <utility>

#include "cisolate/arith/dyadic.hpp"

namespace cisolate {

/// Closed lower/upper bounds on a non-negative real.
struct MagnitudeBracket {
    Dyadic lo;
    Dyadic hi;

    friend bool operator==(const MagnitudeBracket&, const MagnitudeBracket&) = default;
    bool contains(const Dyadic& v) const { return lo <= v && v <= hi; }
    Dyadic width() const { return hi - lo; }
};

/// Outward-rounded bracket of sqrt(x) for x >= 0, with both ends on 2^{-prec} Z.
inline MagnitudeBracket sqrt_bracket(const Dyadic& x, std::int64_t prec) {
    if (x.sign() < 0) throw ArithmeticError("sqrt_bracket of a negative value");
    if (x.is_zero()) return {};
    mpz_class lo = detail::isqrt_floor(x.floor_scaled(2 * prec));
    mpz_class hi = detail::isqrt_ceil(x.ceil_scaled(2 * prec));
    return {Dyadic(std::move(lo), -prec), Dyadic(std::move(hi), -prec)};
}

/// Bracket of |z| to within 2^{-prec}.
inline MagnitudeBracket abs_bracket(const DyadicComplex& z, std::int64_t prec) {
    if (z.im.is_zero()) return {z.re.abs(), z.re.abs()};
    if (z.re.is_zero()) return {z.im.abs(), z.im.abs()};
    return sqrt_bracket(z.norm2(), prec);
}

/// Upper bound on |z|, at most 2^{-prec} above it.
inline Dyadic abs_upper(const DyadicComplex& z, std::int64_t prec) { return abs_bracket(z, prec).hi; }

/// Midpoint-radius enclosure { z : |z - mid| <= rad }.
struct Ball {
    DyadicComplex mid;
    Dyadic rad;

    Ball() = default;
    Ball(DyadicComplex m, Dyadic r = Dyadic{}) : mid(std::move(m)), rad(std::move(r)) {  // NOLINT
        if (rad.sign() < 0) throw ArithmeticError("negative ball radius");
    }

    friend bool operator==(const Ball&, const Ball&) = default;

    bool contains(const DyadicComplex& z) const {
        return (z - mid).norm2() <= rad * rad;
    }
};

namespace detail {

/// Bits after the binary point used for |.| brackets inside ball operations.
inline std::int64_t bracket_bits(std::int64_t prec) { return prec + 2; }

/// Round a complex midpoint onto 2^{-(prec+1)} Z; returns the error bound
/// |re err| + |im err| (an upper bound on the Euclidean error).
inline Dyadic round_mid(DyadicComplex& mid, std::int64_t prec) {
    auto r = round_to_bits(mid.re, prec);
    auto i = round_to_bits(mid.im, prec);
    mid = {std::move(r.value), std::move(i.value)};
    return r.err + i.err;
}

}  // namespace detail

/// x + y, midpoint rounded to `prec` bits after the binary point.
inline Ball ball_add(const Ball& x, const Ball& y, std::int64_t prec) {
    DyadicComplex m = x.mid + y.mid;
    Dyadic err = detail::round_mid(m, prec);
    return {std::move(m), x.rad + y.rad + err};
}

inline Ball ball_sub(const Ball& x, const Ball& y, std::int64_t prec) {
    return ball_add(x, Ball{-y.mid, y.rad}, prec);
}

/// x * y with the product bound |x||dy| + |y||dx| + |dx||dy|.
inline Ball ball_mul(const Ball& x, const Ball& y, std::int64_t prec) {
    DyadicComplex m = x.mid * y.mid;
    const std::int64_t bb = detail::bracket_bits(prec);
    Dyadic rad = abs_upper(x.mid, bb) * y.rad + abs_upper(y.mid, bb) * x.rad + x.rad * y.rad;
    Dyadic err = detail::round_mid(m, prec);
    return {std::move(m), rad + err};
}

/// s * x for an exact dyadic scalar.
inline Ball ball_scale(const Ball& x, const Dyadic& s, std::int64_t prec) {
    DyadicComplex m = x.mid * s;
    Dyadic err = detail::round_mid(m, prec);
    return {std::move(m), x.rad * s.abs() + err};
}

/// Bracket of |v| over v in x: lo = max(0, |mid| - rad), hi = |mid| + rad,
/// with |mid| itself bracketed to 2^{-prec}.
inline MagnitudeBracket magnitude_bracket(const Ball& x, std::int64_t prec) {
    MagnitudeBracket m = abs_bracket(x.mid, prec);
    Dyadic lo = m.lo - x.rad;
    if (lo.sign() < 0) lo = Dyadic{};
    return {std::move(lo), m.hi + x.rad};
}

}  // namespace cisolate
