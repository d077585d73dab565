#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "cisolate/error.hpp"

namespace cisolate {

/// Largest exponent magnitude a Dyadic may carry. Values beyond this signal
/// a runaway computation rather than a meaningful number.
inline constexpr std::int64_t kMaxDyadicExponent = std::int64_t{1} << 40;

namespace detail {

/// floor(log2 |m|) for m != 0.
inline std::int64_t msb(const mpz_class& m) {
    return static_cast<std::int64_t>(mpz_sizeinbase(m.get_mpz_t(), 2)) - 1;
}

inline std::int64_t bit_length(const mpz_class& m) {
    return sgn(m) == 0 ? 0 : static_cast<std::int64_t>(mpz_sizeinbase(m.get_mpz_t(), 2));
}

inline mpz_class shl(const mpz_class& m, std::int64_t k) {
    mpz_class r;
    mpz_mul_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    return r;
}

inline mpz_class fdiv_shr(const mpz_class& m, std::int64_t k) {
    mpz_class r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    return r;
}

inline mpz_class cdiv_shr(const mpz_class& m, std::int64_t k) {
    mpz_class r;
    mpz_cdiv_q_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    return r;
}

/// m * 2^k for any sign of k, floor rounding when k < 0.
inline mpz_class shift_floor(const mpz_class& m, std::int64_t k) {
    return k >= 0 ? shl(m, k) : fdiv_shr(m, -k);
}

inline mpz_class shift_ceil(const mpz_class& m, std::int64_t k) {
    return k >= 0 ? shl(m, k) : cdiv_shr(m, -k);
}

/// Round-half-up of m / 2^k, k > 0.
inline mpz_class round_shr(const mpz_class& m, std::int64_t k) {
    if (k <= 0) return shl(m, -k);
    mpz_class half = shl(mpz_class(1), k - 1);
    return fdiv_shr(m + half, k);
}

inline mpz_class isqrt_floor(const mpz_class& v) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

inline mpz_class isqrt_ceil(const mpz_class& v) {
    mpz_class r = isqrt_floor(v);
    if (r * r < v) ++r;
    return r;
}

inline void check_exponent(std::int64_t e) {
    if (e > kMaxDyadicExponent || e < -kMaxDyadicExponent)
        throw ArithmeticError("dyadic exponent out of range: " + std::to_string(e));
}

}  // namespace detail

/// Exact binary rational mantissa * 2^exponent, kept canonical (odd mantissa,
/// zero stored as 0 * 2^0) so that structural and numeric equality coincide.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long v) : mant_(v) { canonicalize(); }  // NOLINT(google-explicit-constructor)
    Dyadic(int v) : mant_(v) { canonicalize(); }   // NOLINT(google-explicit-constructor)
    explicit Dyadic(mpz_class m, std::int64_t e = 0) : mant_(std::move(m)), exp_(e) {
        canonicalize();
    }

    static Dyadic pow2(std::int64_t e) { return Dyadic(mpz_class(1), e); }

    const mpz_class& mantissa() const { return mant_; }
    std::int64_t exponent() const { return exp_; }
    int sign() const { return sgn(mant_); }
    bool is_zero() const { return sgn(mant_) == 0; }

    /// floor(log2 |x|); undefined for zero.
    std::int64_t msb() const { return detail::msb(mant_) + exp_; }

    Dyadic operator-() const {
        Dyadic r;
        r.mant_ = -mant_;
        r.exp_ = exp_;
        return r;
    }

    Dyadic abs() const { return sign() < 0 ? -*this : *this; }

    Dyadic mul_pow2(std::int64_t k) const {
        if (is_zero()) return {};
        Dyadic r;
        r.mant_ = mant_;
        r.exp_ = exp_ + k;
        detail::check_exponent(r.exp_);
        return r;
    }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.exp_ <= b.exp_)
            return Dyadic(a.mant_ + detail::shl(b.mant_, b.exp_ - a.exp_), a.exp_);
        return Dyadic(detail::shl(a.mant_, a.exp_ - b.exp_) + b.mant_, b.exp_);
    }

    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero() || b.is_zero()) return {};
        Dyadic r;
        r.mant_ = a.mant_ * b.mant_;
        r.exp_ = a.exp_ + b.exp_;
        detail::check_exponent(r.exp_);
        return r;
    }

    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
    Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exp_ == b.exp_ && a.mant_ == b.mant_;
    }

    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
        int c = 0;
        if (a.sign() != b.sign()) {
            c = a.sign() < b.sign() ? -1 : 1;
        } else if (a.exp_ <= b.exp_) {
            c = cmp(a.mant_, detail::shl(b.mant_, b.exp_ - a.exp_));
        } else {
            c = cmp(detail::shl(a.mant_, a.exp_ - b.exp_), b.mant_);
        }
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// floor(x * 2^k) as an integer.
    mpz_class floor_scaled(std::int64_t k) const { return detail::shift_floor(mant_, exp_ + k); }
    /// ceil(x * 2^k) as an integer.
    mpz_class ceil_scaled(std::int64_t k) const { return detail::shift_ceil(mant_, exp_ + k); }

    /// x * 2^k as an exact integer; requires exponent + k >= 0.
    mpz_class scaled(std::int64_t k) const {
        if (is_zero()) return 0;
        if (exp_ + k < 0) throw ArithmeticError("Dyadic::scaled would round");
        return detail::shl(mant_, exp_ + k);
    }

    /// `m*2^e`, the canonical text form.
    std::string to_string() const { return mant_.get_str() + "*2^" + std::to_string(exp_); }

    /// Nearest double; for display only.
    double to_double() const {
        if (is_zero()) return 0.0;
        long e = 0;
        double d = mpz_get_d_2exp(&e, mant_.get_mpz_t());
        return std::ldexp(d, static_cast<int>(std::max<std::int64_t>(
                                 std::min<std::int64_t>(e + exp_, 4096), -4096)));
    }

private:
    void canonicalize() {
        if (sgn(mant_) == 0) {
            exp_ = 0;
            return;
        }
        auto tz = static_cast<std::int64_t>(mpz_scan1(mant_.get_mpz_t(), 0));
        if (tz > 0) {
            mpz_tdiv_q_2exp(mant_.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(tz));
            exp_ += tz;
        }
        detail::check_exponent(exp_);
    }

    mpz_class mant_;
    std::int64_t exp_ = 0;
};

inline Dyadic min(const Dyadic& a, const Dyadic& b) { return a <= b ? a : b; }
inline Dyadic max(const Dyadic& a, const Dyadic& b) { return a >= b ? a : b; }

/// Result of rounding onto the grid 2^{-(L+1)} Z.
struct RoundedDyadic {
    Dyadic value;
    Dyadic err;  // |value - input|, exact
};

/// Round to nearest multiple of 2^{-(L+1)}; the error is at most 2^{-L-2} < 2^{-L}.
inline RoundedDyadic round_to_bits(const Dyadic& a, std::int64_t L) {
    if (L < 0) throw ArithmeticError("round_to_bits: negative L");
    const std::int64_t e = -(L + 1);
    if (a.is_zero() || a.exponent() >= e) return {a, Dyadic{}};
    Dyadic v(detail::round_shr(a.mantissa(), e - a.exponent()), e);
    Dyadic err = (v - a).abs();
    return {std::move(v), std::move(err)};
}

/// Floor / ceil of x onto the grid 2^{-p} Z.
inline Dyadic floor_to(const Dyadic& x, std::int64_t p) { return Dyadic(x.floor_scaled(p), -p); }
inline Dyadic ceil_to(const Dyadic& x, std::int64_t p) { return Dyadic(x.ceil_scaled(p), -p); }

/// Exact complex dyadic; canonical componentwise.
struct DyadicComplex {
    Dyadic re;
    Dyadic im;

    DyadicComplex() = default;
    DyadicComplex(Dyadic r, Dyadic i = Dyadic{}) : re(std::move(r)), im(std::move(i)) {}  // NOLINT
    DyadicComplex(long r) : re(r) {}  // NOLINT
    DyadicComplex(int r) : re(r) {}   // NOLINT

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    DyadicComplex conj() const { return {re, -im}; }
    /// |z|^2, exact.
    Dyadic norm2() const { return re * re + im * im; }
    DyadicComplex mul_pow2(std::int64_t k) const { return {re.mul_pow2(k), im.mul_pow2(k)}; }

    DyadicComplex operator-() const { return {-re, -im}; }
    friend DyadicComplex operator+(const DyadicComplex& a, const DyadicComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend DyadicComplex operator-(const DyadicComplex& a, const DyadicComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend DyadicComplex operator*(const DyadicComplex& a, const DyadicComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend DyadicComplex operator*(const DyadicComplex& a, const Dyadic& s) {
        return {a.re * s, a.im * s};
    }
    friend bool operator==(const DyadicComplex&, const DyadicComplex&) = default;

    std::string to_string() const { return re.to_string() + " " + im.to_string(); }
};

}  // namespace cisolate

