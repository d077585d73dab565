#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "cisolate/arith/ball.hpp"
#include "cisolate/error.hpp"
#include "cisolate/poly/oracle.hpp"

namespace cisolate {

/// Polynomial with ball coefficients stored in block form: coefficient k is
/// the disk with centre (re[k] + i im[k]) * 2^exp and radius rad[k] * 2^exp.
/// A shared exponent keeps the kernels in integer arithmetic.
class BallPoly {
public:
    BallPoly() = default;

    BallPoly(std::vector<mpz_class> re, std::vector<mpz_class> im, std::vector<mpz_class> rad,
             std::int64_t exp)
        : re_(std::move(re)), im_(std::move(im)), rad_(std::move(rad)), exp_(exp) {
        if (re_.size() != im_.size() || re_.size() != rad_.size())
            throw Error("BallPoly: component size mismatch");
    }

    static BallPoly from_balls(const std::vector<Ball>& balls) {
        std::int64_t e = 0;
        bool first = true;
        auto consider = [&](const Dyadic& d) {
            if (d.is_zero()) return;
            e = first ? d.exponent() : std::min(e, d.exponent());
            first = false;
        };
        for (const auto& b : balls) {
            consider(b.mid.re);
            consider(b.mid.im);
            consider(b.rad);
        }
        BallPoly p;
        p.exp_ = e;
        p.re_.reserve(balls.size());
        for (const auto& b : balls) {
            p.re_.push_back(b.mid.re.scaled(-e));
            p.im_.push_back(b.mid.im.scaled(-e));
            p.rad_.push_back(b.rad.scaled(-e));
        }
        return p;
    }

    static BallPoly exact(const std::vector<DyadicComplex>& coeffs) {
        std::vector<Ball> balls(coeffs.begin(), coeffs.end());
        return from_balls(balls);
    }

    std::size_t size() const { return re_.size(); }
    int degree() const { return static_cast<int>(re_.size()) - 1; }
    std::int64_t exponent() const { return exp_; }

    const std::vector<mpz_class>& re() const { return re_; }
    const std::vector<mpz_class>& im() const { return im_; }
    const std::vector<mpz_class>& rad() const { return rad_; }

    DyadicComplex mid(std::size_t k) const { return {Dyadic(re_[k], exp_), Dyadic(im_[k], exp_)}; }
    Dyadic radius(std::size_t k) const { return Dyadic(rad_[k], exp_); }
    Ball coeff(std::size_t k) const { return {mid(k), radius(k)}; }

    std::vector<Ball> balls() const {
        std::vector<Ball> out;
        out.reserve(size());
        for (std::size_t k = 0; k < size(); ++k) out.push_back(coeff(k));
        return out;
    }

    bool is_exact() const {
        return std::all_of(rad_.begin(), rad_.end(), [](const mpz_class& r) { return sgn(r) == 0; });
    }

    /// Bit length of the largest midpoint component, in units of 2^exp.
    std::int64_t max_mid_bits() const {
        std::int64_t m = 0;
        for (std::size_t k = 0; k < size(); ++k)
            m = std::max({m, detail::bit_length(re_[k]), detail::bit_length(im_[k])});
        return m;
    }

    /// Re-express on the grid 2^shift coarser than now (shift > 0), rounding
    /// midpoints to nearest and absorbing the error into the radii.
    BallPoly& coarsen(std::int64_t shift) {
        if (shift <= 0) return *this;
        for (std::size_t k = 0; k < size(); ++k) {
            bool inexact = !divisible_2exp(re_[k], shift) || !divisible_2exp(im_[k], shift);
            re_[k] = detail::round_shr(re_[k], shift);
            im_[k] = detail::round_shr(im_[k], shift);
            rad_[k] = detail::cdiv_shr(rad_[k], shift);
            // per-component error <= 1/2 unit, so the Euclidean error is < 1 unit
            if (inexact) rad_[k] += 1;
        }
        exp_ += shift;
        return *this;
    }

    /// Round midpoints onto 2^{-bits} Z.
    BallPoly& round_absolute(std::int64_t bits) { return coarsen(-bits - exp_); }

    /// Keep about `bits` significant bits of the largest midpoint.
    BallPoly& round_relative(std::int64_t bits) { return coarsen(max_mid_bits() - bits); }

    /// Multiply every coefficient by 2^k (exact).
    BallPoly& mul_pow2(std::int64_t k) {
        exp_ += k;
        return *this;
    }

    BallPoly derivative() const {
        if (size() <= 1) return BallPoly({0}, {0}, {0}, 0);
        BallPoly d;
        d.exp_ = exp_;
        for (std::size_t k = 1; k < size(); ++k) {
            d.re_.push_back(re_[k] * static_cast<unsigned long>(k));
            d.im_.push_back(im_[k] * static_cast<unsigned long>(k));
            d.rad_.push_back(rad_[k] * static_cast<unsigned long>(k));
        }
        return d;
    }

private:
    static bool divisible_2exp(const mpz_class& v, std::int64_t k) {
        return mpz_divisible_2exp_p(v.get_mpz_t(), static_cast<mp_bitcnt_t>(k)) != 0;
    }

    std::vector<mpz_class> re_;
    std::vector<mpz_class> im_;
    std::vector<mpz_class> rad_;
    std::int64_t exp_ = 0;
};

/// Ball polynomial of an L-bit approximation of F: each rad < 2^{-L} and
/// each ball contains the true coefficient.
inline BallPoly approximate(const CoefficientOracle& o, std::int64_t L) {
    if (L < 0) throw ArithmeticError("approximate: negative precision");
    return BallPoly::from_balls(o.approximation(L));
}

namespace detail {

/// In-place p(x) -> p(x + M) for a Gaussian-integer M (synthetic division).
inline void shift_gaussian(std::vector<mpz_class>& re, std::vector<mpz_class>& im,
                           const mpz_class& mr, const mpz_class& mi) {
    const std::size_t n = re.size() - 1;
    if (sgn(mr) == 0 && sgn(mi) == 0) return;
    const bool real_shift = sgn(mi) == 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = n - 1;; --j) {
            if (real_shift) {
                mpz_addmul(re[j].get_mpz_t(), mr.get_mpz_t(), re[j + 1].get_mpz_t());
                mpz_addmul(im[j].get_mpz_t(), mr.get_mpz_t(), im[j + 1].get_mpz_t());
            } else {
                mpz_addmul(re[j].get_mpz_t(), mr.get_mpz_t(), re[j + 1].get_mpz_t());
                mpz_submul(re[j].get_mpz_t(), mi.get_mpz_t(), im[j + 1].get_mpz_t());
                mpz_addmul(im[j].get_mpz_t(), mr.get_mpz_t(), im[j + 1].get_mpz_t());
                mpz_addmul(im[j].get_mpz_t(), mi.get_mpz_t(), re[j + 1].get_mpz_t());
            }
            if (j == i) break;
        }
    }
}

/// In-place p(x) -> p(x + M) for real M >= 0 on a non-negative polynomial.
inline void shift_real(std::vector<mpz_class>& a, const mpz_class& m) {
    const std::size_t n = a.size() - 1;
    if (sgn(m) == 0 || n == 0) return;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = n - 1;; --j) {
            mpz_addmul(a[j].get_mpz_t(), m.get_mpz_t(), a[j + 1].get_mpz_t());
            if (j == i) break;
        }
}

/// Smallest t >= 0 with z * 2^t a Gaussian integer.
inline std::int64_t denominator_bits(const DyadicComplex& z) {
    std::int64_t t = 0;
    if (!z.re.is_zero()) t = std::max(t, -z.re.exponent());
    if (!z.im.is_zero()) t = std::max(t, -z.im.exponent());
    return t;
}

}  // namespace detail

/// Coefficients of q(x) = p(m + r x), computed exactly from the midpoints;
/// radii are propagated by shifting the radius polynomial by an upper bound
/// of |m|. No rounding happens here.
inline BallPoly taylor_shift_scale_exact(const BallPoly& p, const DyadicComplex& m, const Dyadic& r) {
    if (r.sign() <= 0) throw ArithmeticError("taylor_shift_scale: radius must be positive");
    const std::size_t n = p.size() - 1;
    const std::int64_t t = detail::denominator_bits(m);
    const mpz_class mr = m.re.scaled(t);
    const mpz_class mi = m.im.scaled(t);
    const mpz_class mabs = detail::isqrt_ceil(mr * mr + mi * mi);

    std::vector<mpz_class> re(p.re()), im(p.im()), rad(p.rad());
    if (t > 0) {
        for (std::size_t k = 0; k <= n; ++k) {
            const auto s = t * static_cast<std::int64_t>(n - k);
            re[k] = detail::shl(re[k], s);
            im[k] = detail::shl(im[k], s);
            rad[k] = detail::shl(rad[k], s);
        }
    }
    detail::shift_gaussian(re, im, mr, mi);
    detail::shift_real(rad, mabs);

    // coefficient j picks up (2^t r)^j = R^j 2^{(t+f) j}
    const mpz_class& R = r.mantissa();
    const std::int64_t g = t + r.exponent();
    std::int64_t exp = p.exponent() - t * static_cast<std::int64_t>(n);
    if (g < 0) exp += g * static_cast<std::int64_t>(n);
    mpz_class rpow = 1;
    for (std::size_t j = 0; j <= n; ++j) {
        const auto s = g >= 0 ? g * static_cast<std::int64_t>(j) : -g * static_cast<std::int64_t>(n - j);
        if (j > 0 && R != 1) rpow *= R;
        if (R != 1) {
            re[j] *= rpow;
            im[j] *= rpow;
            rad[j] *= rpow;
        }
        re[j] = detail::shl(re[j], s);
        im[j] = detail::shl(im[j], s);
        rad[j] = detail::shl(rad[j], s);
    }
    return BallPoly(std::move(re), std::move(im), std::move(rad), exp);
}

/// q(x) = p(m + r x) with midpoints rounded onto 2^{-(Lout+1)} Z. The
/// rounding adds < 2^{-Lout-1}; radii below 2^{-Lout} follow whenever the
/// propagated input radii are below 2^{-Lout-1}. Larger radii are reported
/// honestly.
inline BallPoly taylor_shift_scale(const BallPoly& p, const DyadicComplex& m, const Dyadic& r,
                                   std::int64_t Lout) {
    BallPoly q = taylor_shift_scale_exact(p, m, r);
    q.round_absolute(Lout + 1);
    return q;
}

/// Exact midpoint value p(x) with the propagated radius sum rad_k |x|^k.
inline Ball eval_exact(const BallPoly& p, const DyadicComplex& x) {
    const std::size_t n = p.size() - 1;
    const std::int64_t t = detail::denominator_bits(x);
    const mpz_class xr = x.re.scaled(t);
    const mpz_class xi = x.im.scaled(t);
    const mpz_class xabs = detail::isqrt_ceil(xr * xr + xi * xi);

    mpz_class vr = p.re()[n], vi = p.im()[n], vrad = p.rad()[n];
    mpz_class tr, ti;
    for (std::size_t k = n; k-- > 0;) {
        const std::int64_t s = t * static_cast<std::int64_t>(n - k);
        tr = vr * xr - vi * xi;
        ti = vr * xi + vi * xr;
        vr = tr + detail::shl(p.re()[k], s);
        vi = ti + detail::shl(p.im()[k], s);
        vrad = vrad * xabs + detail::shl(p.rad()[k], s);
    }
    const std::int64_t e = p.exponent() - t * static_cast<std::int64_t>(n);
    return {DyadicComplex{Dyadic(vr, e), Dyadic(vi, e)}, Dyadic(vrad, e)};
}

/// Ball around p(x); midpoint on 2^{-(L+1)} Z so the radius is < 2^{-L}
/// whenever the coefficient radii permit.
inline Ball eval_with_error(const BallPoly& p, const DyadicComplex& x, std::int64_t L) {
    Ball b = eval_exact(p, x);
    Dyadic err = detail::round_mid(b.mid, L);
    b.rad += err;
    return b;
}

inline Ball eval_derivative_with_error(const BallPoly& p, const DyadicComplex& x, std::int64_t L) {
    return eval_with_error(p.derivative(), x, L);
}

/// Per-coefficient brackets of |a_k| in units of 2^{exp - guard}.
struct CoefficientBrackets {
    std::vector<mpz_class> lo;
    std::vector<mpz_class> hi;
    std::int64_t exp = 0;  // value of one unit is 2^exp
};

inline CoefficientBrackets coefficient_brackets(const BallPoly& p, std::int64_t guard) {
    CoefficientBrackets b;
    b.exp = p.exponent() - guard;
    b.lo.resize(p.size());
    b.hi.resize(p.size());
    mpz_class n2;
    for (std::size_t k = 0; k < p.size(); ++k) {
        n2 = p.re()[k] * p.re()[k] + p.im()[k] * p.im()[k];
        n2 = detail::shl(n2, 2 * guard);
        mpz_class rad = detail::shl(p.rad()[k], guard);
        b.lo[k] = detail::isqrt_floor(n2) - rad;
        if (sgn(b.lo[k]) < 0) b.lo[k] = 0;
        b.hi[k] = detail::isqrt_ceil(n2) + rad;
    }
    return b;
}

/// Bracket of max_k |a_k| over all members of p.
inline MagnitudeBracket infinity_norm_bracket(const BallPoly& p, std::int64_t guard = 64) {
    auto b = coefficient_brackets(p, guard);
    mpz_class lo = 0, hi = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (b.lo[k] > lo) lo = b.lo[k];
        if (b.hi[k] > hi) hi = b.hi[k];
    }
    return {Dyadic(lo, b.exp), Dyadic(hi, b.exp)};
}

/// Root bound 2^Gamma with Gamma = 2^gamma.
struct RootBound {
    std::int64_t gamma = 1;
    std::int64_t Gamma() const { return std::int64_t{1} << gamma; }
};

/// Cauchy bound |z| <= 1 + max|a_i|/|a_n| < 1 + 4 ||F||, evaluated on a
/// 2-bit approximation and rounded up to a power-of-two exponent.
inline RootBound root_magnitude_bound(const CoefficientOracle& o) {
    BallPoly p = approximate(o, 2);
    Dyadic hi = infinity_norm_bracket(p).hi;
    Dyadic v = Dyadic(1) + (hi + Dyadic(1)).mul_pow2(2);
    std::int64_t t = v.msb();
    if (v != Dyadic::pow2(t)) ++t;
    RootBound rb;
    rb.gamma = 1;
    while (rb.Gamma() < t) ++rb.gamma;
    return rb;
}

}  // namespace cisolate
