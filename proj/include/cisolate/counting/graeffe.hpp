#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "cisolate/poly/ball_poly.hpp"

namespace cisolate {

/// Number of Graeffe rounds used by the counting test for degree n:
/// ceil(log2(1 + log2 n)) + 5.
inline int graeffe_rounds(int n) {
    // ceil(log2(1 + log2 n)) = smallest c with 2^(2^c - 1) >= n
    int c = 0;
    auto reaches = [n](int cc) {
        const long long e = (1LL << cc) - 1;
        if (e >= 62) return true;
        return (1LL << e) >= n;
    };
    while (!reaches(c)) ++c;
    return c + 5;
}

namespace detail {

/// out[j] = sum_{u+v=j} a[u] * b[v]
inline std::vector<mpz_class> convolve(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> out(a.size() + b.size() - 1);
    for (std::size_t u = 0; u < a.size(); ++u) {
        if (sgn(a[u]) == 0) continue;
        for (std::size_t v = 0; v < b.size(); ++v)
            mpz_addmul(out[u + v].get_mpz_t(), a[u].get_mpz_t(), b[v].get_mpz_t());
    }
    return out;
}

/// Self-convolution using symmetry.
inline std::vector<mpz_class> square_conv(const std::vector<mpz_class>& a) {
    std::vector<mpz_class> out(2 * a.size() - 1);
    for (std::size_t u = 0; u < a.size(); ++u) {
        if (sgn(a[u]) == 0) continue;
        for (std::size_t v = u + 1; v < a.size(); ++v)
            mpz_addmul(out[u + v].get_mpz_t(), a[u].get_mpz_t(), a[v].get_mpz_t());
    }
    for (auto& c : out) c <<= 1;
    for (std::size_t u = 0; u < a.size(); ++u)
        mpz_addmul(out[2 * u].get_mpz_t(), a[u].get_mpz_t(), a[u].get_mpz_t());
    return out;
}

struct HalfPoly {
    std::vector<mpz_class> re, im, rad;
};

/// Exact square of a ball half-polynomial: midpoint (a + ib)^2 and radius
/// 2 |mid| * rad + rad^2, with |mid| bounded by |re| + |im|.
inline HalfPoly square_half(const HalfPoly& h) {
    HalfPoly out;
    auto aa = square_conv(h.re);
    auto bb = square_conv(h.im);
    auto ab = convolve(h.re, h.im);
    out.re.resize(aa.size());
    out.im.resize(aa.size());
    for (std::size_t j = 0; j < aa.size(); ++j) {
        out.re[j] = aa[j] - bb[j];
        out.im[j] = ab[j] << 1;
    }
    bool any_rad = false;
    for (const auto& r : h.rad) any_rad = any_rad || sgn(r) != 0;
    out.rad.assign(aa.size(), mpz_class(0));
    if (any_rad) {
        std::vector<mpz_class> absmid(h.re.size());
        for (std::size_t k = 0; k < h.re.size(); ++k) absmid[k] = abs(h.re[k]) + abs(h.im[k]);
        auto cross = convolve(absmid, h.rad);
        auto rr = square_conv(h.rad);
        for (std::size_t j = 0; j < aa.size(); ++j) out.rad[j] = (cross[j] << 1) + rr[j];
    }
    return out;
}

}  // namespace detail

/// First Graeffe iterate (-1)^n [F_e(x)^2 - x F_o(x)^2], computed exactly on
/// the midpoints with propagated radii. The result has exponent 2 * exp.
inline BallPoly graeffe_step(const BallPoly& p) {
    const std::size_t n = p.size() - 1;
    if (n == 0) throw Error("graeffe_step needs degree >= 1");
    detail::HalfPoly even, odd;
    for (std::size_t k = 0; k <= n; ++k) {
        auto& h = (k % 2 == 0) ? even : odd;
        h.re.push_back(p.re()[k]);
        h.im.push_back(p.im()[k]);
        h.rad.push_back(p.rad()[k]);
    }
    auto e2 = detail::square_half(even);
    auto o2 = detail::square_half(odd);
    const bool negate = (n % 2) == 1;
    std::vector<mpz_class> re(n + 1), im(n + 1), rad(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        if (j < e2.re.size()) {
            re[j] = e2.re[j];
            im[j] = e2.im[j];
            rad[j] = e2.rad[j];
        }
        if (j >= 1 && j - 1 < o2.re.size()) {
            re[j] -= o2.re[j - 1];
            im[j] -= o2.im[j - 1];
            rad[j] += o2.rad[j - 1];
        }
        if (negate) {
            re[j] = -re[j];
            im[j] = -im[j];
        }
    }
    return BallPoly(std::move(re), std::move(im), std::move(rad), 2 * p.exponent());
}

/// N Graeffe steps; after each step midpoints are rounded to `workbits`
/// significant bits relative to the largest coefficient, with the rounding
/// error absorbed into the radii.
inline BallPoly graeffe_iterate(BallPoly p, int N, std::int64_t workbits) {
    for (int i = 0; i < N; ++i) {
        p = graeffe_step(p);
        p.round_relative(workbits);
    }
    return p;
}

}  // namespace cisolate
