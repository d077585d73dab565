#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "cisolate/counting/tstar.hpp"
#include "cisolate/error.hpp"
#include "cisolate/poly/oracle.hpp"

namespace cisolate {

namespace detail {

using Qc = RationalComplex;

inline Qc qmul(const Qc& a, const Qc& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

inline Qc qdiv(const Qc& a, const Qc& b) {
    const mpq_class d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

inline void trim(std::vector<Qc>& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

/// a mod b over Q[i]; b has a non-zero leading coefficient.
inline std::vector<Qc> poly_rem(std::vector<Qc> a, const std::vector<Qc>& b) {
    trim(a);
    while (a.size() >= b.size()) {
        const Qc f = qdiv(a.back(), b.back());
        const std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            const Qc t = qmul(f, b[i]);
            a[off + i].re -= t.re;
            a[off + i].im -= t.im;
        }
        a.pop_back();
        trim(a);
    }
    return a;
}

}  // namespace detail

/// Degree of gcd(p, q) over Q[i]; both non-zero.
inline int gcd_degree(std::vector<RationalComplex> p, std::vector<RationalComplex> q) {
    detail::trim(p);
    detail::trim(q);
    while (!q.empty()) {
        auto r = detail::poly_rem(p, q);
        p = std::move(q);
        q = std::move(r);
    }
    return static_cast<int>(p.size()) - 1;
}

inline bool is_square_free(const std::vector<RationalComplex>& p) {
    std::vector<RationalComplex> d;
    for (std::size_t k = 1; k < p.size(); ++k)
        d.push_back({p[k].re * static_cast<long>(k), p[k].im * static_cast<long>(k)});
    return gcd_degree(p, d) == 0;
}

namespace detail {

struct Fc {
    mpf_class re, im;
};

inline Fc fmul(const Fc& a, const Fc& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline Fc fsub(const Fc& a, const Fc& b) { return {a.re - b.re, a.im - b.im}; }

inline Fc fdiv(const Fc& a, const Fc& b) {
    mpf_class d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

inline Dyadic to_dyadic(const mpf_class& v, std::int64_t bits) {
    mpf_class s = v;
    mpf_mul_2exp(s.get_mpf_t(), s.get_mpf_t(), static_cast<mp_bitcnt_t>(bits));
    mpf_class fl;
    mpf_floor(fl.get_mpf_t(), s.get_mpf_t());
    return Dyadic(mpz_class(fl), -bits);
}

}  // namespace detail

/// Approximations within 2^-bits of the n distinct roots of p, found by
/// Weierstrass-Durand-Kerner iteration and then certified one by one: each
/// disk of radius 2^-bits around an approximation must count exactly one
/// root, and the disks must be pairwise disjoint. Anything else throws.
inline std::vector<DyadicComplex> reference_roots(const std::vector<RationalComplex>& p, std::int64_t bits,
                                                  int max_iterations = 20000) {
    if (p.size() < 2 || p.back().is_zero()) throw DegenerateDegree("reference solver needs degree >= 1");
    if (!is_square_free(p)) throw ReferenceSolverFailed("reference solver failed: polynomial is not square-free");
    const int n = static_cast<int>(p.size()) - 1;
    const auto prec = static_cast<mp_bitcnt_t>(4 * bits + 256);
    // mpf temporaries take the default precision
    struct DefaultPrec {
        mp_bitcnt_t saved = mpf_get_default_prec();
        explicit DefaultPrec(mp_bitcnt_t p) { mpf_set_default_prec(p); }
        ~DefaultPrec() { mpf_set_default_prec(saved); }
    } guard(prec);

    std::vector<detail::Fc> a;
    for (const auto& c : p) a.push_back({mpf_class(c.re, prec), mpf_class(c.im, prec)});
    // monic
    const detail::Fc lead = a.back();
    for (auto& c : a) c = detail::fdiv(c, lead);

    double bound = 1;
    for (int k = 0; k < n; ++k) {
        double m = std::hypot(a[k].re.get_d(), a[k].im.get_d());
        bound = std::max(bound, 1 + m);
    }
    std::vector<detail::Fc> z(n);
    for (int k = 0; k < n; ++k) {
        const double th = 2 * M_PI * k / n + 0.4;
        z[k] = {mpf_class(bound * std::cos(th), prec), mpf_class(bound * std::sin(th), prec)};
    }

    mpf_class tol(1, prec);
    mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), static_cast<mp_bitcnt_t>(bits + 8));
    const mpf_class tol2 = tol * tol;
    bool converged = false;
    for (int it = 0; it < max_iterations && !converged; ++it) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            detail::Fc v = a[n];
            for (int k = n - 1; k >= 0; --k) {
                v = detail::fmul(v, z[i]);
                v.re += a[k].re;
                v.im += a[k].im;
            }
            detail::Fc den{mpf_class(1, prec), mpf_class(0, prec)};
            for (int j = 0; j < n; ++j)
                if (j != i) den = detail::fmul(den, detail::fsub(z[i], z[j]));
            if (den.re == 0 && den.im == 0) den.re = tol;
            const detail::Fc step = detail::fdiv(v, den);
            z[i] = detail::fsub(z[i], step);
            if (step.re * step.re + step.im * step.im > tol2) converged = false;
        }
    }
    if (!converged) throw ReferenceSolverFailed("reference solver failed: no convergence");

    std::vector<DyadicComplex> out;
    for (const auto& w : z) out.push_back({detail::to_dyadic(w.re, bits + 8), detail::to_dyadic(w.im, bits + 8)});

    const Dyadic r = Dyadic::pow2(-bits);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if ((out[i] - out[j]).norm2() <= (r * r).mul_pow2(2))
                throw ReferenceSolverFailed("reference solver failed: approximations not separated");
    const CoefficientOracle o = normalize(p);
    for (const auto& w : out)
        if (t_star(o, Disk(w, r), {std::int64_t{1} << 26}).k != 1)
            throw ReferenceSolverFailed("reference solver failed: validation rejected " + w.to_string());
    return out;
}

}  // namespace cisolate
