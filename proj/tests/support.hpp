// Independent exact helpers for tests. Nothing here calls the library's
// polynomial kernels, so tests can compare against them.
#pragma once

#include <gmpxx.h>

#include <random>
#include <vector>

#include "cisolate/arith/dyadic.hpp"
#include "cisolate/arith/parse.hpp"
#include "cisolate/poly/oracle.hpp"

namespace testing_support {

using cisolate::Dyadic;
using cisolate::DyadicComplex;
using cisolate::RationalComplex;

struct Q {
    mpq_class re, im;
};

inline Q q(const RationalComplex& z) { return {z.re, z.im}; }
inline Q q(const DyadicComplex& z) { return {cisolate::to_rational(z.re), cisolate::to_rational(z.im)}; }
inline Q add(const Q& a, const Q& b) { return {a.re + b.re, a.im + b.im}; }
inline Q sub(const Q& a, const Q& b) { return {a.re - b.re, a.im - b.im}; }
inline Q mul(const Q& a, const Q& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline mpq_class norm2(const Q& a) { return a.re * a.re + a.im * a.im; }
inline bool eq(const Q& a, const Q& b) { return a.re == b.re && a.im == b.im; }

using QPoly = std::vector<Q>;  // a_0 .. a_n

inline QPoly qpoly(const std::vector<RationalComplex>& p) {
    QPoly out;
    for (const auto& c : p) out.push_back(q(c));
    return out;
}

inline QPoly mul(const QPoly& a, const QPoly& b) {
    QPoly out(a.size() + b.size() - 1, Q{0, 0});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = add(out[i + j], mul(a[i], b[j]));
    return out;
}

/// prod (x - z) by repeated multiplication.
inline QPoly from_roots(const std::vector<Q>& roots) {
    QPoly p{Q{1, 0}};
    for (const auto& z : roots) p = mul(p, QPoly{Q{-z.re, -z.im}, Q{1, 0}});
    return p;
}

inline Q eval(const QPoly& p, const Q& x) {
    Q acc{0, 0};
    for (std::size_t k = p.size(); k-- > 0;) acc = add(mul(acc, x), p[k]);
    return acc;
}

/// p(m + r x) by summing a_k (m + r x)^k.
inline QPoly shift_scale(const QPoly& p, const Q& m, const Q& r) {
    QPoly out{Q{0, 0}};
    QPoly lin{m, r};
    QPoly power{Q{1, 0}};
    for (const auto& a : p) {
        QPoly term = mul(power, QPoly{a});
        if (term.size() > out.size()) out.resize(term.size(), Q{0, 0});
        for (std::size_t i = 0; i < term.size(); ++i) out[i] = add(out[i], term[i]);
        power = mul(power, lin);
    }
    return out;
}

inline std::vector<RationalComplex> to_rc(const QPoly& p) {
    std::vector<RationalComplex> out;
    for (const auto& c : p) out.emplace_back(c.re, c.im);
    return out;
}

/// Random dyadic m * 2^-shift with |m| < 2^bits.
inline Dyadic random_dyadic(std::mt19937_64& rng, int bits, int shift) {
    std::uniform_int_distribution<long long> d(-(1LL << bits) + 1, (1LL << bits) - 1);
    return Dyadic(mpz_class(static_cast<long>(d(rng))), -shift);
}

inline DyadicComplex random_point(std::mt19937_64& rng, int bits, int shift) {
    return {random_dyadic(rng, bits, shift), random_dyadic(rng, bits, shift)};
}

}  // namespace testing_support
