#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "cisolate/arith/ball.hpp"
#include "cisolate/arith/parse.hpp"
#include "cisolate/error.hpp"

namespace cisolate {

/// Exact complex rational, used for file input and oracle construction.
struct RationalComplex {
    mpq_class re;
    mpq_class im;

    RationalComplex() = default;
    RationalComplex(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}  // NOLINT
    RationalComplex(long r) : re(r), im(0) {}  // NOLINT
    RationalComplex(const DyadicComplex& z) : re(to_rational(z.re)), im(to_rational(z.im)) {}  // NOLINT

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    friend bool operator==(const RationalComplex&, const RationalComplex&) = default;
};

/// Deterministic source of coefficient approximations. provider(L) returns
/// n+1 balls; each midpoint is an absolute L-bit approximation of a_k and
/// each radius is a certified error bound < 2^{-L} (zero when exact).
class CoefficientOracle {
public:
    using Provider = std::function<std::vector<Ball>(std::int64_t)>;

    CoefficientOracle(int degree, Provider provider, std::int64_t scale_exponent = 0)
        : degree_(degree),
          scale_exponent_(scale_exponent),
          provider_(std::move(provider)),
          cache_(std::make_shared<Cache>()) {
        if (degree_ < 1) throw DegenerateDegree("degenerate degree");
    }

    int degree() const { return degree_; }

    /// Power of two the raw input was multiplied by during normalization.
    std::int64_t scale_exponent() const { return scale_exponent_; }

    /// Memoized provider(L). Safe to call concurrently.
    const std::vector<Ball>& approximation(std::int64_t L) const {
        if (L < 0) throw ArithmeticError("negative oracle precision");
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->entries.find(L);
        if (it == cache_->entries.end()) {
            auto v = provider_(L);
            if (v.size() != static_cast<std::size_t>(degree_) + 1)
                throw Error("oracle returned the wrong number of coefficients");
            it = cache_->entries.emplace(L, std::move(v)).first;
        }
        return it->second;
    }

private:
    struct Cache {
        std::mutex mu;
        std::map<std::int64_t, std::vector<Ball>> entries;
    };

    int degree_;
    std::int64_t scale_exponent_;
    Provider provider_;
    std::shared_ptr<Cache> cache_;
};

namespace detail {

/// Nearest point of 2^{-(L+1)} Z to q, and whether it is exact.
inline std::pair<Dyadic, bool> round_rational(const mpq_class& q, std::int64_t L) {
    mpq_class s = q;
    mpq_mul_2exp(s.get_mpq_t(), s.get_mpq_t(), static_cast<mp_bitcnt_t>(L + 1));
    // floor(s + 1/2)
    mpz_class num = 2 * s.get_num() + s.get_den();
    mpz_class den = 2 * s.get_den();
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    bool exact = s.get_den() == 1;
    return {Dyadic(r, -(L + 1)), exact};
}

/// Largest s with |2^s z| <= 1; then 1/2 < |2^s z| as well.
inline std::int64_t normalizing_exponent(const RationalComplex& z) {
    mpq_class n2 = z.re * z.re + z.im * z.im;
    // Start near -log4(n2) and correct with exact comparisons.
    std::int64_t guess = -(static_cast<std::int64_t>(mpz_sizeinbase(n2.get_num().get_mpz_t(), 2)) -
                           static_cast<std::int64_t>(mpz_sizeinbase(n2.get_den().get_mpz_t(), 2))) /
                         2;
    auto scaled = [&](std::int64_t s) {
        mpq_class v = n2;
        if (s >= 0)
            mpq_mul_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<mp_bitcnt_t>(2 * s));
        else
            mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<mp_bitcnt_t>(-2 * s));
        return v;
    };
    std::int64_t s = guess;
    while (scaled(s) > 1) --s;
    while (scaled(s + 1) <= 1) ++s;
    return s;
}

}  // namespace detail

/// Oracle for exactly known coefficients, rounded to the nearest point of
/// 2^{-(L+1)} Z (error <= 2^{-L-2} per component, radius 2^{-L-1}).
inline CoefficientOracle exact_oracle(std::vector<RationalComplex> coeffs, std::int64_t scale = 0) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    auto shared = std::make_shared<const std::vector<RationalComplex>>(std::move(coeffs));
    return CoefficientOracle(
        n,
        [shared](std::int64_t L) {
            std::vector<Ball> out;
            out.reserve(shared->size());
            for (const auto& c : *shared) {
                auto [re, re_exact] = detail::round_rational(c.re, L);
                auto [im, im_exact] = detail::round_rational(c.im, L);
                Dyadic rad = (re_exact && im_exact) ? Dyadic{} : Dyadic::pow2(-L - 1);
                out.emplace_back(DyadicComplex{std::move(re), std::move(im)}, std::move(rad));
            }
            return out;
        },
        scale);
}

/// Wraps raw coefficients a_0..a_n into an oracle for 2^s F with
/// 1/4 < |2^s a_n| <= 1. Roots are unchanged.
inline CoefficientOracle normalize(const std::vector<RationalComplex>& raw) {
    if (raw.size() < 3) throw DegenerateDegree("degenerate degree: need degree >= 2");
    if (raw.back().is_zero()) throw DegenerateDegree("degenerate degree: zero leading coefficient");
    const std::int64_t s = detail::normalizing_exponent(raw.back());
    std::vector<RationalComplex> scaled;
    scaled.reserve(raw.size());
    for (const auto& c : raw) {
        RationalComplex v = c;
        if (s >= 0) {
            mpq_mul_2exp(v.re.get_mpq_t(), v.re.get_mpq_t(), static_cast<mp_bitcnt_t>(s));
            mpq_mul_2exp(v.im.get_mpq_t(), v.im.get_mpq_t(), static_cast<mp_bitcnt_t>(s));
        } else {
            mpq_div_2exp(v.re.get_mpq_t(), v.re.get_mpq_t(), static_cast<mp_bitcnt_t>(-s));
            mpq_div_2exp(v.im.get_mpq_t(), v.im.get_mpq_t(), static_cast<mp_bitcnt_t>(-s));
        }
        scaled.push_back(std::move(v));
    }
    return exact_oracle(std::move(scaled), s);
}

inline CoefficientOracle normalize(const std::vector<DyadicComplex>& raw) {
    return normalize(std::vector<RationalComplex>(raw.begin(), raw.end()));
}

}  // namespace cisolate
