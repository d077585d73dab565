#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "cisolate/arith/dyadic.hpp"
#include "cisolate/error.hpp"
#include "cisolate/poly/ball_poly.hpp"

namespace cisolate {

enum class SoftOutcome { True, False, Undecided };

inline std::string_view to_string(SoftOutcome o) {
    switch (o) {
        case SoftOutcome::True: return "True";
        case SoftOutcome::False: return "False";
        case SoftOutcome::Undecided: return "Undecided";
    }
    return "?";
}

/// A non-negative quantity E that can be approximated to any precision:
/// calling it with L returns some value within 2^{-L} of E.
using RefinableMagnitude = std::function<Dyadic(std::int64_t)>;

inline constexpr std::int64_t kDefaultPrecisionCap = std::int64_t{1} << 24;

struct SoftCompareResult {
    SoftOutcome outcome = SoftOutcome::Undecided;
    std::int64_t precision = 0;  // L at which the loop stopped
};

/// Decides E_l > E_r softly. True and False are exact answers; Undecided
/// certifies (2/3) E_l <= E_r <= (3/2) E_l. Requires E_l != 0 or E_r != 0,
/// otherwise the loop runs into `cap` and throws SoftCompareExhausted.
inline SoftCompareResult soft_compare(const RefinableMagnitude& el, const RefinableMagnitude& er,
                                      std::int64_t cap = kDefaultPrecisionCap) {
    for (std::int64_t L = 1; L <= cap; L *= 2) {
        const Dyadic eps = Dyadic::pow2(-L);
        const Dyadic l = el(L);
        const Dyadic r = er(L);
        const Dyadic zero;
        const Dyadic lm = max(zero, l - eps), lp = max(zero, l + eps);
        const Dyadic rm = max(zero, r - eps), rp = max(zero, r + eps);
        if (lm > rp) return {SoftOutcome::True, L};
        if (lp < rm) return {SoftOutcome::False, L};
        // (2/3) El+ <= Er- < Er+ <= (3/2) El-
        if (lp * Dyadic(2) <= rm * Dyadic(3) && rm < rp && rp * Dyadic(2) <= lm * Dyadic(3))
            return {SoftOutcome::Undecided, L};
    }
    throw SoftCompareExhausted("soft-compare exhausted: both magnitudes appear to be zero");
}

/// Outcome of the three coefficient-dominance clauses for every k on one
/// approximation of the (normalized) polynomial f.
struct TkEvaluation {
    std::vector<SoftOutcome> outcomes;
    /// Sum of bracket widths is at most 2^-8 times the norm lower bound.
    bool stable = false;

    /// First k whose clause certified |f_k| > sum_{i != k} |f_i|, or -1.
    int certified_k() const {
        for (std::size_t k = 0; k < outcomes.size(); ++k)
            if (outcomes[k] == SoftOutcome::True) return static_cast<int>(k);
        return -1;
    }

    bool all_resolved() const {
        return std::none_of(outcomes.begin(), outcomes.end(),
                            [](SoftOutcome o) { return o == SoftOutcome::Undecided; });
    }
};

/// Bits below the largest midpoint used when bracketing |f_i|.
inline constexpr std::int64_t kBracketGuardBits = 64;

/// Applies, for all k at once, the clauses
///   f_k^- - sum_{i!=k} f_i^+ > 0                                  -> True
///   sum_{i!=k} f_i^- - f_k^+ > 0                                  -> False
///   sum_{i!=k} f_i^- >= (2/3) f_k^+ and (3/2) f_k^- >= sum f_i^+  -> False
/// Undecided if none applies. The sums over i != k come from one total.
inline TkEvaluation tk_clauses(const BallPoly& f) {
    const std::int64_t bits = f.max_mid_bits();
    const std::int64_t guard = std::max<std::int64_t>(0, kBracketGuardBits - bits);
    CoefficientBrackets b = coefficient_brackets(f, guard);
    mpz_class sum_lo = 0, sum_hi = 0, width = 0, norm_lo = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        sum_lo += b.lo[i];
        sum_hi += b.hi[i];
        width += b.hi[i] - b.lo[i];
        if (b.lo[i] > norm_lo) norm_lo = b.lo[i];
    }
    TkEvaluation ev;
    ev.outcomes.resize(f.size(), SoftOutcome::Undecided);
    mpz_class rest_lo, rest_hi;
    for (std::size_t k = 0; k < f.size(); ++k) {
        rest_lo = sum_lo - b.lo[k];
        rest_hi = sum_hi - b.hi[k];
        if (b.lo[k] > rest_hi) {
            ev.outcomes[k] = SoftOutcome::True;
        } else if (rest_lo > b.hi[k]) {
            ev.outcomes[k] = SoftOutcome::False;
        } else if (3 * rest_lo >= 2 * b.hi[k] && 3 * b.lo[k] >= 2 * rest_hi) {
            ev.outcomes[k] = SoftOutcome::False;
        }
    }
    ev.stable = sgn(norm_lo) > 0 && (width << 8) <= norm_lo;
    return ev;
}

struct TkAllResult {
    std::vector<SoftOutcome> outcomes;
    std::int64_t precision = 0;
};

/// Source of absolute approximations of a fixed polynomial: given L it
/// returns a ball polynomial containing it.
using BallPolySource = std::function<BallPoly(std::int64_t)>;

/// Shared precision-doubling loop over all k = 0..n. Stops once every k is
/// resolved to True or False.
inline TkAllResult tilde_tk_all(const BallPolySource& source, std::int64_t cap = kDefaultPrecisionCap) {
    for (std::int64_t L = 1; L <= cap; L *= 2) {
        BallPoly q = source(L);
        TkEvaluation ev = tk_clauses(q);
        if (ev.all_resolved()) return {std::move(ev.outcomes), L};
    }
    throw PrecisionCapExceeded("tilde_tk_all: no decision (is the polynomial zero?)", cap);
}

/// Absolute (L + ceil(log2(n+1)))-bit approximations of an exactly stored polynomial.
inline BallPolySource absolute_source(BallPoly exact) {
    return [p = std::move(exact)](std::int64_t L) {
        std::int64_t lg = 0;
        while ((std::int64_t{1} << lg) < static_cast<std::int64_t>(p.size())) ++lg;
        BallPoly q = p;
        q.round_absolute(L + lg);
        return q;
    };
}

}  // namespace cisolate
