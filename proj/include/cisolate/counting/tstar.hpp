#pragma once

#include <cstdint>
#include <utility>

#include "cisolate/counting/graeffe.hpp"
#include "cisolate/counting/soft.hpp"
#include "cisolate/poly/ball_poly.hpp"
#include "cisolate/poly/oracle.hpp"

namespace cisolate {

/// Closed disk Delta(center, radius), radius > 0.
struct Disk {
    DyadicComplex center;
    Dyadic radius;

    Disk() = default;
    Disk(DyadicComplex c, Dyadic r) : center(std::move(c)), radius(std::move(r)) {
        if (radius.sign() <= 0) throw ArithmeticError("disk radius must be positive");
    }

    /// lambda * Delta: same centre, radius scaled.
    Disk scaled(const Dyadic& lambda) const { return {center, radius * lambda}; }

    bool contains(const DyadicComplex& z) const {
        return (z - center).norm2() <= radius * radius;
    }

    friend bool operator==(const Disk&, const Disk&) = default;
};

/// Certified root count: k >= 0 means the disk holds exactly k roots counted
/// with multiplicity; -1 carries no information.
struct CountResult {
    int k = -1;
    bool capped = false;        // gave up because the precision cap was reached
    std::int64_t precision = 0; // last oracle precision used
    int passes = 0;

    bool succeeded() const { return k >= 0; }
};

struct TStarConfig {
    std::int64_t precision_cap = kDefaultPrecisionCap;
};

/// Guard bits carried through the Graeffe rounds on top of the oracle precision.
inline std::int64_t graeffe_guard_bits(int n) { return 4 * static_cast<std::int64_t>(n) + 16; }

/// One pass of the counting pipeline at oracle precision L: approximate F,
/// shift to F(m + r x), run the Graeffe rounds, evaluate the clauses.
inline TkEvaluation tstar_pass(const CoefficientOracle& o, const Disk& d, std::int64_t L) {
    const int n = o.degree();
    const std::int64_t work = L + graeffe_guard_bits(n);
    BallPoly q = taylor_shift_scale_exact(approximate(o, L), d.center, d.radius);
    q.round_relative(work);
    q = graeffe_iterate(std::move(q), graeffe_rounds(n), work);
    return tk_clauses(q);
}

/// The combined soft Graeffe-Pellet count on disk d. Oracle precision runs
/// through L = (16 + n) * 2^j. Returns the first k whose clause certifies
/// dominance; returns -1 once every k is resolved without success or the
/// brackets are tight relative to the norm.
inline CountResult t_star(const CoefficientOracle& o, const Disk& d, const TStarConfig& cfg = {}) {
    CountResult res;
    for (std::int64_t L = 16 + o.degree();; L *= 2) {
        if (L > cfg.precision_cap) {
            res.capped = true;
            return res;
        }
        res.precision = L;
        ++res.passes;
        TkEvaluation ev = tstar_pass(o, d, L);
        if (int k = ev.certified_k(); k >= 0) {
            res.k = k;
            return res;
        }
        if (ev.all_resolved() || ev.stable) return res;
    }
}

}  // namespace cisolate
