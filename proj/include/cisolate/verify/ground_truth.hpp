#pragma once

#include <vector>

#include "cisolate/counting/tstar.hpp"
#include "cisolate/error.hpp"
#include "cisolate/geom/grid.hpp"
#include "cisolate/poly/expand.hpp"

namespace cisolate {

/// Known roots (repeated by multiplicity). Each true root lies within
/// `uncertainty` of its entry; 0 means the roots are exact.
struct GroundTruth {
    std::vector<DyadicComplex> roots;
    Dyadic uncertainty;

    static GroundTruth exact(std::vector<DyadicComplex> roots) { return {std::move(roots), Dyadic{}}; }

    std::vector<RationalComplex> polynomial() const { return expand_roots(roots); }
    bool is_exact() const { return uncertainty.is_zero(); }
};

/// Lower and upper bound on a count when roots are only approximately known.
struct CountBracket {
    int lo = 0;
    int hi = 0;
    bool on_boundary = false;  // an exact root sits on the boundary

    bool admits(int k) const { return lo <= k && k <= hi; }
};

enum class Where { Inside, Outside, Unknown };

/// Position of the uncertain point (z, eps) relative to the closed disk d,
/// decided strictly: a point on the circle is Unknown.
inline Where locate(const DyadicComplex& z, const Dyadic& eps, const Disk& d) {
    const Dyadic dist2 = (z - d.center).norm2();
    const Dyadic in = d.radius - eps;
    if (in.sign() > 0 && dist2 < in * in) return Where::Inside;
    const Dyadic out = d.radius + eps;
    if (dist2 > out * out) return Where::Outside;
    return Where::Unknown;
}

inline CountBracket count_bracket(const GroundTruth& gt, const Disk& d) {
    CountBracket b;
    for (const auto& z : gt.roots) switch (locate(z, gt.uncertainty, d)) {
            case Where::Inside:
                ++b.lo;
                ++b.hi;
                break;
            case Where::Outside:
                break;
            case Where::Unknown:
                ++b.hi;
                if (gt.is_exact()) b.on_boundary = true;
                break;
        }
    return b;
}

/// Exact number of roots in the closed disk d (with multiplicity).
inline int count_roots_in_disk(const GroundTruth& gt, const Disk& d) {
    if (!gt.is_exact()) throw IllPosedFixture("ill-posed fixture: approximate roots");
    CountBracket b = count_bracket(gt, d);
    if (b.on_boundary) throw IllPosedFixture("ill-posed fixture: root on the disk boundary");
    return b.lo;
}

/// Number of roots that may lie within max-norm distance `reach` of some
/// square of c (so reach = w/2 covers C+).
inline int count_near_upper(const GroundTruth& gt, const Grid& g, const Component& c, const Dyadic& reach) {
    const Dyadic lim = reach + gt.uncertainty;
    int n = 0;
    for (const auto& z : gt.roots)
        for (const auto& s : c.squares)
            if (max_norm_distance(z, g.rect(s)) <= lim) {
                ++n;
                break;
            }
    return n;
}

}  // namespace cisolate
