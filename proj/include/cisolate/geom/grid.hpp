#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "cisolate/arith/dyadic.hpp"
#include "cisolate/counting/tstar.hpp"

namespace cisolate {

/// Closed square of width 2^level whose lower-left corner sits at
/// origin + (ix, iy) * 2^level on the grid anchored at the input square.
struct GridSquare {
    std::int64_t level = 0;
    mpz_class ix;
    mpz_class iy;

    friend bool operator==(const GridSquare& a, const GridSquare& b) {
        return a.level == b.level && a.ix == b.ix && a.iy == b.iy;
    }
    friend bool operator<(const GridSquare& a, const GridSquare& b) {
        if (a.level != b.level) return a.level < b.level;
        if (a.ix != b.ix) return a.ix < b.ix;
        return a.iy < b.iy;
    }

    Dyadic width() const { return Dyadic::pow2(level); }

    /// The four children at level - 1, in (ix, iy) order.
    std::vector<GridSquare> children() const {
        std::vector<GridSquare> out;
        out.reserve(4);
        for (int dx = 0; dx < 2; ++dx)
            for (int dy = 0; dy < 2; ++dy) out.push_back({level - 1, 2 * ix + dx, 2 * iy + dy});
        return out;
    }

    /// Ancestor at a coarser level.
    GridSquare ancestor(std::int64_t at_level) const {
        const std::int64_t k = at_level - level;
        return {at_level, detail::fdiv_shr(ix, k), detail::fdiv_shr(iy, k)};
    }
};

/// Axis-aligned box [x0, x1] x [y0, y1] with exact dyadic sides.
struct Rect {
    Dyadic x0, y0, x1, y1;
};

/// The dyadic grid anchored at the lower-left corner of the input square.
struct Grid {
    DyadicComplex origin;

    friend bool operator==(const Grid&, const Grid&) = default;

    Rect rect(const GridSquare& s) const {
        const Dyadic w = s.width();
        Dyadic x0 = origin.re + Dyadic(s.ix, s.level);
        Dyadic y0 = origin.im + Dyadic(s.iy, s.level);
        return {x0, y0, x0 + w, y0 + w};
    }

    DyadicComplex center(const GridSquare& s) const {
        return {origin.re + Dyadic(2 * s.ix + 1, s.level - 1), origin.im + Dyadic(2 * s.iy + 1, s.level - 1)};
    }

    /// Delta_B = Delta(m_B, (3/4) w(B)).
    Disk enclosing_disk(const GridSquare& s) const { return {center(s), Dyadic(3, s.level - 2)}; }
};

/// Non-empty set of distinct equal-level squares, kept sorted.
struct Component {
    std::vector<GridSquare> squares;

    std::int64_t level() const { return squares.front().level; }
    std::size_t size() const { return squares.size(); }

    friend bool operator==(const Component&, const Component&) = default;
};

/// Bounding square B_C (min Re and max Im flush with C), its centre m_C and
/// Delta_C = Delta(m_C, (3/4) w(C)).
struct ComponentFrame {
    DyadicComplex corner;  // lower-left of B_C
    Dyadic width;          // w(C)
    DyadicComplex center;  // m_C
    Disk disk;             // Delta_C

    Dyadic radius() const { return width.mul_pow2(-1); }  // r(C)
};

namespace detail {

inline Dyadic clamp_gap(const Dyadic& v, const Dyadic& lo, const Dyadic& hi) {
    if (v < lo) return lo - v;
    if (v > hi) return v - hi;
    return {};
}

inline Dyadic interval_gap(const Dyadic& a0, const Dyadic& a1, const Dyadic& b0, const Dyadic& b1) {
    if (a1 < b0) return b0 - a1;
    if (b1 < a0) return a0 - b1;
    return {};
}

}  // namespace detail

/// Squared Euclidean distance from a point to a closed box (0 inside).
inline Dyadic distance2(const DyadicComplex& p, const Rect& r) {
    Dyadic dx = detail::clamp_gap(p.re, r.x0, r.x1);
    Dyadic dy = detail::clamp_gap(p.im, r.y0, r.y1);
    return dx * dx + dy * dy;
}

inline bool intersects(const Disk& d, const Rect& r) {
    return distance2(d.center, r) <= d.radius * d.radius;
}

inline bool contains(const Rect& r, const DyadicComplex& p) {
    return r.x0 <= p.re && p.re <= r.x1 && r.y0 <= p.im && p.im <= r.y1;
}

/// Max-norm distance between closed boxes.
inline Dyadic max_norm_distance(const Rect& a, const Rect& b) {
    return max(detail::interval_gap(a.x0, a.x1, b.x0, b.x1), detail::interval_gap(a.y0, a.y1, b.y0, b.y1));
}

/// Max-norm distance from a point to a closed box.
inline Dyadic max_norm_distance(const DyadicComplex& p, const Rect& r) {
    return max(detail::clamp_gap(p.re, r.x0, r.x1), detail::clamp_gap(p.im, r.y0, r.y1));
}

/// Splits equal-level squares into maximal classes under closed-set
/// intersection (edge or corner contact). Squares inside a class are sorted
/// and classes are ordered by their smallest square.
inline std::vector<Component> connected_components(std::vector<GridSquare> squares) {
    std::sort(squares.begin(), squares.end());
    squares.erase(std::unique(squares.begin(), squares.end()), squares.end());
    using Key = std::pair<mpz_class, mpz_class>;
    std::set<Key> pending;
    for (const auto& s : squares) {
        if (s.level != squares.front().level)
            throw Error("connected_components: squares on different levels");
        pending.emplace(s.ix, s.iy);
    }
    std::vector<Component> out;
    for (const auto& seed : squares) {
        auto it = pending.find({seed.ix, seed.iy});
        if (it == pending.end()) continue;
        Component c;
        std::deque<Key> todo{*it};
        pending.erase(it);
        while (!todo.empty()) {
            Key cur = std::move(todo.front());
            todo.pop_front();
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy) {
                    if (dx == 0 && dy == 0) continue;
                    auto nb = pending.find({cur.first + dx, cur.second + dy});
                    if (nb == pending.end()) continue;
                    todo.push_back(*nb);
                    pending.erase(nb);
                }
            c.squares.push_back({seed.level, cur.first, cur.second});
        }
        std::sort(c.squares.begin(), c.squares.end());
        out.push_back(std::move(c));
    }
    return out;
}

/// Exact frame of a component.
inline ComponentFrame frame(const Grid& g, const Component& c) {
    mpz_class min_x = c.squares.front().ix, max_x = min_x;
    mpz_class min_y = c.squares.front().iy, max_y = min_y;
    for (const auto& s : c.squares) {
        if (s.ix < min_x) min_x = s.ix;
        if (s.ix > max_x) max_x = s.ix;
        if (s.iy < min_y) min_y = s.iy;
        if (s.iy > max_y) max_y = s.iy;
    }
    const std::int64_t lvl = c.level();
    mpz_class span = max_x - min_x + 1;
    if (max_y - min_y + 1 > span) span = max_y - min_y + 1;
    ComponentFrame f;
    f.width = Dyadic(span, lvl);
    const Dyadic left = g.origin.re + Dyadic(min_x, lvl);
    const Dyadic top = g.origin.im + Dyadic(max_y + 1, lvl);
    f.corner = {left, top - f.width};
    const Dyadic half = f.width.mul_pow2(-1);
    f.center = {left + half, top - half};
    f.disk = Disk(f.center, f.width * Dyadic(3, -2));
    return f;
}

/// True iff no square of `other` meets the closed disk 4 * Delta_C.
inline bool neighborhood_disjoint(const Grid& g, const ComponentFrame& fc, const Component& other) {
    const Disk big = fc.disk.scaled(Dyadic(4));
    return std::none_of(other.squares.begin(), other.squares.end(),
                        [&](const GridSquare& s) { return intersects(big, g.rect(s)); });
}

/// Max-norm distance between two components.
inline Dyadic component_distance(const Grid& g, const Component& a, const Component& b) {
    bool first = true;
    Dyadic best;
    for (const auto& s : a.squares) {
        const Rect ra = g.rect(s);
        for (const auto& t : b.squares) {
            Dyadic d = max_norm_distance(ra, g.rect(t));
            if (first || d < best) best = std::move(d);
            first = false;
        }
    }
    return best;
}

/// Pairwise component distance is at least max(2^l1, 2^l2).
inline bool distance_lower_bound_invariant(const Grid& g, const std::vector<Component>& cs) {
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            const Dyadic need = Dyadic::pow2(std::max(cs[i].level(), cs[j].level()));
            if (component_distance(g, cs[i], cs[j]) < need) return false;
        }
    return true;
}

inline bool point_in_component(const Grid& g, const DyadicComplex& p, const Component& c) {
    return std::any_of(c.squares.begin(), c.squares.end(),
                       [&](const GridSquare& s) { return contains(g.rect(s), p); });
}

/// p lies in the closed union of all component squares.
inline bool point_in_components(const Grid& g, const DyadicComplex& p, const std::vector<Component>& cs) {
    return std::any_of(cs.begin(), cs.end(), [&](const Component& c) { return point_in_component(g, p, c); });
}

/// p lies in C+ (union of the doubled squares), i.e. within max-norm
/// distance w/2 of some square of C.
inline bool point_in_enlarged(const Grid& g, const DyadicComplex& p, const Component& c) {
    const Dyadic half = Dyadic::pow2(c.level() - 1);
    return std::any_of(c.squares.begin(), c.squares.end(),
                       [&](const GridSquare& s) { return max_norm_distance(p, g.rect(s)) <= half; });
}

}  // namespace cisolate
