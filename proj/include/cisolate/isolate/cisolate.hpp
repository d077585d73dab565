#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cisolate/arith/ball.hpp"
#include "cisolate/counting/soft.hpp"
#include "cisolate/counting/tstar.hpp"
#include "cisolate/error.hpp"
#include "cisolate/geom/grid.hpp"
#include "cisolate/isolate/trace.hpp"
#include "cisolate/poly/ball_poly.hpp"
#include "cisolate/poly/oracle.hpp"

namespace cisolate {

struct IsolatorConfig {
    DyadicComplex center;
    std::int64_t log2_width = 0;
    bool newton_enabled = true;
    /// Safeguard level; defaults to log2_width - 4096.
    std::optional<std::int64_t> min_level;
    std::int64_t precision_cap = kDefaultPrecisionCap;

    std::int64_t effective_min_level() const { return min_level.value_or(log2_width - 4096); }

    Grid grid() const {
        const Dyadic half = Dyadic::pow2(log2_width - 1);
        return {{center.re - half, center.im - half}};
    }
};

struct IsolatedDisk {
    Disk disk;
    int k = 1;

    friend bool operator==(const IsolatedDisk&, const IsolatedDisk&) = default;
};

/// Region left unresolved at the safeguard level. k = -1 means the count
/// could not be certified.
struct Cluster {
    Component region;
    int k = -1;

    friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct IsolationStats {
    std::int64_t components_processed = 0;
    std::int64_t squares_created = 0;
    std::int64_t tstar_calls = 0;
    std::int64_t newton_successes = 0;
    std::int64_t newton_failures = 0;
    std::int64_t max_precision = 0;
    std::int64_t max_depth = 0;      // log2 w(B) - smallest level reached
    std::int64_t longest_chain = 0;  // longest run of single-child components

    friend bool operator==(const IsolationStats&, const IsolationStats&) = default;
};

struct IsolationReport {
    std::vector<IsolatedDisk> disks;
    std::vector<Cluster> clusters;
    IsolationStats stats;

    friend bool operator==(const IsolationReport&, const IsolationReport&) = default;
};

using DiskCounter = std::function<CountResult(const Disk&)>;

/// T* with the cap turned into an exception.
inline DiskCounter capped_counter(const CoefficientOracle& o, std::int64_t cap) {
    return [&o, cap](const Disk& d) {
        CountResult r = t_star(o, d, {cap});
        if (r.capped) throw PrecisionCapExceeded("T* precision cap exceeded", cap);
        return r;
    };
}

namespace detail {

/// Midpoint-exact enclosure of F(x), or of F'(x), from the P-bit oracle output.
inline Ball eval_oracle(const CoefficientOracle& o, const DyadicComplex& x, std::int64_t P, bool derivative) {
    BallPoly p = approximate(o, P);
    if (derivative) p = p.derivative();
    return eval_exact(p, x);
}

/// scale * |F(x)| (or |F'(x)|) as a refinable magnitude.
inline RefinableMagnitude refinable_abs(const CoefficientOracle& o, const DyadicComplex& x, const Dyadic& scale,
                                        bool derivative, std::int64_t cap) {
    return [&o, x, scale, derivative, cap](std::int64_t L) {
        const std::int64_t target = L + 2 + std::max<std::int64_t>(0, scale.msb() + 1);
        const Dyadic tol = Dyadic::pow2(-target);
        for (std::int64_t P = std::max<std::int64_t>(target, 16 + o.degree()); P <= cap; P *= 2) {
            Ball b = eval_oracle(o, x, P, derivative);
            if (b.rad <= tol) return scale * abs_bracket(b.mid, target).lo;
        }
        throw PrecisionCapExceeded("evaluation precision cap exceeded", cap);
    };
}

/// floor(a / b * 2^t) * 2^-t for b > 0.
inline Dyadic floor_quotient(const Dyadic& a, const Dyadic& b, std::int64_t t) {
    const std::int64_t e = a.exponent() - b.exponent() + t;
    mpz_class num = a.mantissa(), den = b.mantissa();
    if (e >= 0)
        num <<= static_cast<mp_bitcnt_t>(e);
    else
        den <<= static_cast<mp_bitcnt_t>(-e);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return Dyadic(q, -t);
}

/// Nearest point of base + 2^e Z (ties upward).
inline Dyadic snap(const Dyadic& v, const Dyadic& base, std::int64_t e) {
    const Dyadic u = (v - base).mul_pow2(-e) + Dyadic(1, -1);
    return base + Dyadic(u.floor_scaled(0), e);
}

inline bool contains_square(const Component& c, const GridSquare& s) {
    return std::binary_search(c.squares.begin(), c.squares.end(), s);
}

}  // namespace detail

struct NewtonResult {
    std::optional<Component> component;
    std::string reason;  // why it failed, empty on success
    std::optional<Disk> disk;

    bool success() const { return component.has_value(); }
};

/// One quadratic step for a k-fold cluster in C from the probe point x.
/// On success the returned component lives at level l - 1 - log2 N and
/// contains every root of C inside the trial disk.
inline NewtonResult newton_test(const CoefficientOracle& o, const Grid& g, const Component& c, std::int64_t log2n,
                                int k, const DyadicComplex& x, std::int64_t cap, const DiskCounter& count) {
    NewtonResult res;
    const std::int64_t l = c.level();
    const ComponentFrame fr = frame(g, c);

    SoftCompareResult gate;
    try {
        gate = soft_compare(detail::refinable_abs(o, x, fr.radius().mul_pow2(2), true, cap),
                            detail::refinable_abs(o, x, Dyadic(1), false, cap), cap);
    } catch (const SoftCompareExhausted&) {
        res.reason = "gate exhausted";
        return res;
    }
    if (gate.outcome == SoftOutcome::False) {
        res.reason = "gate";
        return res;
    }

    // x' = x - k F(x)/F'(x), enclosed to within s/4 with s = 2^{l-6}/N
    const std::int64_t se = l - 6 - log2n;
    const Dyadic s = Dyadic::pow2(se);
    std::int64_t kbits = 0;
    while ((1 << kbits) < k) ++kbits;
    const std::int64_t t = 4 + kbits - se;  // k * 2^{1-t} <= s/8
    const Dyadic delta = Dyadic::pow2(1 - t);
    const Dyadic kd(k);
    std::optional<DyadicComplex> center;
    for (std::int64_t P = 16 + o.degree(); P <= cap; P *= 2) {
        const Ball f = detail::eval_oracle(o, x, P, false);
        const Ball d = detail::eval_oracle(o, x, P, true);
        const Dyadic dlo = abs_bracket(d.mid, std::max(P, t)).lo - d.rad;
        if (dlo.sign() <= 0) continue;
        const Dyadic den = d.mid.norm2();
        const DyadicComplex num = f.mid * d.mid.conj();
        const DyadicComplex q{detail::floor_quotient(num.re, den, t), detail::floor_quotient(num.im, den, t)};
        const Dyadic qabs = abs_upper(q, t);
        // |f/d - q| <= delta + (rad_f + |f/d| rad_d) / (|d| - rad_d)
        if (kd * (f.rad + (qabs + delta) * d.rad) <= s.mul_pow2(-3) * dlo) {
            center = x - DyadicComplex{q.re * kd, q.im * kd};
            break;
        }
    }
    if (!center) {
        res.reason = "iterate precision";
        return res;
    }
    const DyadicComplex xs{detail::snap(center->re, g.origin.re, se), detail::snap(center->im, g.origin.im, se)};
    const Disk trial(xs, Dyadic::pow2(l - 3 - log2n));
    res.disk = trial;

    // level l' sub-squares of C meeting the trial disk (at most 2 x 2)
    const std::int64_t sub = l - 1 - log2n;
    auto index = [&](const Dyadic& v, const Dyadic& base) { return (v - base).mul_pow2(-sub).floor_scaled(0); };
    const mpz_class x0 = index(xs.re - trial.radius, g.origin.re), x1 = index(xs.re + trial.radius, g.origin.re);
    const mpz_class y0 = index(xs.im - trial.radius, g.origin.im), y1 = index(xs.im + trial.radius, g.origin.im);
    std::vector<GridSquare> hit;
    for (mpz_class ix = x0; ix <= x1; ++ix)
        for (mpz_class iy = y0; iy <= y1; ++iy) {
            GridSquare sq{sub, ix, iy};
            if (!intersects(trial, g.rect(sq))) continue;
            if (!detail::contains_square(c, sq.ancestor(l))) continue;
            hit.push_back(std::move(sq));
        }
    if (hit.empty()) {
        res.reason = "disk misses component";
        return res;
    }
    if (count(trial).k != k) {
        res.reason = "count mismatch";
        return res;
    }
    auto comps = connected_components(std::move(hit));
    if (comps.size() != 1) {
        res.reason = "disconnected";
        return res;
    }
    res.component = std::move(comps.front());
    return res;
}

inline NewtonResult newton_test(const CoefficientOracle& o, const Grid& g, const Component& c, std::int64_t log2n,
                                int k, const DyadicComplex& x, std::int64_t cap = kDefaultPrecisionCap) {
    return newton_test(o, g, c, log2n, k, x, cap, capped_counter(o, cap));
}

/// Centre of the first grid cell, in (ix, iy) order, that shares an edge
/// with C, lies inside B and is not covered by any active component.
inline std::optional<DyadicComplex> choose_probe_point(const Grid& g, std::int64_t level0, const Component& c,
                                                       const std::vector<const Component*>& active) {
    const std::int64_t l = c.level();
    const mpz_class cells = detail::shl(mpz_class(1), level0 - l);
    std::set<std::pair<mpz_class, mpz_class>> cand;
    static constexpr int kSteps[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    for (const auto& s : c.squares)
        for (const auto& st : kSteps) {
            GridSquare nb{l, s.ix + st[0], s.iy + st[1]};
            if (sgn(nb.ix) < 0 || sgn(nb.iy) < 0 || nb.ix >= cells || nb.iy >= cells) continue;
            if (detail::contains_square(c, nb)) continue;
            cand.emplace(nb.ix, nb.iy);
        }
    for (const auto& [ix, iy] : cand) {
        const DyadicComplex p = g.center({l, ix, iy});
        if (point_in_component(g, p, c)) continue;
        if (std::any_of(active.begin(), active.end(),
                        [&](const Component* a) { return point_in_component(g, p, *a); }))
            continue;
        return p;
    }
    return std::nullopt;
}

/// Subdivides every square of C and drops children whose enclosing disk
/// counts zero roots. Survivors are regrouped into components.
inline std::vector<Component> bisection(const Grid& g, const Component& c, const DiskCounter& count,
                                        std::int64_t* created = nullptr) {
    std::vector<GridSquare> keep;
    for (const auto& s : c.squares)
        for (auto& ch : s.children()) {
            if (created) ++*created;
            if (count(g.enclosing_disk(ch)).k != 0) keep.push_back(std::move(ch));
        }
    if (keep.empty()) return {};
    return connected_components(std::move(keep));
}

namespace detail {

class Isolator {
public:
    Isolator(const CoefficientOracle& o, const IsolatorConfig& cfg, EngineTrace* trace)
        : o_(o), cfg_(cfg), trace_(trace), grid_(cfg.grid()) {
        if (cfg_.effective_min_level() >= cfg_.log2_width)
            throw Error("min level must lie below the level of the input square");
        if (trace_) {
            trace_->grid = grid_;
            trace_->level0 = cfg_.log2_width;
            trace_->events.clear();
        }
    }

    IsolationReport run() {
        preprocess();
        while (!queue_.empty()) step();
        return std::move(report_);
    }

private:
    struct Node {
        Component c;
        std::int64_t log2n = 2;
        std::int64_t chain = 0;
    };

    CountResult count(const Disk& d) {
        ++report_.stats.tstar_calls;
        CountResult r = t_star(o_, d, {cfg_.precision_cap});
        report_.stats.max_precision = std::max(report_.stats.max_precision, r.precision);
        if (trace_) trace_->events.emplace_back(TraceTStar{d, r.k, r.precision});
        if (r.capped) throw PrecisionCapExceeded("T* precision cap exceeded", cfg_.precision_cap);
        return r;
    }

    DiskCounter counter() {
        return [this](const Disk& d) { return count(d); };
    }

    void push(Component c, std::int64_t log2n, std::int64_t chain) {
        report_.stats.max_depth = std::max(report_.stats.max_depth, cfg_.log2_width - c.level());
        report_.stats.longest_chain = std::max(report_.stats.longest_chain, chain);
        queue_.push_back({std::move(c), log2n, chain});
    }

    void snapshot() {
        if (!trace_) return;
        TraceState st;
        st.iteration = iteration_++;
        for (const auto& nd : queue_) st.active.push_back({nd.c, nd.log2n});
        trace_->events.emplace_back(std::move(st));
    }

    void emit_cluster(const Component& c, int k) {
        if (k < 1) {
            const int k2 = count(frame(grid_, c).disk.scaled(Dyadic(2))).k;
            k = k2 >= 1 ? k2 : -1;
        }
        if (trace_) trace_->events.emplace_back(TraceCluster{c, k});
        report_.clusters.push_back({c, k});
    }

    // Bisect the whole square until some child is discarded.
    void preprocess() {
        Component cur{{GridSquare{cfg_.log2_width, 0, 0}}};
        for (;;) {
            if (cur.level() <= cfg_.effective_min_level()) {
                emit_cluster(cur, -1);
                snapshot();
                return;
            }
            auto kids = bisection(grid_, cur, counter(), &report_.stats.squares_created);
            ++report_.stats.components_processed;
            std::size_t total = 0;
            for (const auto& k : kids) total += k.size();
            if (total == 4 * cur.size()) {
                cur = std::move(kids.front());
                report_.stats.max_depth = std::max(report_.stats.max_depth, cfg_.log2_width - cur.level());
                if (trace_) {
                    TraceState st;
                    st.iteration = iteration_++;
                    st.active.push_back({cur, 2});
                    trace_->events.emplace_back(std::move(st));
                }
                continue;
            }
            for (auto& k : kids) push(std::move(k), 2, 0);
            snapshot();
            return;
        }
    }

    void step() {
        Node nd = std::move(queue_.front());
        queue_.pop_front();
        ++report_.stats.components_processed;
        const Component& c = nd.c;
        const ComponentFrame fr = frame(grid_, c);

        const bool isolated = std::all_of(queue_.begin(), queue_.end(), [&](const Node& other) {
            return neighborhood_disjoint(grid_, fr, other.c);
        });
        int k = -1;
        int k2 = -1;
        if (isolated) {
            k2 = count(fr.disk.scaled(Dyadic(2))).k;
            if (k2 >= 1 && count(fr.disk.scaled(Dyadic(4))).k == k2) k = k2;
        }

        if (k == 1) {
            const Disk out = fr.disk.scaled(Dyadic(2));
            if (trace_) trace_->events.emplace_back(TraceReported{out});
            report_.disks.push_back({out, 1});
            snapshot();
            return;
        }

        if (c.level() <= cfg_.effective_min_level()) {
            emit_cluster(c, k >= 1 ? k : (isolated && k2 >= 1 ? k2 : -1));
            snapshot();
            return;
        }

        if (k > 1 && cfg_.newton_enabled) {
            std::vector<const Component*> active;
            for (const auto& other : queue_) active.push_back(&other.c);
            if (auto x = choose_probe_point(grid_, cfg_.log2_width, c, active)) {
                NewtonResult nr = newton_test(o_, grid_, c, nd.log2n, k, *x, cfg_.precision_cap, counter());
                if (trace_)
                    trace_->events.emplace_back(TraceNewton{c.level(), nd.log2n, k, nr.success(), nr.reason});
                if (nr.success()) {
                    ++report_.stats.newton_successes;
                    push(std::move(*nr.component), 2 * nd.log2n, nd.chain + 1);
                    snapshot();
                    return;
                }
                ++report_.stats.newton_failures;
            }
        }

        auto kids = bisection(grid_, c, counter(), &report_.stats.squares_created);
        const std::int64_t chain = kids.size() == 1 ? nd.chain + 1 : 0;
        for (auto& kc : kids) push(std::move(kc), std::max<std::int64_t>(2, nd.log2n / 2), chain);
        snapshot();
    }

    const CoefficientOracle& o_;
    IsolatorConfig cfg_;
    EngineTrace* trace_;
    Grid grid_;
    IsolationReport report_;
    std::deque<Node> queue_;
    std::int64_t iteration_ = 0;
};

}  // namespace detail

/// Isolates the roots of F in the query square. Reported disks are pairwise
/// disjoint and each, together with its double, holds exactly one root.
/// Throws PrecisionCapExceeded rather than returning an uncertified answer.
inline IsolationReport cisolate(const CoefficientOracle& o, const IsolatorConfig& cfg, EngineTrace* trace = nullptr) {
    return detail::Isolator(o, cfg, trace).run();
}

}  // namespace cisolate
