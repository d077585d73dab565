#pragma once

#include <set>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "cisolate/isolate/cisolate.hpp"
#include "cisolate/isolate/trace.hpp"
#include "cisolate/verify/ground_truth.hpp"

namespace cisolate {

namespace detail {

inline bool is_connected(const Component& c) { return connected_components(c.squares).size() == 1; }

inline bool power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

inline Rect input_rect(const EngineTrace& t) { return t.grid.rect({t.level0, 0, 0}); }

/// True iff the uncertain root certainly lies in the closed rectangle.
inline bool certainly_inside(const DyadicComplex& z, const Dyadic& eps, const Rect& r) {
    return r.x0 + eps <= z.re && z.re + eps <= r.x1 && r.y0 + eps <= z.im && z.im + eps <= r.y1;
}

inline std::string describe(const Disk& d) {
    return "disk(" + d.center.to_string() + ", " + d.radius.to_string() + ")";
}

}  // namespace detail

/// Replays a trace against known roots and lists every definite violation
/// of the subdivision invariants:
///   (a) components are connected sets of distinct equal-size squares
///   (b) distinct components are at max-norm distance >= the larger width
///   (c) every root in B lies in an active component, a reported disk or a cluster
///   (d) every kept square other than B has a root in its double
///   (e) a component of s squares has at least s/9 roots in C+
/// plus: log2 N is a power of two >= 2, and every T* count k >= 0 is right.
/// With approximate roots only certain violations are reported.
inline std::vector<std::string> audit_trace(const EngineTrace& trace, const GroundTruth& gt) {
    std::vector<std::string> bad;
    const Grid& g = trace.grid;
    const Rect b = detail::input_rect(trace);
    const Dyadic& eps = gt.uncertainty;
    std::vector<Disk> reported;
    std::vector<Component> clusters;
    std::set<GridSquare> seen;

    for (std::size_t ei = 0; ei < trace.events.size(); ++ei) {
        const std::string at = "event " + std::to_string(ei) + ": ";
        std::visit(
            [&](const auto& ev) {
                using T = std::decay_t<decltype(ev)>;
                if constexpr (std::is_same_v<T, TraceTStar>) {
                    if (ev.k < 0) return;
                    CountBracket cb = count_bracket(gt, ev.disk);
                    if (cb.on_boundary)
                        bad.push_back(at + "T* returned " + std::to_string(ev.k) + " on " + detail::describe(ev.disk) +
                                      " with a root on its boundary");
                    else if (!cb.admits(ev.k))
                        bad.push_back(at + "T* returned " + std::to_string(ev.k) + " on " + detail::describe(ev.disk) +
                                      " but it holds " + std::to_string(cb.lo) +
                                      (cb.lo == cb.hi ? "" : ".." + std::to_string(cb.hi)) + " roots");
                } else if constexpr (std::is_same_v<T, TraceReported>) {
                    reported.push_back(ev.disk);
                } else if constexpr (std::is_same_v<T, TraceCluster>) {
                    clusters.push_back(ev.region);
                } else if constexpr (std::is_same_v<T, TraceState>) {
                    const auto& act = ev.active;
                    for (std::size_t i = 0; i < act.size(); ++i) {
                        const Component& c = act[i].component;
                        const std::string who = at + "component " + std::to_string(i) + " ";
                        if (c.squares.empty()) {
                            bad.push_back(who + "(a) is empty");
                            continue;
                        }
                        // (a)
                        std::set<GridSquare> uniq(c.squares.begin(), c.squares.end());
                        if (uniq.size() != c.squares.size()) bad.push_back(who + "(a) repeats a square");
                        for (const auto& s : c.squares)
                            if (s.level != c.level()) bad.push_back(who + "(a) mixes square sizes");
                        if (!detail::is_connected(c)) bad.push_back(who + "(a) is not connected");
                        if (act[i].log2n < 2 || !detail::power_of_two(act[i].log2n))
                            bad.push_back(who + "has log2 N = " + std::to_string(act[i].log2n));
                        // (d)
                        for (const auto& s : c.squares) {
                            if (s.level == trace.level0 || !seen.insert(s).second) continue;
                            Component one{{s}};
                            if (count_near_upper(gt, g, one, Dyadic::pow2(s.level - 1)) == 0)
                                bad.push_back(who + "(d) square at level " + std::to_string(s.level) +
                                              " has no root in its double");
                        }
                        // (e)
                        const int z = count_near_upper(gt, g, c, Dyadic::pow2(c.level() - 1));
                        if (static_cast<std::int64_t>(c.size()) > 9 * static_cast<std::int64_t>(z))
                            bad.push_back(who + "(e) has " + std::to_string(c.size()) + " squares but " +
                                          std::to_string(z) + " roots near it");
                        // (b)
                        for (std::size_t j = i + 1; j < act.size(); ++j) {
                            const Component& d = act[j].component;
                            if (d.squares.empty()) continue;
                            const Dyadic need = Dyadic::pow2(std::max(c.level(), d.level()));
                            if (component_distance(g, c, d) < need)
                                bad.push_back(who + "(b) is too close to component " + std::to_string(j));
                        }
                    }
                    // (c)
                    for (const auto& z : gt.roots) {
                        if (!detail::certainly_inside(z, eps, b)) continue;
                        bool covered = false;
                        for (const auto& e : act)
                            for (const auto& s : e.component.squares)
                                covered = covered || max_norm_distance(z, g.rect(s)) <= eps;
                        for (const auto& c : clusters)
                            for (const auto& s : c.squares) covered = covered || max_norm_distance(z, g.rect(s)) <= eps;
                        for (const auto& d : reported) covered = covered || locate(z, eps, d) != Where::Outside;
                        if (!covered) bad.push_back(at + "(c) root " + z.to_string() + " is not covered");
                    }
                }
            },
            trace.events[ei]);
    }
    return bad;
}

/// Checks a final report: disks pairwise disjoint, each disk and its double
/// hold exactly one root, every root of B is covered.
inline std::vector<std::string> audit_report(const IsolationReport& r, const IsolatorConfig& cfg,
                                             const GroundTruth& gt) {
    std::vector<std::string> bad;
    const Grid g = cfg.grid();
    const Rect b = g.rect({cfg.log2_width, 0, 0});
    for (std::size_t i = 0; i < r.disks.size(); ++i) {
        const Disk& d = r.disks[i].disk;
        for (const Disk& dd : {d, d.scaled(Dyadic(2))}) {
            CountBracket cb = count_bracket(gt, dd);
            if (cb.on_boundary || cb.lo > 1 || cb.hi < 1)
                bad.push_back("disk " + std::to_string(i) + ": " + detail::describe(dd) + " holds " +
                              std::to_string(cb.lo) + ".." + std::to_string(cb.hi) + " roots");
        }
        for (std::size_t j = i + 1; j < r.disks.size(); ++j) {
            const Disk& e = r.disks[j].disk;
            const Dyadic rr = d.radius + e.radius;
            if ((d.center - e.center).norm2() <= rr * rr)
                bad.push_back("disks " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
        }
    }
    for (const auto& z : gt.roots) {
        if (!detail::certainly_inside(z, gt.uncertainty, b)) continue;
        bool covered = false;
        for (const auto& d : r.disks) covered = covered || locate(z, gt.uncertainty, d.disk) != Where::Outside;
        for (const auto& c : r.clusters)
            for (const auto& s : c.region.squares)
                covered = covered || max_norm_distance(z, g.rect(s)) <= gt.uncertainty;
        if (!covered) bad.push_back("root " + z.to_string() + " is not covered");
    }
    return bad;
}

}  // namespace cisolate
