// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cisolate/counting/graeffe.hpp"
#include "cisolate/counting/soft.hpp"
#include "cisolate/counting/tstar.hpp"
#include "cisolate/io/bench.hpp"
#include "cisolate/io/report_json.hpp"
#include "cisolate/io/run.hpp"
#include "cisolate/io/svg.hpp"
#include "cisolate/verify/audit.hpp"
#include "cisolate/verify/ground_truth.hpp"
#include "cisolate/verify/reference.hpp"
#include "support.hpp"

using namespace cisolate;
namespace ts = testing_support;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> problems;

    void fail(const std::string& why) {
        pass = false;
        if (problems.size() < 5) problems.push_back(why);
    }
};

Dyadic dyadic(long m, std::int64_t e) { return Dyadic(mpz_class(m), e); }

long uniform(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

// One engine run with everything the later criteria need.
struct Run {
    std::string name;
    std::string json;
    std::string svg;
    ReportDocument doc;
    EngineTrace trace;
    IsolatorConfig cfg;
};

Run run_all_roots(const std::string& name, const std::vector<RationalComplex>& coeffs, bool newton) {
    Run r;
    r.name = name;
    IsolatorConfig cfg;
    cfg.newton_enabled = newton;
    r.doc = isolate_document(coeffs, cfg, true, &r.trace);
    r.cfg = cfg;
    r.cfg.center = r.doc.query_center;
    r.cfg.log2_width = r.doc.query_log2_width;
    r.json = dump_report(r.doc);
    r.svg = render_svg(r.doc);
    return r;
}

IsolationReport report_of(const ReportDocument& d) { return {d.disks, d.clusters, d.stats}; }

// ---- criterion 1 ----------------------------------------------------------

std::vector<DyadicComplex> separated_roots(std::mt19937_64& rng, int n) {
    const Dyadic min_sep2 = Dyadic::pow2(-16);
    std::vector<DyadicComplex> roots;
    auto coord = [&] { return dyadic(uniform(rng, -8L << 12, 8L << 12), -12); };
    auto ok = [&](const DyadicComplex& z) {
        if (z.re.abs() > Dyadic(8) || z.im.abs() > Dyadic(8)) return false;
        for (const auto& w : roots)
            if ((z - w).norm2() < min_sep2) return false;
        return true;
    };
    while (static_cast<int>(roots.size()) < n) {
        DyadicComplex z{coord(), coord()};
        if (!ok(z)) continue;
        roots.push_back(z);
        // a close partner at distance 2^-8 .. 2^-6 now and then
        if (static_cast<int>(roots.size()) < n && rng() % 3 == 0) {
            DyadicComplex w{z.re + dyadic(uniform(rng, -16, 16), -12), z.im + dyadic(uniform(rng, -16, 16), -12)};
            if (ok(w)) roots.push_back(w);
        }
    }
    return roots;
}

struct Criterion1Data {
    std::vector<Run> runs;
    std::vector<GroundTruth> truth;
};

Outcome criterion1(Criterion1Data& data) {
    Outcome out;
    std::mt19937_64 rng(20260101);
    const auto t0 = Clock::now();
    const int degrees[3] = {4, 8, 16};
    for (int i = 0; i < 100; ++i) {
        const int n = degrees[i % 3];
        GroundTruth gt = GroundTruth::exact(separated_roots(rng, n));
        Run r = run_all_roots("instance " + std::to_string(i), gt.polynomial(), true);
        if (static_cast<int>(r.doc.disks.size()) != n)
            out.fail(r.name + ": " + std::to_string(r.doc.disks.size()) + " disks for degree " + std::to_string(n));
        if (!r.doc.clusters.empty()) out.fail(r.name + ": unexpected clusters");
        for (const auto& v : audit_report(report_of(r.doc), r.cfg, gt)) out.fail(r.name + ": " + v);
        data.runs.push_back(std::move(r));
        data.truth.push_back(std::move(gt));
    }
    const double secs = seconds_since(t0);
    if (secs > 300) out.fail("took " + std::to_string(secs) + " s");
    out.detail = "100 instances, n in {4, 8, 16}";
    return out;
}

// ---- criterion 2 ----------------------------------------------------------

Outcome criterion2() {
    Outcome out;
    std::mt19937_64 rng(20260202);
    int pairs = 0, decided = 0, nonzero = 0;
    while (pairs < 10000) {
        const int n = static_cast<int>(uniform(rng, 2, 12));
        std::vector<DyadicComplex> roots;
        while (static_cast<int>(roots.size()) < n) {
            if (!roots.empty() && rng() % 4 == 0) {
                // clustered or repeated
                const DyadicComplex& z = roots[rng() % roots.size()];
                const int e = static_cast<int>(uniform(rng, 4, 20));
                roots.push_back(rng() % 3 == 0 ? z : z + ts::random_point(rng, 4, e));
            } else {
                roots.push_back(ts::random_point(rng, 10, static_cast<int>(uniform(rng, 4, 10))));
            }
        }
        const GroundTruth gt = GroundTruth::exact(roots);
        const CoefficientOracle o = normalize(gt.polynomial());
        for (int j = 0; j < 10 && pairs < 10000; ++j) {
            DyadicComplex c = rng() % 2 ? roots[rng() % roots.size()] + ts::random_point(rng, 6, 8)
                                        : ts::random_point(rng, 10, 7);
            const Dyadic r = dyadic(uniform(rng, 1, 63), -static_cast<int>(uniform(rng, 2, 14)));
            const Disk d(c, r);
            if (count_bracket(gt, d).on_boundary) continue;
            ++pairs;
            const CountResult res = t_star(o, d);
            if (res.k < 0) continue;
            ++decided;
            nonzero += res.k > 0;
            const int truth = count_roots_in_disk(gt, d);
            if (res.k != truth)
                out.fail("t_star " + std::to_string(res.k) + " vs " + std::to_string(truth) + " on " +
                         d.center.to_string() + " r " + d.radius.to_string());
        }
    }
    out.detail = std::to_string(pairs) + " pairs, " + std::to_string(decided) + " decided (" +
                 std::to_string(nonzero) + " with k > 0)";
    if (decided < pairs / 4) out.fail("too few decided answers to be meaningful");
    return out;
}

// ---- criterion 3 ----------------------------------------------------------

Outcome criterion3() {
    Outcome out;
    std::mt19937_64 rng(20260303);
    // 0.9 times an under-approximation of 2 sqrt(2) / 3, and 1.1 * 4/3
    const mpq_class inner_f(9 * 9428, 100000);
    const mpq_class outer_f(22, 15);
    std::map<int, int> by_k;
    for (int t = 0; t < 1000; ++t) {
        const int n = static_cast<int>(uniform(rng, 2, 12));
        const int k = static_cast<int>(uniform(rng, 0, n));
        const int e = static_cast<int>(uniform(rng, -10, 4));
        const Dyadic r = dyadic(uniform(rng, 16, 31), e - 4);
        const DyadicComplex c = ts::random_point(rng, 12, 8);
        const mpq_class rq = to_rational(r);
        const mpq_class in2 = inner_f * inner_f * rq * rq, out2 = outer_f * outer_f * rq * rq;
        std::vector<DyadicComplex> roots;
        // offsets on a 2^{e-16} grid within [-2^{e+2}, 2^{e+2}]^2, or further out
        auto offset = [&](int spread) {
            return DyadicComplex{dyadic(uniform(rng, -(1L << spread), 1L << spread), e - 16),
                                 dyadic(uniform(rng, -(1L << spread), 1L << spread), e - 16)};
        };
        while (static_cast<int>(roots.size()) < k) {
            DyadicComplex off = offset(17);
            if (to_rational(off.norm2()) <= in2) roots.push_back(c + off);
        }
        while (static_cast<int>(roots.size()) < n) {
            DyadicComplex off = offset(rng() % 2 ? 18 : 22);
            if (to_rational(off.norm2()) >= out2) roots.push_back(c + off);
        }
        const CountResult res = t_star(normalize(expand_roots(roots)), Disk(c, r));
        ++by_k[k];
        if (res.k != k)
            out.fail("k = " + std::to_string(k) + ", n = " + std::to_string(n) + ": t_star returned " +
                     std::to_string(res.k));
    }
    out.detail = "1000 disks, k from 0 to " + std::to_string(by_k.rbegin()->first);
    return out;
}

// ---- criterion 4 ----------------------------------------------------------

// |F|_inf^2 over exact coefficients
mpq_class norm_inf2(const ts::QPoly& p) {
    mpq_class m = 0;
    for (const auto& c : p) m = std::max(m, ts::norm2(c));
    return m;
}

// (-1)^n F(x) F(-x), read off at even powers
ts::QPoly first_iterate(const ts::QPoly& f) {
    const std::size_t n = f.size() - 1;
    ts::QPoly neg = f;
    for (std::size_t k = 1; k < neg.size(); k += 2) neg[k] = {-neg[k].re, -neg[k].im};
    ts::QPoly prod = ts::mul(f, neg);
    ts::QPoly g;
    for (std::size_t j = 0; j <= n; ++j) {
        ts::Q c = prod[2 * j];
        if (n % 2) c = {-c.re, -c.im};
        g.push_back(c);
    }
    return g;
}

Outcome criterion4() {
    Outcome out;
    std::mt19937_64 rng(20260404);
    for (int t = 0; t < 1000; ++t) {
        const int n = static_cast<int>(uniform(rng, 1, 32));
        std::vector<DyadicComplex> coeffs;
        switch (t % 3) {
            case 0:  // dense random, assorted scales
                for (int k = 0; k <= n; ++k) coeffs.push_back(ts::random_point(rng, 20, static_cast<int>(uniform(rng, 0, 30))));
                break;
            case 1:  // sparse
                coeffs.assign(n + 1, DyadicComplex{});
                for (int k = 0; k <= n; ++k)
                    if (rng() % 4 == 0) coeffs[k] = ts::random_point(rng, 8, 4);
                break;
            default: {  // from roots, the tight end of the lower bound
                std::vector<DyadicComplex> roots;
                for (int k = 0; k < n; ++k) roots.push_back(ts::random_point(rng, 6, static_cast<int>(uniform(rng, 3, 8))));
                for (const auto& c : expand_roots(roots))
                    coeffs.push_back({dyadic_from_rational(c.re), dyadic_from_rational(c.im)});
            }
        }
        if (coeffs.back().re.is_zero() && coeffs.back().im.is_zero()) coeffs.back() = {Dyadic(1), Dyadic()};
        ts::QPoly f;
        for (const auto& c : coeffs) f.push_back(ts::q(c));

        const ts::QPoly g = first_iterate(f);
        // the library's exact step must agree with the independent product
        const auto balls = graeffe_step(BallPoly::exact(coeffs)).balls();
        bool same = balls.size() == g.size();
        for (std::size_t j = 0; same && j < g.size(); ++j)
            same = balls[j].rad.is_zero() && ts::eq(ts::q(balls[j].mid), g[j]);
        if (!same) out.fail("graeffe_step differs from F(x)F(-x) at n = " + std::to_string(n));

        const mpq_class f2 = norm_inf2(f), g2 = norm_inf2(g);
        const mpq_class m = std::max(mpq_class(1), f2);
        const mpq_class nn = mpq_class(n) * n;
        if (g2 > nn * nn * m * m) out.fail("upper bound fails at n = " + std::to_string(n));
        mpq_class lower = f2 * f2;
        mpq_div_2exp(lower.get_mpq_t(), lower.get_mpq_t(), static_cast<mp_bitcnt_t>(8 * n));
        if (g2 < lower) out.fail("lower bound fails at n = " + std::to_string(n));
    }
    out.detail = "1000 polynomials, n <= 32";
    return out;
}

// ---- criterion 5 ----------------------------------------------------------

// ceil(max(1, log2 x)) for x > 0
std::int64_t LOG(const mpq_class& x) {
    if (x <= 2) return 1;
    std::int64_t e = 1;
    mpq_class p = 2;
    while (p < x) {
        p *= 2;
        ++e;
    }
    return e;
}

Outcome criterion5() {
    Outcome out;
    std::mt19937_64 rng(20260505);
    std::int64_t worst_slack = 1 << 30;
    for (int t = 0; t < 1000; ++t) {
        auto magnitude = [&] {
            if (rng() % 16 == 0) return Dyadic();
            return dyadic(uniform(rng, 1, (1L << 30) - 1), -static_cast<int>(uniform(rng, 0, 90)));
        };
        Dyadic a = magnitude(), b = magnitude();
        if (rng() % 4 == 0) b = a + dyadic(uniform(rng, -8, 8), -static_cast<int>(uniform(rng, 20, 80)));
        if (b.sign() < 0) b = Dyadic();
        if (a.is_zero() && b.is_zero()) a = Dyadic(1);
        // sources are within 2^-L: exact, truncated or pushed towards the other side
        const int mode = static_cast<int>(t % 4);
        auto source = [mode](Dyadic v, int dir) -> RefinableMagnitude {
            return [v, mode, dir](std::int64_t L) {
                switch (mode) {
                    case 0: return v;
                    case 1: return Dyadic(v.floor_scaled(L), -L);
                    case 2: return v + Dyadic::pow2(-L) * Dyadic(dir);
                    default: return v - Dyadic::pow2(-L - 1) * Dyadic(dir);
                }
            };
        };
        const int dir = a > b ? -1 : 1;
        const SoftCompareResult r = soft_compare(source(a, dir), source(b, -dir));
        const mpq_class mx = to_rational(max(a, b));
        const std::int64_t L0 = 2 * (LOG(1 / mx) + 4);
        worst_slack = std::min(worst_slack, L0 - r.precision);
        if (r.precision > L0)
            out.fail("stopped at L = " + std::to_string(r.precision) + " > L0 = " + std::to_string(L0) + " for " +
                     a.to_string() + " vs " + b.to_string());
        // the answer itself must also be right
        const bool truthful = r.outcome == SoftOutcome::True        ? a > b
                              : r.outcome == SoftOutcome::False     ? a < b
                                                                    : a * Dyadic(2) <= b * Dyadic(3) && b * Dyadic(2) <= a * Dyadic(3);
        if (!truthful) out.fail("wrong outcome for " + a.to_string() + " vs " + b.to_string());
    }
    out.detail = "1000 pairs, smallest L0 - L = " + std::to_string(worst_slack);
    return out;
}

// ---- criterion 7 ----------------------------------------------------------

struct MignotteRun {
    int a;
    Run bisect, newton;
    GroundTruth truth;
};

Outcome criterion7(std::vector<MignotteRun>& runs) {
    Outcome out;
    const auto t0 = Clock::now();
    for (int a : {16, 32, 64}) {
        BenchInstance b = mignotte(12, a);
        MignotteRun m;
        m.a = a;
        m.bisect = run_all_roots(b.name + " without Newton", b.coeffs, false);
        m.newton = run_all_roots(b.name + " with Newton", b.coeffs, true);
        const std::int64_t bits = 7 * a + 64;
        m.truth = GroundTruth{reference_roots(b.coeffs, bits), Dyadic::pow2(-bits)};
        for (const Run* r : {&m.bisect, &m.newton}) {
            if (r->doc.disks.size() != 12) out.fail(r->name + ": " + std::to_string(r->doc.disks.size()) + " disks");
            for (const auto& v : audit_report(report_of(r->doc), r->cfg, m.truth)) out.fail(r->name + ": " + v);
        }
        runs.push_back(std::move(m));
    }
    std::ostringstream d;
    d << "longest chain bisection/newton:";
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto cb = runs[i].bisect.doc.stats.longest_chain, cn = runs[i].newton.doc.stats.longest_chain;
        d << " a=" << runs[i].a << " " << cb << "/" << cn;
        if (i == 0) continue;
        const auto pb = runs[i - 1].bisect.doc.stats.longest_chain, pn = runs[i - 1].newton.doc.stats.longest_chain;
        if (5 * cb < 8 * pb) out.fail("bisection chain grew by less than 1.6x at a = " + std::to_string(runs[i].a));
        if (cn > pn + 8) out.fail("newton chain grew by more than 8 at a = " + std::to_string(runs[i].a));
    }
    const auto& last = runs.back();
    if (2 * last.newton.doc.stats.longest_chain > last.bisect.doc.stats.longest_chain)
        out.fail("newton chain is more than half the bisection chain at a = 64");
    const double secs = seconds_since(t0);
    if (secs > 600) out.fail("took " + std::to_string(secs) + " s");
    out.detail = d.str();
    return out;
}

// ---- criterion 6 ----------------------------------------------------------

Outcome criterion6(const Criterion1Data& c1, const std::vector<MignotteRun>& c7) {
    Outcome out;
    std::size_t states = 0, runs = 0;
    auto audit = [&](const Run& r, const GroundTruth& gt) {
        ++runs;
        for (const auto& ev : r.trace.events) states += std::holds_alternative<TraceState>(ev);
        for (const auto& v : audit_trace(r.trace, gt)) out.fail(r.name + ": " + v);
    };
    for (std::size_t i = 0; i < c1.runs.size(); ++i) audit(c1.runs[i], c1.truth[i]);
    for (const auto& m : c7) {
        audit(m.bisect, m.truth);
        audit(m.newton, m.truth);
    }
    out.detail = std::to_string(runs) + " runs, " + std::to_string(states) + " queue states audited";
    return out;
}

// ---- criterion 8 ----------------------------------------------------------

Outcome criterion8() {
    Outcome out;
    const auto t0 = Clock::now();
    const DyadicComplex quarter{dyadic(1, -2), Dyadic()};
    const std::vector<RationalComplex> coeffs = expand_roots(std::vector<DyadicComplex>{quarter, quarter});
    IsolatorConfig cfg = all_roots_config(normalize(coeffs));
    cfg.min_level = cfg.log2_width - 40;
    const ReportDocument doc = isolate_document(coeffs, cfg, false);
    if (!doc.disks.empty()) out.fail(std::to_string(doc.disks.size()) + " disks reported");
    if (doc.clusters.size() != 1) {
        out.fail(std::to_string(doc.clusters.size()) + " clusters");
    } else {
        if (doc.clusters[0].k != 2) out.fail("cluster k = " + std::to_string(doc.clusters[0].k));
        if (!point_in_component(cfg.grid(), quarter, doc.clusters[0].region)) out.fail("cluster misses 1/4");
    }
    const double secs = seconds_since(t0);
    if (secs > 30) out.fail("took " + std::to_string(secs) + " s");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%zu cluster(s), k = %d", doc.clusters.size(),
                  doc.clusters.empty() ? 0 : doc.clusters[0].k);
    out.detail = buf;
    return out;
}

// ---- criterion 9 ----------------------------------------------------------

Outcome criterion9(const Criterion1Data& c1, const std::vector<MignotteRun>& c7) {
    Outcome out;
    int compared = 0;
    auto check = [&](const Run& first, const std::vector<RationalComplex>& coeffs, bool newton) {
        const Run again = run_all_roots(first.name, coeffs, newton);
        if (again.json != first.json) out.fail(first.name + ": JSON differs");
        if (again.svg != first.svg) out.fail(first.name + ": SVG differs");
        if (again.trace != first.trace) out.fail(first.name + ": trace differs");
        ++compared;
    };
    for (std::size_t i = 0; i < c1.runs.size(); ++i) check(c1.runs[i], c1.truth[i].polynomial(), true);
    for (const auto& m : c7) {
        const auto coeffs = mignotte(12, m.a).coeffs;
        check(m.bisect, coeffs, false);
        check(m.newton, coeffs, true);
    }
    out.detail = std::to_string(compared) + " runs repeated";
    return out;
}

}  // namespace

int main() {
    // criterion 6 audits the runs of 1 and 7, so 7 runs first; lines are
    // printed in criterion order at the end
    std::map<int, Outcome> results;
    auto run = [&](int id, const std::function<Outcome()>& f) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        char secs[32];
        std::snprintf(secs, sizeof secs, " [%.1f s]", seconds_since(t0));
        o.detail += secs;
        std::cerr << "criterion " << id << " done" << secs << "\n";
        results[id] = std::move(o);
    };

    Criterion1Data c1;
    std::vector<MignotteRun> c7;
    run(1, [&] { return criterion1(c1); });
    run(2, criterion2);
    run(3, criterion3);
    run(4, criterion4);
    run(5, criterion5);
    run(7, [&] { return criterion7(c7); });
    run(6, [&] { return criterion6(c1, c7); });
    run(8, criterion8);
    run(9, [&] { return criterion9(c1, c7); });

    int failed = 0;
    for (const auto& [id, o] : results) {
        std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << ")\n";
        for (const auto& p : o.problems) std::cout << "    " << p << "\n";
        failed += !o.pass;
    }
    std::cout << (failed ? "acceptance: FAIL" : "acceptance: PASS") << "\n";
    return failed ? 1 : 0;
}
