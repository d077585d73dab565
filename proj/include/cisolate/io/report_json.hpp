#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "cisolate/arith/parse.hpp"
#include "cisolate/isolate/cisolate.hpp"

namespace cisolate {

/// Everything a run writes out. Numbers are exact `m*2^e` strings.
struct ReportDocument {
    int degree = 0;
    bool normalized = true;
    std::int64_t scale_exponent = 0;  // input was multiplied by 2^scale_exponent
    DyadicComplex query_center;
    std::int64_t query_log2_width = 0;
    std::vector<IsolatedDisk> disks;
    std::vector<Cluster> clusters;
    IsolationStats stats;

    Grid grid() const {
        const Dyadic half = Dyadic::pow2(query_log2_width - 1);
        return {{query_center.re - half, query_center.im - half}};
    }

    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

inline ReportDocument make_document(const CoefficientOracle& o, const IsolatorConfig& cfg, IsolationReport r) {
    ReportDocument d;
    d.degree = o.degree();
    d.scale_exponent = o.scale_exponent();
    d.query_center = cfg.center;
    d.query_log2_width = cfg.log2_width;
    d.disks = std::move(r.disks);
    d.clusters = std::move(r.clusters);
    d.stats = r.stats;
    return d;
}

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson complex_json(const DyadicComplex& z) { return ojson::array({z.re.to_string(), z.im.to_string()}); }

inline Dyadic dyadic_field(const ojson& j, const char* what) {
    if (!j.is_string()) throw ParseError(std::string("report: ") + what + " must be a string");
    return parse_dyadic(j.get<std::string>());
}

inline DyadicComplex complex_field(const ojson& j, const char* what) {
    if (!j.is_array() || j.size() != 2) throw ParseError(std::string("report: ") + what + " must be [re, im]");
    return {dyadic_field(j[0], what), dyadic_field(j[1], what)};
}

inline mpz_class integer_field(const ojson& j, const char* what) {
    Dyadic d = dyadic_field(j, what);
    if (d.exponent() < 0) throw ParseError(std::string("report: ") + what + " must be an integer");
    return detail::shl(d.mantissa(), d.exponent());
}

#define CISOLATE_STATS_FIELDS(X)  \
    X(components_processed)       \
    X(squares_created)            \
    X(tstar_calls)                \
    X(newton_successes)           \
    X(newton_failures)            \
    X(max_precision)              \
    X(max_depth)                  \
    X(longest_chain)

}  // namespace detail

inline nlohmann::ordered_json to_json(const ReportDocument& d) {
    using detail::ojson;
    ojson j;
    j["degree"] = d.degree;
    j["normalized"] = d.normalized;
    j["scale_exponent"] = d.scale_exponent;
    j["query_square"] = {{"center", detail::complex_json(d.query_center)}, {"log2_width", d.query_log2_width}};
    ojson disks = ojson::array();
    for (const auto& x : d.disks)
        disks.push_back(
            {{"center", detail::complex_json(x.disk.center)}, {"radius", x.disk.radius.to_string()}, {"k", x.k}});
    j["disks"] = std::move(disks);
    ojson clusters = ojson::array();
    for (const auto& c : d.clusters) {
        ojson sq = ojson::array();
        for (const auto& s : c.region.squares)
            sq.push_back({{"level", s.level}, {"ix", Dyadic(s.ix).to_string()}, {"iy", Dyadic(s.iy).to_string()}});
        clusters.push_back({{"squares", std::move(sq)}, {"k", c.k}});
    }
    j["clusters"] = std::move(clusters);
    ojson st;
#define X(f) st[#f] = d.stats.f;
    CISOLATE_STATS_FIELDS(X)
#undef X
    j["stats"] = std::move(st);
    return j;
}

inline std::string dump_report(const ReportDocument& d) { return to_json(d).dump(2) + "\n"; }

inline ReportDocument report_from_json(const nlohmann::ordered_json& j) {
    ReportDocument d;
    try {
        d.degree = j.at("degree").get<int>();
        d.normalized = j.at("normalized").get<bool>();
        d.scale_exponent = j.at("scale_exponent").get<std::int64_t>();
        const auto& q = j.at("query_square");
        d.query_center = detail::complex_field(q.at("center"), "query center");
        d.query_log2_width = q.at("log2_width").get<std::int64_t>();
        for (const auto& x : j.at("disks")) {
            Disk disk(detail::complex_field(x.at("center"), "disk center"),
                      detail::dyadic_field(x.at("radius"), "disk radius"));
            d.disks.push_back({std::move(disk), x.at("k").get<int>()});
        }
        for (const auto& c : j.at("clusters")) {
            Cluster cl;
            for (const auto& s : c.at("squares"))
                cl.region.squares.push_back({s.at("level").get<std::int64_t>(), detail::integer_field(s.at("ix"), "ix"),
                                             detail::integer_field(s.at("iy"), "iy")});
            if (cl.region.squares.empty()) throw ParseError("report: empty cluster");
            cl.k = c.at("k").get<int>();
            d.clusters.push_back(std::move(cl));
        }
        const auto& st = j.at("stats");
#define X(f) d.stats.f = st.at(#f).get<std::int64_t>();
        CISOLATE_STATS_FIELDS(X)
#undef X
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
    return d;
}

inline ReportDocument parse_report(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
    return report_from_json(j);
}

}  // namespace cisolate
