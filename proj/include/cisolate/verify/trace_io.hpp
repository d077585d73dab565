#pragma once

#include <sstream>
#include <string>
#include <type_traits>
#include <variant>

#include "json.hpp"

#include "cisolate/arith/parse.hpp"
#include "cisolate/io/report_json.hpp"
#include "cisolate/isolate/trace.hpp"

namespace cisolate {

namespace detail {

inline ojson component_json(const Component& c) {
    ojson sq = ojson::array();
    for (const auto& s : c.squares) sq.push_back({s.level, Dyadic(s.ix).to_string(), Dyadic(s.iy).to_string()});
    return sq;
}

inline Component component_from_json(const ojson& j) {
    Component c;
    for (const auto& s : j) {
        if (!s.is_array() || s.size() != 3) throw ParseError("trace: square must be [level, ix, iy]");
        c.squares.push_back({s[0].get<std::int64_t>(), integer_field(s[1], "ix"), integer_field(s[2], "iy")});
    }
    return c;
}

inline ojson disk_json(const Disk& d) {
    return {{"center", complex_json(d.center)}, {"radius", d.radius.to_string()}};
}

inline Disk disk_from_json(const ojson& j) {
    return {complex_field(j.at("center"), "center"), dyadic_field(j.at("radius"), "radius")};
}

}  // namespace detail

/// One JSON object per line; the first line carries the grid.
inline std::string write_trace(const EngineTrace& t) {
    using detail::ojson;
    std::string out;
    auto line = [&](const ojson& j) { out += j.dump() + "\n"; };
    line({{"event", "header"}, {"origin", detail::complex_json(t.grid.origin)}, {"level0", t.level0}});
    for (const auto& e : t.events)
        std::visit(
            [&](const auto& ev) {
                using T = std::decay_t<decltype(ev)>;
                if constexpr (std::is_same_v<T, TraceState>) {
                    ojson act = ojson::array();
                    for (const auto& a : ev.active)
                        act.push_back({{"log2n", a.log2n}, {"squares", detail::component_json(a.component)}});
                    line({{"event", "state"}, {"iteration", ev.iteration}, {"active", std::move(act)}});
                } else if constexpr (std::is_same_v<T, TraceTStar>) {
                    line({{"event", "tstar"}, {"disk", detail::disk_json(ev.disk)}, {"k", ev.k},
                          {"precision", ev.precision}});
                } else if constexpr (std::is_same_v<T, TraceNewton>) {
                    line({{"event", "newton"}, {"level", ev.level}, {"log2n", ev.log2n}, {"k", ev.k},
                          {"success", ev.success}, {"reason", ev.reason}});
                } else if constexpr (std::is_same_v<T, TraceReported>) {
                    line({{"event", "reported"}, {"disk", detail::disk_json(ev.disk)}});
                } else {
                    line({{"event", "cluster"}, {"squares", detail::component_json(ev.region)}, {"k", ev.k}});
                }
            },
            e);
    return out;
}

inline EngineTrace read_trace(const std::string& text) {
    using detail::ojson;
    EngineTrace t;
    std::istringstream in(text);
    std::string s;
    int lineno = 0;
    bool header = false;
    while (std::getline(in, s)) {
        ++lineno;
        if (s.empty()) continue;
        try {
            const ojson j = ojson::parse(s);
            const std::string ev = j.at("event").get<std::string>();
            if (!header) {
                if (ev != "header") throw ParseError("trace must start with a header");
                t.grid.origin = detail::complex_field(j.at("origin"), "origin");
                t.level0 = j.at("level0").get<std::int64_t>();
                header = true;
            } else if (ev == "state") {
                TraceState st;
                st.iteration = j.at("iteration").get<std::int64_t>();
                for (const auto& a : j.at("active"))
                    st.active.push_back({detail::component_from_json(a.at("squares")), a.at("log2n").get<std::int64_t>()});
                t.events.emplace_back(std::move(st));
            } else if (ev == "tstar") {
                t.events.emplace_back(TraceTStar{detail::disk_from_json(j.at("disk")), j.at("k").get<int>(),
                                                 j.at("precision").get<std::int64_t>()});
            } else if (ev == "newton") {
                t.events.emplace_back(TraceNewton{j.at("level").get<std::int64_t>(), j.at("log2n").get<std::int64_t>(),
                                                  j.at("k").get<int>(), j.at("success").get<bool>(),
                                                  j.at("reason").get<std::string>()});
            } else if (ev == "reported") {
                t.events.emplace_back(TraceReported{detail::disk_from_json(j.at("disk"))});
            } else if (ev == "cluster") {
                t.events.emplace_back(
                    TraceCluster{detail::component_from_json(j.at("squares")), j.at("k").get<int>()});
            } else {
                throw ParseError("unknown trace event '" + ev + "'");
            }
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno, 1);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("trace: ") + e.what(), lineno, 1);
        }
    }
    if (!header) throw ParseError("trace: missing header");
    return t;
}

}  // namespace cisolate
