#pragma once

#include <cstdio>
#include <string>

#include "cisolate/io/report_json.hpp"

namespace cisolate {

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

/// Maps the query square onto [0, 1024]^2 with the imaginary axis pointing up.
struct Viewport {
    Dyadic x0, y1;
    std::int64_t log2w;

    double x(const Dyadic& v) const { return ((v - x0).mul_pow2(10 - log2w)).to_double(); }
    double y(const Dyadic& v) const { return ((y1 - v).mul_pow2(10 - log2w)).to_double(); }
    double len(const Dyadic& v) const { return v.mul_pow2(10 - log2w).to_double(); }
};

}  // namespace detail

/// Static picture of a report: query square, isolating disks 2 Delta_C
/// (filled) with their doubles (dashed), cluster squares (hatched).
/// Identical reports give identical bytes.
inline std::string render_svg(const ReportDocument& d) {
    using detail::fmt;
    const Grid g = d.grid();
    const detail::Viewport vp{g.origin.re, g.origin.im + Dyadic::pow2(d.query_log2_width), d.query_log2_width};
    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1024\" height=\"1024\" viewBox=\"-16 -16 1056 1056\">\n";
    s += "<style>\n"
         ".query{fill:none;stroke:#222;stroke-width:2}\n"
         ".disk{fill:#3a7bd5;fill-opacity:0.35;stroke:#1d4f91;stroke-width:1}\n"
         ".outer{fill:none;stroke:#1d4f91;stroke-width:1;stroke-dasharray:6 4}\n"
         ".marker{fill:#1d4f91}\n"
         ".cluster{fill:url(#hatch);stroke:#b03030;stroke-width:1}\n"
         "</style>\n";
    s += "<defs><pattern id=\"hatch\" width=\"8\" height=\"8\" patternUnits=\"userSpaceOnUse\" "
         "patternTransform=\"rotate(45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"#b03030\" "
         "stroke-width=\"2\"/></pattern></defs>\n";
    s += "<rect class=\"query\" x=\"0\" y=\"0\" width=\"1024\" height=\"1024\"/>\n";
    for (const auto& c : d.clusters)
        for (const auto& sq : c.region.squares) {
            const Rect r = g.rect(sq);
            s += "<rect class=\"cluster\" x=\"" + fmt(vp.x(r.x0)) + "\" y=\"" + fmt(vp.y(r.y1)) + "\" width=\"" +
                 fmt(vp.len(r.x1 - r.x0)) + "\" height=\"" + fmt(vp.len(r.y1 - r.y0)) + "\"/>\n";
        }
    for (const auto& x : d.disks) {
        const std::string cx = fmt(vp.x(x.disk.center.re)), cy = fmt(vp.y(x.disk.center.im));
        const double r = vp.len(x.disk.radius);
        s += "<circle class=\"outer\" cx=\"" + cx + "\" cy=\"" + cy + "\" r=\"" + fmt(2 * r) + "\"/>\n";
        s += "<circle class=\"disk\" cx=\"" + cx + "\" cy=\"" + cy + "\" r=\"" + fmt(r) + "\"/>\n";
        // keep sub-pixel disks visible
        if (r < 2) s += "<circle class=\"marker\" cx=\"" + cx + "\" cy=\"" + cy + "\" r=\"2\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace cisolate
