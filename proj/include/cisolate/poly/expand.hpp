#pragma once

#include <vector>

#include "cisolate/poly/oracle.hpp"

namespace cisolate {

/// Coefficients a_0..a_n of prod (x - z_i), exactly.
inline std::vector<RationalComplex> expand_roots(const std::vector<RationalComplex>& roots) {
    std::vector<RationalComplex> p{RationalComplex(1)};
    for (const auto& z : roots) {
        std::vector<RationalComplex> q(p.size() + 1, RationalComplex(0));
        for (std::size_t k = 0; k < p.size(); ++k) {
            q[k + 1].re += p[k].re;
            q[k + 1].im += p[k].im;
            q[k].re -= p[k].re * z.re - p[k].im * z.im;
            q[k].im -= p[k].re * z.im + p[k].im * z.re;
        }
        p = std::move(q);
    }
    return p;
}

inline std::vector<RationalComplex> expand_roots(const std::vector<DyadicComplex>& roots) {
    return expand_roots(std::vector<RationalComplex>(roots.begin(), roots.end()));
}

}  // namespace cisolate
