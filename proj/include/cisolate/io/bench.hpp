#pragma once

#include <gmpxx.h>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cisolate/arith/parse.hpp"
#include "cisolate/io/poly_file.hpp"
#include "cisolate/poly/expand.hpp"

namespace cisolate {

struct BenchInstance {
    std::string name;
    std::vector<RationalComplex> coeffs;                // a_0..a_n
    std::optional<std::vector<DyadicComplex>> roots;    // known exactly for grid instances
};

/// x^n - 2 (2^a x - 1)^2. Two roots cluster near 2^-a at distance about
/// 2^{-a(n/2+1)}. This particular form is our own choice of the family.
inline BenchInstance mignotte(int n, int a) {
    if (n < 3) throw DegenerateDegree("mignotte needs n >= 3");
    if (a < 0) throw Error("mignotte needs a >= 0");
    BenchInstance b;
    b.name = "mignotte_" + std::to_string(n) + "_" + std::to_string(a);
    b.coeffs.assign(n + 1, RationalComplex(0));
    const mpz_class A = detail::shl(mpz_class(1), a);
    b.coeffs[n].re = 1;
    b.coeffs[2].re = -2 * A * A;
    b.coeffs[1].re = 4 * A;
    b.coeffs[0].re = -2;
    return b;
}

/// n distinct Gaussian integers (2i - s + 1, 2j - s + 1), s = ceil(sqrt n),
/// taken in (i, j) order.
inline std::vector<DyadicComplex> grid_points(int n) {
    int s = 1;
    while (s * s < n) ++s;
    std::vector<DyadicComplex> pts;
    for (int i = 0; i < s && static_cast<int>(pts.size()) < n; ++i)
        for (int j = 0; j < s && static_cast<int>(pts.size()) < n; ++j)
            pts.push_back({Dyadic(2 * i - s + 1), Dyadic(2 * j - s + 1)});
    return pts;
}

inline BenchInstance grid_instance(int n) {
    if (n < 2) throw DegenerateDegree("grid needs n >= 2");
    BenchInstance b;
    b.name = "grid_" + std::to_string(n);
    b.roots = grid_points(n);
    b.coeffs = expand_roots(*b.roots);
    return b;
}

/// Integer coefficients uniform in [-2^tau, 2^tau]; the leading one is redrawn
/// until non-zero. Fixed seed, so the instance is reproducible.
inline BenchInstance random_instance(int n, int tau, unsigned long seed = 1) {
    if (n < 2) throw DegenerateDegree("random needs n >= 2");
    if (tau < 0) throw Error("random needs tau >= 0");
    BenchInstance b;
    b.name = "random_" + std::to_string(n) + "_" + std::to_string(tau);
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(seed);
    const mpz_class bound = detail::shl(mpz_class(1), tau);
    auto draw = [&] { return mpz_class(rng.get_z_range(2 * bound + 1) - bound); };
    for (int k = 0; k <= n; ++k) b.coeffs.emplace_back(mpq_class(draw()));
    while (b.coeffs[n].is_zero()) b.coeffs[n] = RationalComplex(mpq_class(draw()));
    return b;
}

/// Sidecar format: `roots <count>` then one `RE IM` line per root.
inline std::string format_roots(const std::vector<DyadicComplex>& roots) {
    std::string out = "roots " + std::to_string(roots.size()) + "\n";
    for (const auto& z : roots) out += z.re.to_string() + " " + z.im.to_string() + "\n";
    return out;
}

inline std::vector<DyadicComplex> parse_roots(std::string_view text) {
    std::vector<DyadicComplex> out;
    long count = -1;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto toks = detail::tokenize(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++lineno;
        if (toks.empty()) continue;
        if (count < 0) {
            if (toks.size() != 2 || toks[0].text != "roots") throw ParseError("expected 'roots <count>'", lineno, 1);
            count = detail::parse_integer(toks[1].text).get_si();
            continue;
        }
        if (toks.size() != 2) throw ParseError("expected 'RE IM'", lineno, toks[0].column);
        try {
            out.push_back({parse_dyadic(toks[0].text), parse_dyadic(toks[1].text)});
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno, toks[0].column);
        }
    }
    if (count < 0 || static_cast<long>(out.size()) != count) throw ParseError("root count mismatch");
    return out;
}

}  // namespace cisolate
