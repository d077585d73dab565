#pragma once

#include <gmpxx.h>

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cisolate/arith/parse.hpp"
#include "cisolate/error.hpp"
#include "cisolate/poly/oracle.hpp"

namespace cisolate {

namespace detail {

struct Token {
    std::string_view text;
    int column = 0;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size() || line[i] == '#') break;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != '#') ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

inline mpq_class parse_at(const Token& t, int line) {
    try {
        return parse_rational(t.text);
    } catch (const ParseError& e) {
        throw ParseError(e.what(), line, t.column);
    }
}

}  // namespace detail

/// Parses the text format
///   n <degree>
///   RE IM        (a_0 .. a_n, one per line)
/// Blank lines and `#` comments are ignored.
inline std::vector<RationalComplex> parse_polynomial(std::string_view text) {
    std::vector<RationalComplex> coeffs;
    long degree = -1;
    int lineno = 0;
    int last = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        last = lineno;
        if (degree < 0) {
            if (toks[0].text != "n") throw ParseError("expected header 'n <degree>'", lineno, toks[0].column);
            if (toks.size() != 2) throw ParseError("expected header 'n <degree>'", lineno, toks[0].column);
            mpz_class d;
            try {
                d = detail::parse_integer(toks[1].text);
            } catch (const ParseError&) {
                throw ParseError("degree must be an integer", lineno, toks[1].column);
            }
            if (d < 1 || d > 1000000) throw ParseError("degree out of range", lineno, toks[1].column);
            degree = d.get_si();
            continue;
        }
        if (static_cast<long>(coeffs.size()) > degree)
            throw ParseError("more than n+1 coefficient lines", lineno, toks[0].column);
        if (toks.size() != 2) {
            const int col = toks.size() > 2 ? toks[2].column : static_cast<int>(line.size()) + 1;
            throw ParseError("expected two numbers 'RE IM'", lineno, col);
        }
        coeffs.push_back({detail::parse_at(toks[0], lineno), detail::parse_at(toks[1], lineno)});
    }
    if (degree < 0) throw ParseError("missing header 'n <degree>'", 1, 1);
    if (static_cast<long>(coeffs.size()) != degree + 1)
        throw ParseError("expected " + std::to_string(degree + 1) + " coefficient lines, found " +
                             std::to_string(coeffs.size()),
                         last, 1);
    return coeffs;
}

inline std::vector<RationalComplex> read_polynomial_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_polynomial(ss.str());
}

inline std::string format_polynomial(const std::vector<RationalComplex>& coeffs) {
    std::string out = "n " + std::to_string(coeffs.size() - 1) + "\n";
    for (const auto& c : coeffs) out += c.re.get_str() + " " + c.im.get_str() + "\n";
    return out;
}

}  // namespace cisolate
