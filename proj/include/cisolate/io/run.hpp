#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "cisolate/io/bench.hpp"
#include "cisolate/io/poly_file.hpp"
#include "cisolate/io/report_json.hpp"
#include "cisolate/io/svg.hpp"
#include "cisolate/isolate/cisolate.hpp"

namespace cisolate {

enum ExitCode : int { kExitOk = 0, kExitInputError = 1, kExitPrecisionCap = 2 };

struct IsolateRequest {
    std::string input;
    bool all_roots = false;
    DyadicComplex center;
    std::int64_t log2_width = 0;
    bool newton = true;
    std::optional<std::int64_t> min_level;
    std::int64_t precision_cap = kDefaultPrecisionCap;
    std::optional<std::string> json_path;
    std::optional<std::string> svg_path;
    bool print_stats = false;
};

/// Query square centred at 0 of width 2^{Gamma+2}; it contains every root.
inline IsolatorConfig all_roots_config(const CoefficientOracle& o) {
    IsolatorConfig cfg;
    cfg.log2_width = root_magnitude_bound(o).Gamma() + 2;
    return cfg;
}

inline void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << data;
    if (!out) throw Error("failed writing '" + path + "'");
}

inline void print_stats(std::ostream& os, const IsolationStats& s) {
    os << "components_processed " << s.components_processed << "\n"
       << "squares_created " << s.squares_created << "\n"
       << "tstar_calls " << s.tstar_calls << "\n"
       << "newton_successes " << s.newton_successes << "\n"
       << "newton_failures " << s.newton_failures << "\n"
       << "max_precision " << s.max_precision << "\n"
       << "max_depth " << s.max_depth << "\n"
       << "longest_chain " << s.longest_chain << "\n";
}

/// Runs the isolator on an in-memory polynomial and returns the document.
inline ReportDocument isolate_document(const std::vector<RationalComplex>& coeffs, IsolatorConfig cfg,
                                       bool all_roots, EngineTrace* trace = nullptr) {
    CoefficientOracle o = normalize(coeffs);
    if (all_roots) {
        IsolatorConfig box = all_roots_config(o);
        cfg.center = box.center;
        cfg.log2_width = box.log2_width;
    }
    return make_document(o, cfg, cisolate(o, cfg, trace));
}

/// The `isolate` command. Nothing is written unless the run succeeds.
inline int run_isolate(const IsolateRequest& req, std::ostream& out, std::ostream& err) {
    try {
        auto coeffs = read_polynomial_file(req.input);
        IsolatorConfig cfg;
        cfg.center = req.center;
        cfg.log2_width = req.log2_width;
        cfg.newton_enabled = req.newton;
        cfg.min_level = req.min_level;
        cfg.precision_cap = req.precision_cap;
        ReportDocument doc = isolate_document(coeffs, cfg, req.all_roots);
        if (req.json_path) write_file(*req.json_path, dump_report(doc));
        if (req.svg_path) write_file(*req.svg_path, render_svg(doc));
        out << doc.disks.size() << " disks, " << doc.clusters.size() << " clusters\n";
        if (req.print_stats) print_stats(out, doc.stats);
        return kExitOk;
    } catch (const PrecisionCapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitPrecisionCap;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

struct BenchRequest {
    std::string family;  // mignotte | grid | random
    int n = 0;
    int param = 0;       // a for mignotte, tau for random
    std::string out_dir = ".";
    bool newton = true;
};

/// The `bench` command: writes <name>.poly (plus <name>.roots for grid),
/// isolates all roots into <name>.json and prints one stats row.
inline int run_bench(const BenchRequest& req, std::ostream& out, std::ostream& err) {
    try {
        BenchInstance b;
        if (req.family == "mignotte")
            b = mignotte(req.n, req.param);
        else if (req.family == "grid")
            b = grid_instance(req.n);
        else if (req.family == "random")
            b = random_instance(req.n, req.param);
        else
            throw Error("unknown family '" + req.family + "'");
        std::filesystem::create_directories(req.out_dir);
        const std::filesystem::path dir(req.out_dir);
        write_file((dir / (b.name + ".poly")).string(), format_polynomial(b.coeffs));
        if (b.roots) write_file((dir / (b.name + ".roots")).string(), format_roots(*b.roots));
        IsolatorConfig cfg;
        cfg.newton_enabled = req.newton;
        const auto t0 = std::chrono::steady_clock::now();
        ReportDocument doc = isolate_document(b.coeffs, cfg, true);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_file((dir / (b.name + ".json")).string(), dump_report(doc));
        char t[32];
        std::snprintf(t, sizeof t, "%.3f", secs);
        out << "instance degree disks clusters components squares newton max_precision longest_chain seconds\n"
            << b.name << " " << doc.degree << " " << doc.disks.size() << " " << doc.clusters.size() << " "
            << doc.stats.components_processed << " " << doc.stats.squares_created << " "
            << doc.stats.newton_successes << " " << doc.stats.max_precision << " " << doc.stats.longest_chain << " "
            << t << "\n";
        return kExitOk;
    } catch (const PrecisionCapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitPrecisionCap;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

}  // namespace cisolate
