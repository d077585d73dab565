// Command-line front end: `cisolate isolate ...` and `cisolate bench ...`.
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cisolate/io/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Certified complex root isolation"};
    app.require_subcommand(1);

    cisolate::IsolateRequest iso;
    std::vector<std::string> square;
    long long min_level = 0;
    long long cap = cisolate::kDefaultPrecisionCap;
    bool no_newton = false;
    std::string json, svg;

    auto* isolate = app.add_subcommand("isolate", "isolate the roots of a polynomial file");
    isolate->add_option("file", iso.input, "polynomial file: 'n <degree>' then a_0..a_n as 'RE IM'")->required();
    auto* all = isolate->add_flag("--all-roots", iso.all_roots, "query square of width 2^(Gamma+2) around 0");
    auto* sq = isolate->add_option("--square", square, "query square: centre RE IM and log2 of its width")
                   ->expected(3);
    all->excludes(sq);
    isolate->add_flag("--no-newton", no_newton, "bisection only");
    auto* minw = isolate->add_option("--min-width-log2", min_level, "emit clusters once squares reach width 2^L");
    isolate->add_option("--precision-cap", cap, "largest oracle precision in bits")
        ->envname("CISOLATE_PRECISION_CAP")
        ->check(CLI::PositiveNumber);
    isolate->add_option("--json", json, "write the report here");
    isolate->add_option("--svg", svg, "write a picture here");
    isolate->add_flag("--stats", iso.print_stats, "print counters");

    cisolate::BenchRequest bench;
    std::vector<std::string> instance;
    bool bench_no_newton = false;
    auto* bc = app.add_subcommand(
        "bench",
        "generate and solve a benchmark instance:\n"
        "  mignotte N A   x^N - 2(2^A x - 1)^2 (this form of the family is our own choice)\n"
        "  grid N         product over N Gaussian lattice points, roots written to a sidecar\n"
        "  random N TAU   integer coefficients uniform in [-2^TAU, 2^TAU]");
    bc->add_option("instance", instance, "family and parameters")->required()->expected(2, 3);
    bc->add_option("--out", bench.out_dir, "output directory");
    bc->add_flag("--no-newton", bench_no_newton, "bisection only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : cisolate::kExitInputError;
    }

    try {
        if (*isolate) {
            if (!iso.all_roots && square.empty()) {
                std::cerr << "error: give --all-roots or --square RE IM LOG2W\n";
                return cisolate::kExitInputError;
            }
            if (!square.empty()) {
                iso.center = {cisolate::parse_dyadic(square[0]), cisolate::parse_dyadic(square[1])};
                iso.log2_width = std::stoll(square[2]);
            }
            iso.newton = !no_newton;
            if (*minw) iso.min_level = min_level;
            iso.precision_cap = cap;
            if (!json.empty()) iso.json_path = json;
            if (!svg.empty()) iso.svg_path = svg;
            return cisolate::run_isolate(iso, std::cout, std::cerr);
        }
        bench.family = instance[0];
        const std::size_t want = bench.family == "grid" ? 2 : 3;
        if (instance.size() != want) {
            std::cerr << "error: wrong number of parameters for '" << bench.family << "'\n";
            return cisolate::kExitInputError;
        }
        bench.n = std::stoi(instance[1]);
        if (want == 3) bench.param = std::stoi(instance[2]);
        bench.newton = !bench_no_newton;
        return cisolate::run_bench(bench, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cisolate::kExitInputError;
    }
}
