// Isolates the roots of x^3 - 2x + 1 inside the square of width 8 centred at 0.
#include <iostream>
#include <vector>

#include "cisolate/isolate/cisolate.hpp"

int main() {
    using cisolate::RationalComplex;
    std::vector<RationalComplex> coeffs{1, -2, 0, 1};  // a_0 .. a_3
    cisolate::CoefficientOracle oracle = cisolate::normalize(coeffs);

    cisolate::IsolatorConfig cfg;
    cfg.log2_width = 3;
    cisolate::IsolationReport report = cisolate::cisolate(oracle, cfg);

    for (const auto& d : report.disks)
        std::cout << "centre " << d.disk.center.to_string() << "  radius " << d.disk.radius.to_string() << "\n";
    std::cout << report.stats.tstar_calls << " counting tests\n";
}
