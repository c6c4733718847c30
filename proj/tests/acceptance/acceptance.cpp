// Prints one PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "rdper/cli_report.hpp"

int main(int argc, char** argv)
{
    const unsigned seed = argc > 1 ? static_cast<unsigned>(std::strtoul(argv[1], nullptr, 10)) : 7;
    bool all = true;
    for (int id = 1; id <= rdper::criterion_count; ++id)
    {
        const auto r = rdper::run_criterion(id, seed);
        all = all && r.pass;
        std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << r.title << " (" << r.detail
                  << ", " << std::fixed << std::setprecision(2) << r.runtime_s << " s)" << std::endl;
    }
    return all ? 0 : 1;
}
