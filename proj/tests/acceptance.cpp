// Full-scale run of the ten acceptance criteria; exit status 1 if any fails.

#include "fmbr/selftest.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    std::uint64_t seed = 1;
    if (argc > 1) seed = std::stoull(argv[1]);
    const auto results = fmbr::run_selftest(fmbr::SelftestConfig::full(seed), &std::cout);
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
