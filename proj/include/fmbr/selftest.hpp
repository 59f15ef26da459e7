#pragma once

// Cross-checking suites shared by `fmbr selftest` and the acceptance runner.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace fmbr {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
    double limit_seconds = 0;  // 0: untimed
};

struct SelftestConfig {
    std::uint64_t seed = 1;
    std::size_t corpus_pairs = 500;
    std::size_t max_m_two = 5;  // exhaustive n = 2 families for m in 3..max_m_two
    std::size_t random_x3c = 50;
    std::size_t straight_pairs = 100;
    std::size_t self_programs = 100;
    std::size_t semiring_triples = 10000;

    static SelftestConfig quick(std::uint64_t seed);
    static SelftestConfig full(std::uint64_t seed);
};

// Criteria 1-10 in order. A criterion fails on any mismatch, exception or
// exceeded time limit.
std::vector<CriterionResult> run_selftest(const SelftestConfig& cfg, std::ostream* log = nullptr);

std::string format_result(const CriterionResult& r);

}  // namespace fmbr
