#pragma once

// Seeded random programs and scoring tables for the cross-checking suites.

#include "fmbr/align.hpp"
#include "fmbr/ast.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace fmbr {

using Rng = std::mt19937_64;

// Uniform integer in [lo, hi].
std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi);

struct ProgramShape {
    std::size_t max_instructions = 12;
    std::size_t max_branch = 3;
    std::size_t max_depth = 2;
    std::size_t alphabet = 4;
};

// "a", "b", ... for k <= 26, then "s26", "s27", ...
std::vector<std::string> alphabet_symbols(std::size_t k);

Program random_program(Rng& rng, const ProgramShape& shape);
Program random_straight_line(Rng& rng, std::size_t max_len, std::size_t alphabet);

// Every entry over alphabet + gap (except gap/gap) drawn from [lower, upper],
// with a small chance of -inf.
std::shared_ptr<const TableScoring> random_bounded_table(Rng& rng, std::size_t alphabet, std::int64_t lower = -1,
                                                         std::int64_t upper = 2);

struct CorpusPair {
    Program p1, p2;
    std::shared_ptr<const ScoringFn> delta;
    bool lcs_scoring = true;
};

// Pairs within `shape`, resampled until the product of reordering counts is
// at most max_product. Even-indexed pairs use LCS scoring, odd ones a random
// bounded table.
std::vector<CorpusPair> random_pairs(std::uint64_t seed, std::size_t count, const ProgramShape& shape = {},
                                     std::uint64_t max_product = 20000);

}  // namespace fmbr
