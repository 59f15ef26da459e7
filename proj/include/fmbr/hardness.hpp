#pragma once

// Exact cover by 3-sets and its reduction to merging with reordering.

#include "fmbr/align.hpp"
#include "fmbr/ast.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fmbr {

struct X3CInstance {
    std::size_t n = 0;                                // universe {1..3n}
    std::vector<std::array<std::uint32_t, 3>> sets;   // elements in 1..3n
    std::size_t m() const { return sets.size(); }
    friend bool operator==(const X3CInstance&, const X3CInstance&) = default;
};

struct Cover {
    std::vector<std::size_t> indices;  // 1-based set indices
};

// Throws std::invalid_argument unless n >= 1, m > n and every set has three
// distinct elements of the universe.
void validate_x3c(const X3CInstance& inst);

struct X3CReduction {
    Program p1, p2;
    std::shared_ptr<const ScoringFn> delta;
    std::int64_t threshold = 0;  // 3n + 2m + 1
};

X3CReduction reduce_x3c(const X3CInstance& inst);

inline constexpr std::uint64_t kDefaultCoverCap = 100'000;

// Some exact cover, or nullopt. Throws ResourceCapExceeded when C(m, n) > cap.
std::optional<Cover> solve_x3c_bruteforce(const X3CInstance& inst, std::uint64_t cap = kDefaultCoverCap);

// Throws std::out_of_range for an index outside 1..m.
bool verify_cover(const X3CInstance& inst, const Cover& c);

// Deterministic for (n, m, seed, planted). A planted instance has an exact
// cover hidden among its sets.
X3CInstance gen_random_x3c(std::size_t n, std::size_t m, std::uint64_t seed, bool planted = false);

// "n m" followed by m lines of three indices.
X3CInstance parse_x3c(const std::string& text);
std::string write_x3c(const X3CInstance& inst);

// One representative per isomorphism class (relabelling the universe,
// reordering the family) of families of m 3-sets over {1..3n}; sets may repeat.
std::vector<X3CInstance> enumerate_x3c_families(std::size_t n, std::size_t m);

}  // namespace fmbr
