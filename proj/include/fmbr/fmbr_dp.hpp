#pragma once

#include "fmbr/align.hpp"
#include "fmbr/ast.hpp"
#include "fmbr/brgraph.hpp"
#include "fmbr/funcmerg.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace fmbr {

struct DpStats {
    std::uint64_t states_visited = 0;
    // Distinct signatures seen at each node of either graph.
    std::vector<std::size_t> signatures_per_node1, signatures_per_node2;
    std::size_t distinct_signatures1 = 0, distinct_signatures2 = 0;
    // Signatures whose height differs from Dep(u)+1 (0 at the end).
    std::uint64_t height_violations = 0;
    // 2^(b1*d1) (|V1|+1) * 2^(b2*d2) (|V2|+1)
    long double state_bound = 0;
};

struct MergeWitness {
    Score score;
    Reordering pi1, pi2;
    Alignment alignment;
};

// Memoized search over pairs of traversal positions. Branching factors above
// 64 are rejected.
class FmbrSolver {
public:
    // `order` picks the side expanded first during value computation.
    FmbrSolver(const Program& p1, const Program& p2, const ScoringFn& delta,
               ExpandOrder order = ExpandOrder::first_program);
    ~FmbrSolver();
    FmbrSolver(const FmbrSolver&) = delete;
    FmbrSolver& operator=(const FmbrSolver&) = delete;

    Score value();
    // Optimal reorderings and alignment; where both sides have a pending
    // branch choice, P2's is decided first, lowest branch index first.
    MergeWitness witness();
    DpStats stats();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

Score fmbr_dp(const Program& p1, const Program& p2, const ScoringFn& delta);
MergeWitness fmbr_witness(const Program& p1, const Program& p2, const ScoringFn& delta);
DpStats dp_stats(const Program& p1, const Program& p2, const ScoringFn& delta);

}  // namespace fmbr
