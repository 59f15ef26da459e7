#pragma once

#include "fmbr/align.hpp"
#include "fmbr/ast.hpp"

#include <cstdint>
#include <limits>
#include <set>
#include <utility>
#include <vector>

namespace fmbr {

using NodeId = std::uint32_t;
inline constexpr NodeId kBottom = std::numeric_limits<NodeId>::max();  // traversal finished

enum class EdgeKind : std::uint8_t { none, seq, exit };

// Branching graph of a program. Nodes are numbered in construction order,
// which visits Branch nodes before their children, so br nodes appear in the
// same preorder as construct ids.
struct BranchingGraph {
    struct Node {
        bool is_br = false;
        std::string label;              // instruction; empty for br nodes
        std::uint32_t dep = 0;
        NodeId br_id = 0;               // left node of the branch holding this node
        std::vector<NodeId> entries;    // left nodes of branches, in branch order (br only)
        NodeId next = kBottom;          // unique seq/exit successor; kBottom at `right`
        EdgeKind next_kind = EdgeKind::none;
        std::uint32_t exit_index = 0;   // 1-based index of br_id among next's branches (exit only)
        std::uint32_t construct = 0;    // construct id (br only)
    };

    std::vector<Node> nodes;
    NodeId left = 0;
    NodeId right = 0;
    std::vector<NodeId> construct_node;  // construct id -> br node

    std::size_t size() const { return nodes.size(); }
    const Node& operator[](NodeId u) const { return nodes[u]; }

    std::vector<std::pair<NodeId, NodeId>> seq_edges() const;
    std::vector<std::pair<NodeId, NodeId>> entry_edges() const;
    std::vector<std::pair<NodeId, NodeId>> exit_edges() const;

    std::size_t max_dep() const;
    std::size_t max_out_entries() const;

    // 1-based position of v among u's branch entries, 0 if v is not one.
    std::uint32_t branch_index(NodeId u, NodeId v) const;
};

BranchingGraph build_brgraph(const Program& p);

// Region(u): u plus every node reachable through entry edges of u and then
// entry/seq edges.
std::set<NodeId> region(const BranchingGraph& g, NodeId u);

class ResourceCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

struct EulerianPath {
    std::vector<NodeId> walk;  // nodes from left to right
    Reordering reordering;     // branch order taken at each construct
};

// Every Eulerian path from left to right, following the branch-choice
// traversal. Refuses when count_reorderings exceeds cap.
std::vector<EulerianPath> enumerate_eulerian_paths(const Program& p, std::uint64_t cap = kDefaultEnumerationCap);

struct EnumerationResult {
    std::set<Linearization> linearizations;
    std::uint64_t paths_explored = 0;
};

EnumerationResult enumerate_linearizations(const Program& p, std::uint64_t cap = kDefaultEnumerationCap);

// Reads the instruction labels along a node walk.
Linearization read_walk(const BranchingGraph& g, const std::vector<NodeId>& walk);

struct BruteForceResult {
    Score score;
    Reordering pi1, pi2;
    Alignment alignment;
};

// Max of seq_align over all pairs of linearizations; one witness per distinct
// string. Refuses when the product of reordering counts exceeds cap.
BruteForceResult fmbr_bruteforce_witness(const Program& p1, const Program& p2, const ScoringFn& delta,
                                         std::uint64_t cap = kDefaultEnumerationCap);
Score fmbr_bruteforce(const Program& p1, const Program& p2, const ScoringFn& delta,
                      std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace fmbr
