#pragma once

// Transition structure shared by the memoized solver and the pushdown
// construction: from a pair of traversal positions, the weighted moves the
// simultaneous exploration may take.

#include "fmbr/align.hpp"
#include "fmbr/brgraph.hpp"
#include "fmbr/signature.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace fmbr {

struct Move {
    NodeId next = kBottom;     // node after the move (unchanged for keep)
    SigOp op = SigOp::keep;
    std::uint32_t branch = 0;  // entered branch (en) or exited branch (ex), 1-based
};

enum class StepKind : std::uint8_t { expand_first, expand_second, match, gap_second, gap_first };

struct Step {
    StepKind kind;
    Score weight;
    Move first;   // move in P1's graph
    Move second;  // move in P2's graph
};

// Which side's pending branch choice is expanded when both sides sit on br
// nodes. The value does not depend on it.
enum class ExpandOrder : std::uint8_t { first_program, second_program };

// delta over the labels of two graphs, looked up by node.
class PairScores {
public:
    PairScores(const BranchingGraph& g1, const BranchingGraph& g2, const ScoringFn& delta);

    Score match(NodeId u1, NodeId u2) const { return pair_[sym1_[u1] * width_ + sym2_[u2]]; }
    Score gap_second(NodeId u1) const { return del_[sym1_[u1]]; }  // delta(lab1, -)
    Score gap_first(NodeId u2) const { return ins_[sym2_[u2]]; }   // delta(-, lab2)

private:
    std::vector<std::uint32_t> sym1_, sym2_;
    std::size_t width_ = 0;
    std::vector<Score> pair_, del_, ins_;
};

// Moves out of u given the top record of its signature: every untraversed
// branch entry of a br node, else the unique seq/exit edge, else done.
template <class F>
void for_each_side_move(const BranchingGraph& g, NodeId u, std::uint64_t top, F&& f) {
    const auto& node = g[u];
    if (node.is_br) {
        bool any = false;
        for (std::uint32_t j = 1; j <= node.entries.size(); ++j) {
            if (!((top >> (j - 1)) & 1)) {
                any = true;
                f(Move{node.entries[j - 1], SigOp::en, j});
            }
        }
        if (any) return;
    }
    if (u == g.right) {
        f(Move{kBottom, SigOp::done, 0});
    } else if (node.next_kind == EdgeKind::seq) {
        f(Move{node.next, SigOp::seq, 0});
    } else {
        f(Move{node.next, SigOp::ex, node.exit_index});
    }
}

inline Move single_move(const BranchingGraph& g, NodeId u) {
    Move out;
    for_each_side_move(g, u, 0, [&](Move m) { out = m; });
    return out;
}

// Transitions out of (u1, u2) whose signatures have top records top1, top2.
// A side at kBottom must carry no record; its top value is ignored.
template <class F>
void for_each_step(const BranchingGraph& g1, NodeId u1, std::uint64_t top1, const BranchingGraph& g2, NodeId u2,
                   std::uint64_t top2, const PairScores& scores, ExpandOrder order, F&& f) {
    const Move stay1{u1, SigOp::keep, 0};
    const Move stay2{u2, SigOp::keep, 0};
    const bool br1 = u1 != kBottom && g1[u1].is_br;
    const bool br2 = u2 != kBottom && g2[u2].is_br;

    auto expand1 = [&] { for_each_side_move(g1, u1, top1, [&](Move m) { f(Step{StepKind::expand_first, Score(0), m, stay2}); }); };
    auto expand2 = [&] { for_each_side_move(g2, u2, top2, [&](Move m) { f(Step{StepKind::expand_second, Score(0), stay1, m}); }); };

    if (order == ExpandOrder::first_program) {
        if (br1) return expand1();
        if (br2) return expand2();
    } else {
        if (br2) return expand2();
        if (br1) return expand1();
    }

    if (u1 == kBottom && u2 == kBottom) return;
    if (u1 == kBottom) return f(Step{StepKind::gap_first, scores.gap_first(u2), stay1, single_move(g2, u2)});
    if (u2 == kBottom) return f(Step{StepKind::gap_second, scores.gap_second(u1), single_move(g1, u1), stay2});

    const Move m1 = single_move(g1, u1);
    const Move m2 = single_move(g2, u2);
    f(Step{StepKind::match, scores.match(u1, u2), m1, m2});
    f(Step{StepKind::gap_second, scores.gap_second(u1), m1, stay2});
    f(Step{StepKind::gap_first, scores.gap_first(u2), stay1, m2});
}

}  // namespace fmbr
