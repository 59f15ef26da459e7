#include "fmbr/brgraph.hpp"

#include <algorithm>
#include <map>

namespace fmbr {

namespace {

class GraphBuilder {
public:
    explicit GraphBuilder(BranchingGraph& g) : g_(g) {}

    std::pair<NodeId, NodeId> build(const Program& p, std::uint32_t dep) {
        switch (p.kind()) {
        case Program::Kind::instr: {
            NodeId u = fresh(dep);
            g_.nodes[u].label = p.symbol();
            return {u, u};
        }
        case Program::Kind::branch: {
            NodeId u = fresh(dep);
            g_.nodes[u].is_br = true;
            g_.nodes[u].construct = static_cast<std::uint32_t>(g_.construct_node.size());
            g_.construct_node.push_back(u);
            for (std::size_t i = 0; i < p.children().size(); ++i) {
                auto [l, r] = build(p.children()[i], dep + 1);
                g_.nodes[u].entries.push_back(l);
                g_.nodes[r].next = u;
                g_.nodes[r].next_kind = EdgeKind::exit;
                g_.nodes[r].exit_index = static_cast<std::uint32_t>(i + 1);
            }
            return {u, u};
        }
        case Program::Kind::seq: {
            // Parts of a flattened Seq are single-node instructions or constructs.
            auto [l, r] = build(p.children().front(), dep);
            for (std::size_t i = 1; i < p.children().size(); ++i) {
                auto [li, ri] = build(p.children()[i], dep);
                g_.nodes[r].next = li;
                g_.nodes[r].next_kind = EdgeKind::seq;
                g_.nodes[li].br_id = l;
                r = ri;
            }
            return {l, r};
        }
        }
        return {0, 0};
    }

private:
    NodeId fresh(std::uint32_t dep) {
        NodeId u = static_cast<NodeId>(g_.nodes.size());
        BranchingGraph::Node n;
        n.dep = dep;
        n.br_id = u;
        g_.nodes.push_back(std::move(n));
        return u;
    }

    BranchingGraph& g_;
};

}  // namespace

BranchingGraph build_brgraph(const Program& p) {
    BranchingGraph g;
    auto [l, r] = GraphBuilder(g).build(p, 0);
    g.left = l;
    g.right = r;
    return g;
}

std::vector<std::pair<NodeId, NodeId>> BranchingGraph::seq_edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId u = 0; u < nodes.size(); ++u)
        if (nodes[u].next_kind == EdgeKind::seq) out.emplace_back(u, nodes[u].next);
    return out;
}

std::vector<std::pair<NodeId, NodeId>> BranchingGraph::entry_edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId u = 0; u < nodes.size(); ++u)
        for (NodeId v : nodes[u].entries) out.emplace_back(u, v);
    return out;
}

std::vector<std::pair<NodeId, NodeId>> BranchingGraph::exit_edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId u = 0; u < nodes.size(); ++u)
        if (nodes[u].next_kind == EdgeKind::exit) out.emplace_back(u, nodes[u].next);
    return out;
}

std::size_t BranchingGraph::max_dep() const {
    std::size_t d = 0;
    for (const auto& n : nodes) d = std::max<std::size_t>(d, n.dep);
    return d;
}

std::size_t BranchingGraph::max_out_entries() const {
    std::size_t b = 0;
    for (const auto& n : nodes) b = std::max(b, n.entries.size());
    return b;
}

std::uint32_t BranchingGraph::branch_index(NodeId u, NodeId v) const {
    const auto& e = nodes[u].entries;
    auto it = std::find(e.begin(), e.end(), v);
    return it == e.end() ? 0 : static_cast<std::uint32_t>(it - e.begin() + 1);
}

std::set<NodeId> region(const BranchingGraph& g, NodeId u) {
    std::set<NodeId> out{u};
    std::vector<NodeId> todo(g[u].entries.begin(), g[u].entries.end());
    while (!todo.empty()) {
        NodeId v = todo.back();
        todo.pop_back();
        if (!out.insert(v).second) continue;
        for (NodeId w : g[v].entries) todo.push_back(w);
        if (g[v].next_kind == EdgeKind::seq) todo.push_back(g[v].next);
    }
    return out;
}

Linearization read_walk(const BranchingGraph& g, const std::vector<NodeId>& walk) {
    Linearization out;
    for (NodeId u : walk)
        if (!g[u].is_br) out.push_back(g[u].label);
    return out;
}

namespace {

void check_cap(const BigCount& count, std::uint64_t cap, const char* what) {
    if (count > cap)
        throw ResourceCapExceeded(std::string(what) + ": " + count.str() + " reorderings exceed the cap of " +
                                  std::to_string(cap));
}

}  // namespace

std::vector<EulerianPath> enumerate_eulerian_paths(const Program& p, std::uint64_t cap) {
    check_cap(count_reorderings(p), cap, "enumeration refused");
    const BranchingGraph g = build_brgraph(p);

    struct Frame {
        NodeId u;
        std::vector<std::uint64_t> taken;  // per construct: bitmask of entered branches
        std::vector<NodeId> walk;
        Reordering order;
    };

    std::vector<EulerianPath> out;
    Frame start{g.left, std::vector<std::uint64_t>(g.construct_node.size(), 0), {}, {}};
    start.order.perms.resize(g.construct_node.size());
    std::vector<Frame> stack;
    stack.push_back(std::move(start));

    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        for (;;) {
            const auto& node = g[f.u];
            f.walk.push_back(f.u);
            if (node.is_br) {
                std::vector<std::uint32_t> open;
                for (std::uint32_t j = 1; j <= node.entries.size(); ++j)
                    if (!(f.taken[node.construct] >> (j - 1) & 1)) open.push_back(j);
                if (!open.empty()) {
                    // Alternatives go on the stack in reverse so the lowest index runs first.
                    for (std::size_t k = open.size(); k-- > 1;) {
                        Frame alt = f;
                        alt.taken[node.construct] |= std::uint64_t{1} << (open[k] - 1);
                        alt.order.perms[node.construct].push_back(open[k]);
                        alt.u = node.entries[open[k] - 1];
                        stack.push_back(std::move(alt));
                    }
                    f.taken[node.construct] |= std::uint64_t{1} << (open[0] - 1);
                    f.order.perms[node.construct].push_back(open[0]);
                    f.u = node.entries[open[0] - 1];
                    continue;
                }
            }
            if (f.u == g.right) break;
            f.u = node.next;
        }
        out.push_back({std::move(f.walk), std::move(f.order)});
    }
    return out;
}

EnumerationResult enumerate_linearizations(const Program& p, std::uint64_t cap) {
    EnumerationResult r;
    const BranchingGraph g = build_brgraph(p);
    for (const auto& path : enumerate_eulerian_paths(p, cap)) {
        r.linearizations.insert(read_walk(g, path.walk));
        ++r.paths_explored;
    }
    return r;
}

BruteForceResult fmbr_bruteforce_witness(const Program& p1, const Program& p2, const ScoringFn& delta,
                                         std::uint64_t cap) {
    check_cap(count_reorderings(p1) * count_reorderings(p2), cap, "brute force refused");

    auto distinct = [cap](const Program& p) {
        const BranchingGraph g = build_brgraph(p);
        std::map<Linearization, Reordering> first;
        for (auto& path : enumerate_eulerian_paths(p, cap))
            first.emplace(read_walk(g, path.walk), std::move(path.reordering));
        return first;
    };
    const auto lin1 = distinct(p1);
    const auto lin2 = distinct(p2);

    const std::pair<const Linearization, Reordering>* best1 = nullptr;
    const std::pair<const Linearization, Reordering>* best2 = nullptr;
    Score best = Score::neg_inf();
    for (const auto& a : lin1) {
        for (const auto& b : lin2) {
            Score s = seq_align_score(a.first, b.first, delta);
            if (!best1 || s > best) {
                best = s;
                best1 = &a;
                best2 = &b;
            }
        }
    }
    auto aligned = seq_align(best1->first, best2->first, delta);
    return {aligned.score, best1->second, best2->second, std::move(aligned.alignment)};
}

Score fmbr_bruteforce(const Program& p1, const Program& p2, const ScoringFn& delta, std::uint64_t cap) {
    return fmbr_bruteforce_witness(p1, p2, delta, cap).score;
}

}  // namespace fmbr
