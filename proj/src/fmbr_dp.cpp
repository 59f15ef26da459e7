#include "fmbr/fmbr_dp.hpp"

#include "fmbr/funcmerg.hpp"
#include "fmbr/signature.hpp"
#include "signature_table.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace fmbr {

namespace {

struct State {
    NodeId u1;
    std::uint32_t s1;
    NodeId u2;
    std::uint32_t s2;
    friend bool operator==(const State&, const State&) = default;
};

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_state(const State& s) {
    std::uint64_t a = (std::uint64_t{s.u1} << 32) | s.s1;
    std::uint64_t b = (std::uint64_t{s.u2} << 32) | s.s2;
    return mix64(a ^ mix64(b));
}

// Open addressing, linear probing, grows at half load.
class StateMemo {
public:
    StateMemo() { rehash(1024); }

    const Score* find(const State& s) const {
        std::size_t i = hash_state(s) & mask_;
        while (used_[i]) {
            if (slots_[i].key == s) return &slots_[i].value;
            i = (i + 1) & mask_;
        }
        return nullptr;
    }

    void insert(const State& s, Score v) {
        if (2 * (size_ + 1) > slots_.size()) rehash(slots_.size() * 2);
        place(s, v);
    }

    std::size_t size() const { return size_; }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < slots_.size(); ++i)
            if (used_[i]) f(slots_[i].key, slots_[i].value);
    }

private:
    struct Slot {
        State key;
        Score value;
    };

    void place(const State& s, Score v) {
        std::size_t i = hash_state(s) & mask_;
        while (used_[i]) {
            if (slots_[i].key == s) {
                slots_[i].value = v;
                return;
            }
            i = (i + 1) & mask_;
        }
        used_[i] = 1;
        slots_[i] = {s, v};
        ++size_;
    }

    void rehash(std::size_t capacity) {
        std::vector<Slot> old_slots(capacity);
        std::vector<std::uint8_t> old_used(capacity, 0);
        old_slots.swap(slots_);
        old_used.swap(used_);
        mask_ = capacity - 1;
        size_ = 0;
        for (std::size_t i = 0; i < old_slots.size(); ++i)
            if (old_used[i]) place(old_slots[i].key, old_slots[i].value);
    }

    std::vector<Slot> slots_;
    std::vector<std::uint8_t> used_;
    std::size_t mask_ = 0;
    std::size_t size_ = 0;
};

BranchingGraph checked_graph(const Program& p) {
    BranchingGraph g = build_brgraph(p);
    if (g.max_out_entries() > 64) throw std::invalid_argument("branching factor above 64 is not supported");
    return g;
}

}  // namespace

struct FmbrSolver::Impl {
    Impl(const Program& p1, const Program& p2, const ScoringFn& delta, ExpandOrder order)
        : g1(checked_graph(p1)), g2(checked_graph(p2)), scores(g1, g2, delta), side1(g1), side2(g2), order(order) {
        root = {g1.left, side1.initial(), g2.left, side2.initial()};
        terminal = {kBottom, side1.bottom(), kBottom, side2.bottom()};
    }

    State advance(const State& s, const Step& st) {
        return {st.first.next, side1.apply(st.first, s.u1, s.s1), st.second.next,
                side2.apply(st.second, s.u2, s.s2)};
    }

    template <class F>
    void steps(const State& s, ExpandOrder how, F&& f) {
        for_each_step(g1, s.u1, side1.top(s.s1), g2, s.u2, side2.top(s.s2), scores, how, f);
    }

    Score solve(const State& start) {
        if (const Score* v = memo.find(start)) return *v;

        struct Frame {
            State s;
            std::size_t begin;
            bool expanded;
        };
        struct Pending {
            State s;
            Score w;
        };
        std::vector<Frame> frames{{start, 0, false}};
        std::vector<Pending> arena;

        while (!frames.empty()) {
            const std::size_t idx = frames.size() - 1;
            if (!frames[idx].expanded) {
                const State s = frames[idx].s;
                if (memo.find(s)) {
                    frames.pop_back();
                    continue;
                }
                if (s == terminal) {
                    memo.insert(s, Score(0));
                    frames.pop_back();
                    continue;
                }
                frames[idx].expanded = true;
                frames[idx].begin = arena.size();
                steps(s, order,
                      [&](const Step& st) { arena.push_back({advance(s, st), st.weight}); });
                for (std::size_t k = frames[idx].begin; k < arena.size(); ++k)
                    if (!memo.find(arena[k].s)) frames.push_back({arena[k].s, 0, false});
            } else {
                Score best = Score::neg_inf();
                for (std::size_t k = frames[idx].begin; k < arena.size(); ++k)
                    best = max(best, arena[k].w + *memo.find(arena[k].s));
                memo.insert(frames[idx].s, best);
                arena.resize(frames[idx].begin);
                frames.pop_back();
            }
        }
        return *memo.find(start);
    }

    BranchingGraph g1, g2;
    PairScores scores;
    detail::SignatureTable side1, side2;
    ExpandOrder order;
    StateMemo memo;
    State root{}, terminal{};
};

FmbrSolver::FmbrSolver(const Program& p1, const Program& p2, const ScoringFn& delta, ExpandOrder order)
    : impl_(std::make_unique<Impl>(p1, p2, delta, order)) {}

FmbrSolver::~FmbrSolver() = default;

Score FmbrSolver::value() { return impl_->solve(impl_->root); }

MergeWitness FmbrSolver::witness() {
    Impl& m = *impl_;
    MergeWitness w;
    w.score = value();
    w.pi1.perms.resize(m.g1.construct_node.size());
    w.pi2.perms.resize(m.g2.construct_node.size());

    State s = m.root;
    Score remaining = w.score;
    std::vector<Step> options;
    while (!(s == m.terminal)) {
        options.clear();
        m.steps(s, ExpandOrder::second_program, [&](const Step& st) { options.push_back(st); });
        bool found = false;
        for (const Step& st : options) {
            const State next = m.advance(s, st);
            const Score v = m.solve(next);
            if (st.weight + v != remaining) continue;
            switch (st.kind) {
            case StepKind::expand_first:
                if (st.first.op == SigOp::en) w.pi1.perms[m.g1[s.u1].construct].push_back(st.first.branch);
                break;
            case StepKind::expand_second:
                if (st.second.op == SigOp::en) w.pi2.perms[m.g2[s.u2].construct].push_back(st.second.branch);
                break;
            case StepKind::match:
                w.alignment.push_back({m.g1[s.u1].label, m.g2[s.u2].label});
                break;
            case StepKind::gap_second:
                w.alignment.push_back({m.g1[s.u1].label, std::string(kGap)});
                break;
            case StepKind::gap_first:
                w.alignment.push_back({std::string(kGap), m.g2[s.u2].label});
                break;
            }
            s = next;
            remaining = v;
            found = true;
            break;
        }
        if (!found) throw std::logic_error("witness reconstruction found no optimal step");
    }
    return w;
}

DpStats FmbrSolver::stats() {
    Impl& m = *impl_;
    value();
    DpStats st;
    st.states_visited = m.memo.size();
    std::set<std::pair<NodeId, std::uint32_t>> seen1, seen2;
    m.memo.for_each([&](const State& s, Score) {
        seen1.emplace(s.u1, s.s1);
        seen2.emplace(s.u2, s.s2);
    });

    auto tally = [](const BranchingGraph& g, const detail::SignatureTable& side,
                    const std::set<std::pair<NodeId, std::uint32_t>>& seen, std::vector<std::size_t>& per_node,
                    std::size_t& distinct, std::uint64_t& violations) {
        per_node.assign(g.size(), 0);
        std::set<std::uint32_t> ids;
        for (auto [u, sig] : seen) {
            ids.insert(sig);
            const std::size_t expected = u == kBottom ? 0 : g[u].dep + 1;
            if (side.get(sig).height() != expected) ++violations;
            if (u != kBottom) ++per_node[u];
        }
        distinct = ids.size();
    };
    tally(m.g1, m.side1, seen1, st.signatures_per_node1, st.distinct_signatures1, st.height_violations);
    tally(m.g2, m.side2, seen2, st.signatures_per_node2, st.distinct_signatures2, st.height_violations);

    auto side_bound = [](const BranchingGraph& g) {
        return std::pow(2.0L, static_cast<long double>(g.max_out_entries() * g.max_dep())) *
               static_cast<long double>(g.size() + 1);
    };
    st.state_bound = side_bound(m.g1) * side_bound(m.g2);
    return st;
}

Score fmbr_dp(const Program& p1, const Program& p2, const ScoringFn& delta) {
    return FmbrSolver(p1, p2, delta).value();
}

MergeWitness fmbr_witness(const Program& p1, const Program& p2, const ScoringFn& delta) {
    return FmbrSolver(p1, p2, delta).witness();
}

DpStats dp_stats(const Program& p1, const Program& p2, const ScoringFn& delta) {
    return FmbrSolver(p1, p2, delta).stats();
}

}  // namespace fmbr
