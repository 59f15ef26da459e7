#include "fmbr/wpds.hpp"

#include "fmbr/brgraph.hpp"
#include "fmbr/funcmerg.hpp"
#include "signature_table.hpp"

#include <cmath>
#include <deque>
#include <sstream>
#include <tuple>

namespace fmbr {

namespace {

std::string render_record(std::uint64_t mask) {
    std::string out = "{";
    bool first = true;
    for (int j = 1; j <= 64; ++j) {
        if (!((mask >> (j - 1)) & 1)) continue;
        if (!first) out += ",";
        out += std::to_string(j);
        first = false;
    }
    return out + "}";
}

std::string render_node(NodeId u) { return u == kBottom ? "bot" : std::to_string(u); }

struct Key {
    NodeId u1, u2;
    std::uint32_t x2;
    std::uint32_t j;  // 0 for a main state, else the pending branch index
    auto operator<=>(const Key&) const = default;
};

}  // namespace

S2System build_wpds_s2(const Program& p1, const Program& p2, const ScoringFn& delta) {
    const auto bounds = delta.bounds();
    if (!bounds) throw std::invalid_argument("the pushdown construction needs a scoring function with declared bounds");

    const BranchingGraph g1 = build_brgraph(p1);
    const BranchingGraph g2 = build_brgraph(p2);
    const std::size_t b1 = g1.max_out_entries();
    if (b1 > 20) throw std::invalid_argument("branching factor of P1 above 20 is not supported");
    if (g2.max_out_entries() > 64) throw std::invalid_argument("branching factor of P2 above 64 is not supported");

    const PairScores scores(g1, g2, delta);
    detail::SignatureTable side2(g2);
    const WpdsSymbol dollar = WpdsSymbol{1} << b1;

    std::map<Key, WpdsState> ids;
    std::vector<Key> keys;
    std::deque<WpdsState> todo;
    auto intern = [&](const Key& k) {
        auto [it, fresh] = ids.emplace(k, static_cast<WpdsState>(keys.size()));
        if (fresh) {
            keys.push_back(k);
            todo.push_back(it->second);
        }
        return it->second;
    };

    S2System s;
    s.bounds = *bounds;
    s.n1 = instruction_count(p1);
    s.n2 = instruction_count(p2);
    std::vector<WpdsRule<MaxPlus>> rules;

    const WpdsState init = intern({g1.left, g2.left, side2.initial(), 0});
    const WpdsState goal = intern({kBottom, kBottom, side2.bottom(), 0});

    while (!todo.empty()) {
        const WpdsState from = todo.front();
        todo.pop_front();
        const Key k = keys[from];

        if (k.j != 0) {
            // Re-push the enclosing record with branch j marked.
            const std::uint64_t beta = g1[k.u1].entries.size();
            const WpdsState to = intern({k.u1, k.u2, k.x2, 0});
            for (std::uint64_t rec = 0; rec < (std::uint64_t{1} << beta); ++rec) {
                if ((rec >> (k.j - 1)) & 1) continue;
                rules.push_back({from, static_cast<WpdsSymbol>(rec), to,
                                 {static_cast<WpdsSymbol>(rec | (std::uint64_t{1} << (k.j - 1)))}, Score(0)});
            }
            continue;
        }

        std::vector<WpdsSymbol> tops;
        if (k.u1 == kBottom) {
            tops.push_back(dollar);
        } else {
            const std::size_t alpha = g1[k.u1].is_br ? g1[k.u1].entries.size() : 0;
            for (WpdsSymbol rec = 0; rec < (WpdsSymbol{1} << alpha); ++rec) tops.push_back(rec);
        }

        for (WpdsSymbol gamma : tops) {
            const std::uint64_t top1 = gamma == dollar ? 0 : gamma;
            for_each_step(g1, k.u1, top1, g2, k.u2, side2.top(k.x2), scores, ExpandOrder::first_program,
                          [&](const Step& st) {
                              if (st.weight.is_neg_inf()) return;
                              const NodeId u1 = st.first.next;
                              const NodeId u2 = st.second.next;
                              const std::uint32_t x2 = side2.apply(st.second, k.u2, k.x2);
                              WpdsRule<MaxPlus> r{from, gamma, 0, {}, st.weight};
                              switch (st.first.op) {
                              case SigOp::keep:
                                  r.to = intern({u1, u2, x2, 0});
                                  r.word = {gamma};
                                  break;
                              case SigOp::en:
                                  r.to = intern({u1, u2, x2, 0});
                                  r.word = {0, gamma};
                                  break;
                              case SigOp::seq:
                                  r.to = intern({u1, u2, x2, 0});
                                  r.word = {0};
                                  break;
                              case SigOp::ex:
                                  r.to = intern({u1, u2, x2, st.first.branch});
                                  break;
                              case SigOp::done:
                                  r.to = intern({kBottom, u2, x2, 0});
                                  break;
                              }
                              rules.push_back(std::move(r));
                          });
        }
    }

    s.wpds = Wpds<MaxPlus>(keys.size(), static_cast<std::size_t>(dollar) + 1);
    for (auto& r : rules) s.wpds.add_rule(std::move(r));
    s.initial = {init, {0, dollar}};
    s.target = {goal, {dollar}};

    for (const Key& k : keys) {
        std::string name = "(" + render_node(k.u1) + "," + render_node(k.u2) + ",[";
        const auto& recs = side2.get(k.x2).records;
        for (std::size_t i = 0; i < recs.size(); ++i) name += (i ? "," : "") + render_record(recs[i]);
        name += "])";
        if (k.j) {
            name += "_" + std::to_string(k.j);
            ++s.stats.aux_states;
        } else {
            ++s.stats.main_states;
        }
        s.state_names.push_back(std::move(name));
    }
    for (WpdsSymbol g = 0; g < dollar; ++g) s.symbol_names.push_back(render_record(g));
    s.symbol_names.push_back("$");

    s.stats.rules = s.wpds.rules().size();
    s.stats.symbols = s.symbol_names.size();
    s.stats.state_bound = static_cast<long double>(1 + b1) * static_cast<long double>(g1.size() + 1) *
                          std::pow(2.0L, static_cast<long double>(g2.max_out_entries() * g2.max_dep())) *
                          static_cast<long double>(g2.size() + 1);
    return s;
}

WpdsResult fmbr_wpds_detailed(const Program& p1, const Program& p2, const ScoringFn& delta) {
    const S2System s = build_wpds_s2(p1, p2, delta);
    WpdsResult r;
    r.s2 = s.stats;
    r.update_cap = s.diversity();
    r.score = reach(s.wpds, s.initial, s.target, SaturationOptions{r.update_cap}, &r.saturation);
    return r;
}

Score fmbr_wpds(const Program& p1, const Program& p2, const ScoringFn& delta) {
    return fmbr_wpds_detailed(p1, p2, delta).score;
}

std::string dump_wpds(const S2System& s) {
    std::ostringstream out;
    for (const auto& r : s.wpds.rules()) {
        out << s.state_names[r.from] << ' ' << s.symbol_names[r.symbol] << " -> " << s.state_names[r.to] << ' ';
        if (r.word.empty()) out << "eps";
        for (std::size_t i = 0; i < r.word.size(); ++i) out << (i ? " " : "") << s.symbol_names[r.word[i]];
        out << " ; " << r.weight << '\n';
    }
    return out.str();
}

}  // namespace fmbr
