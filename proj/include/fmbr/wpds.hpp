#pragma once

#include "fmbr/align.hpp"
#include "fmbr/ast.hpp"
#include "fmbr/score.hpp"

#include <algorithm>
#include <array>
#include <concepts>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fmbr {

template <class S>
concept IdempotentSemiring = requires(typename S::value_type a, typename S::value_type b) {
    { S::zero() } -> std::same_as<typename S::value_type>;
    { S::one() } -> std::same_as<typename S::value_type>;
    { S::combine(a, b) } -> std::same_as<typename S::value_type>;
    { S::extend(a, b) } -> std::same_as<typename S::value_type>;
    { a == b } -> std::convertible_to<bool>;
};

// (Z u {-inf}, max, +, -inf, 0)
struct MaxPlus {
    using value_type = Score;
    static Score zero() { return Score::neg_inf(); }
    static Score one() { return Score(0); }
    static Score combine(Score a, Score b) { return max(a, b); }
    static Score extend(Score a, Score b) { return a + b; }
};

struct AxiomReport {
    std::uint64_t instances = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

template <IdempotentSemiring SR>
AxiomReport check_semiring_axioms(const std::vector<std::array<typename SR::value_type, 3>>& triples) {
    using V = typename SR::value_type;
    AxiomReport report;
    const V z = SR::zero(), o = SR::one();
    auto expect = [&](bool holds, const char* axiom, std::size_t i) {
        ++report.instances;
        if (!holds) report.violations.push_back(std::string(axiom) + " fails on triple #" + std::to_string(i));
    };
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const auto& [a, b, c] = triples[i];
        expect(SR::combine(a, b) == SR::combine(b, a), "combine commutative", i);
        expect(SR::combine(SR::combine(a, b), c) == SR::combine(a, SR::combine(b, c)), "combine associative", i);
        expect(SR::combine(a, a) == a, "combine idempotent", i);
        expect(SR::combine(a, z) == a && SR::combine(z, a) == a, "zero neutral for combine", i);
        expect(SR::extend(SR::extend(a, b), c) == SR::extend(a, SR::extend(b, c)), "extend associative", i);
        expect(SR::extend(a, o) == a && SR::extend(o, a) == a, "one neutral for extend", i);
        expect(SR::extend(a, z) == z && SR::extend(z, a) == z, "zero annihilates", i);
        expect(SR::extend(a, SR::combine(b, c)) == SR::combine(SR::extend(a, b), SR::extend(a, c)),
               "left distributivity", i);
        expect(SR::extend(SR::combine(a, b), c) == SR::combine(SR::extend(a, c), SR::extend(b, c)),
               "right distributivity", i);
    }
    return report;
}

// Every ordered triple drawn from samples.
template <IdempotentSemiring SR>
AxiomReport check_semiring_axioms(const std::vector<typename SR::value_type>& samples) {
    std::vector<std::array<typename SR::value_type, 3>> triples;
    for (const auto& a : samples)
        for (const auto& b : samples)
            for (const auto& c : samples) triples.push_back({a, b, c});
    return check_semiring_axioms<SR>(triples);
}

using WpdsState = std::uint32_t;
using WpdsSymbol = std::uint32_t;

template <IdempotentSemiring SR>
struct WpdsRule {
    WpdsState from;
    WpdsSymbol symbol;
    WpdsState to;
    std::vector<WpdsSymbol> word;  // top first, at most two symbols
    typename SR::value_type weight;
};

struct Configuration {
    WpdsState state = 0;
    std::vector<WpdsSymbol> stack;  // front is the top
    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

class WpdsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <IdempotentSemiring SR>
class Wpds {
public:
    using Rule = WpdsRule<SR>;

    Wpds(std::size_t states, std::size_t symbols) : states_(states), symbols_(symbols) {}

    void add_rule(Rule r) {
        if (r.from >= states_ || r.to >= states_) throw WpdsError("rule state out of range");
        if (r.symbol >= symbols_) throw WpdsError("rule symbol out of range");
        if (r.word.size() > 2) throw WpdsError("rule words are limited to two symbols");
        for (auto s : r.word)
            if (s >= symbols_) throw WpdsError("rule symbol out of range");
        rules_.push_back(std::move(r));
    }

    std::size_t num_states() const { return states_; }
    std::size_t num_symbols() const { return symbols_; }
    const std::vector<Rule>& rules() const { return rules_; }

    void check(const Configuration& c) const {
        if (c.state >= states_) throw WpdsError("configuration state out of range");
        for (auto s : c.stack)
            if (s >= symbols_) throw WpdsError("configuration symbol out of range");
    }

private:
    std::size_t states_, symbols_;
    std::vector<Rule> rules_;
};

struct SaturationOptions {
    std::uint64_t max_updates_per_transition = 1'000'000;
};

struct SaturationStats {
    std::uint64_t transitions = 0;
    std::uint64_t worklist_pops = 0;
    std::uint64_t max_updates_per_transition = 0;  // counting the insertion
};

// Combine over all paths from c to target of their extended weights, via
// weighted pre* saturation of an automaton that accepts only target.
template <IdempotentSemiring SR>
typename SR::value_type reach(const Wpds<SR>& w, const Configuration& c, const Configuration& target,
                              const SaturationOptions& opts = {}, SaturationStats* stats = nullptr) {
    using V = typename SR::value_type;
    w.check(c);
    w.check(target);

    struct Trans {
        std::uint32_t from, to;
        WpdsSymbol symbol;
        V weight;
        std::uint64_t updates;
        bool queued;
    };
    auto pack = [](std::uint64_t a, std::uint64_t b) { return (a << 32) | b; };

    std::vector<Trans> trans;
    std::unordered_map<std::uint64_t, std::unordered_map<std::uint32_t, std::uint32_t>> out;  // (from,sym) -> to -> id
    std::vector<std::vector<std::uint32_t>> incoming;
    std::vector<std::uint32_t> worklist;

    // Chain for target: target.state -g1-> q1 -g2-> ... -> q_k (final).
    std::uint32_t automaton_states = static_cast<std::uint32_t>(w.num_states());
    incoming.resize(automaton_states);
    auto fresh = [&] {
        incoming.emplace_back();
        return automaton_states++;
    };

    auto update = [&](std::uint32_t from, WpdsSymbol sym, std::uint32_t to, V val) {
        if (val == SR::zero()) return;
        auto& row = out[pack(from, sym)];
        auto it = row.find(to);
        std::uint32_t id;
        if (it == row.end()) {
            id = static_cast<std::uint32_t>(trans.size());
            row.emplace(to, id);
            trans.push_back({from, to, sym, val, 1, false});
            incoming[to].push_back(id);
        } else {
            id = it->second;
            V merged = SR::combine(trans[id].weight, val);
            if (merged == trans[id].weight) return;
            trans[id].weight = merged;
            if (++trans[id].updates > opts.max_updates_per_transition)
                throw WpdsError("saturation diverged: a transition exceeded " +
                                std::to_string(opts.max_updates_per_transition) + " updates");
        }
        if (!trans[id].queued) {
            trans[id].queued = true;
            worklist.push_back(id);
        }
    };

    std::uint32_t final_state = target.state;
    for (auto sym : target.stack) {
        std::uint32_t q = fresh();
        update(final_state, sym, q, SR::one());
        final_state = q;
    }

    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_head;  // (to, word[0]) -> rules
    for (std::uint32_t r = 0; r < w.rules().size(); ++r) {
        const auto& rule = w.rules()[r];
        if (rule.word.empty())
            update(rule.from, rule.symbol, rule.to, rule.weight);
        else
            by_head[pack(rule.to, rule.word[0])].push_back(r);
    }

    std::uint64_t pops = 0;
    while (!worklist.empty()) {
        const std::uint32_t id = worklist.back();
        worklist.pop_back();
        trans[id].queued = false;
        ++pops;
        const Trans t = trans[id];

        // t read as the first transition of a rule's right-hand side.
        if (auto hit = by_head.find(pack(t.from, t.symbol)); hit != by_head.end()) {
            for (std::uint32_t r : hit->second) {
                const auto& rule = w.rules()[r];
                if (rule.word.size() == 1) {
                    update(rule.from, rule.symbol, t.to, SR::extend(rule.weight, t.weight));
                } else if (auto next = out.find(pack(t.to, rule.word[1])); next != out.end()) {
                    std::vector<std::pair<std::uint32_t, std::uint32_t>> targets(next->second.begin(),
                                                                                 next->second.end());
                    for (auto [to, id2] : targets)
                        update(rule.from, rule.symbol, to,
                               SR::extend(rule.weight, SR::extend(t.weight, trans[id2].weight)));
                }
            }
        }
        // t read as the second transition of a push rule.
        const std::vector<std::uint32_t> before = incoming[t.from];
        for (std::uint32_t id1 : before) {
            const Trans first = trans[id1];
            auto hit = by_head.find(pack(first.from, first.symbol));
            if (hit == by_head.end()) continue;
            for (std::uint32_t r : hit->second) {
                const auto& rule = w.rules()[r];
                if (rule.word.size() == 2 && rule.word[1] == t.symbol)
                    update(rule.from, rule.symbol, t.to,
                           SR::extend(rule.weight, SR::extend(trans[id1].weight, t.weight)));
            }
        }
    }

    // Read c's stack from c.state, combining over automaton runs.
    std::unordered_map<std::uint32_t, V> frontier{{c.state, SR::one()}};
    for (auto sym : c.stack) {
        std::unordered_map<std::uint32_t, V> next;
        for (auto [q, v] : frontier) {
            auto row = out.find(pack(q, sym));
            if (row == out.end()) continue;
            for (auto [to, id] : row->second) {
                V x = SR::extend(v, trans[id].weight);
                auto [it, fresh_entry] = next.emplace(to, x);
                if (!fresh_entry) it->second = SR::combine(it->second, x);
            }
        }
        frontier = std::move(next);
    }

    if (stats) {
        stats->transitions = trans.size();
        stats->worklist_pops = pops;
        stats->max_updates_per_transition = 0;
        for (const auto& t : trans) stats->max_updates_per_transition = std::max(stats->max_updates_per_transition, t.updates);
    }
    auto it = frontier.find(final_state);
    return it == frontier.end() ? SR::zero() : it->second;
}

struct ConfigGraphLimits {
    std::uint64_t max_configurations = 2'000'000;
    std::size_t max_stack = 10'000;
};

template <IdempotentSemiring SR>
struct ConfigGraphResult {
    typename SR::value_type value;
    std::uint64_t configurations = 0;
    std::uint64_t edges = 0;
    // Extremes over finite-weight paths to target (max-plus only).
    std::optional<Score> min_finite, max_finite;
};

// Materializes the configurations reachable from init and combines over all
// paths to target by dynamic programming over the (acyclic) graph.
template <IdempotentSemiring SR>
ConfigGraphResult<SR> config_graph_reach(const Wpds<SR>& w, const Configuration& init, const Configuration& target,
                                         const ConfigGraphLimits& limits = {}) {
    using V = typename SR::value_type;
    w.check(init);
    w.check(target);

    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> rules_by_head;
    for (std::uint32_t r = 0; r < w.rules().size(); ++r)
        rules_by_head[(std::uint64_t{w.rules()[r].from} << 32) | w.rules()[r].symbol].push_back(r);

    std::map<Configuration, std::uint32_t> ids;
    std::vector<Configuration> configs;
    std::vector<std::vector<std::pair<std::uint32_t, V>>> succ;
    auto intern = [&](Configuration c) {
        auto [it, fresh] = ids.emplace(c, static_cast<std::uint32_t>(configs.size()));
        if (fresh) {
            if (configs.size() >= limits.max_configurations)
                throw WpdsError("configuration graph exceeds " + std::to_string(limits.max_configurations) +
                                " configurations");
            if (c.stack.size() > limits.max_stack)
                throw WpdsError("configuration stack deeper than " + std::to_string(limits.max_stack));
            configs.push_back(std::move(c));
            succ.emplace_back();
        }
        return it->second;
    };

    ConfigGraphResult<SR> result;
    constexpr bool track_range = std::is_same_v<V, Score>;
    std::vector<V> best;
    std::vector<Score> lo, hi;  // finite path extremes, -inf when none
    std::vector<std::uint8_t> color;  // 0 new, 1 on stack, 2 done

    std::vector<std::pair<std::uint32_t, std::size_t>> stack;
    auto open = [&](std::uint32_t id) {
        color.resize(configs.size(), 0);
        color[id] = 1;
        const Configuration c = configs[id];
        if (!c.stack.empty()) {
            auto hit = rules_by_head.find((std::uint64_t{c.state} << 32) | c.stack.front());
            if (hit != rules_by_head.end()) {
                for (std::uint32_t r : hit->second) {
                    const auto& rule = w.rules()[r];
                    Configuration n{rule.to, rule.word};
                    n.stack.insert(n.stack.end(), c.stack.begin() + 1, c.stack.end());
                    std::uint32_t nid = intern(std::move(n));
                    succ[id].push_back({nid, rule.weight});
                }
            }
        }
        result.edges += succ[id].size();
        stack.push_back({id, 0});
    };

    open(intern(init));
    while (!stack.empty()) {
        auto& [id, k] = stack.back();
        color.resize(configs.size(), 0);
        if (k < succ[id].size()) {
            const std::uint32_t next = succ[id][k++].first;
            if (color[next] == 1) throw WpdsError("cycle detected in the configuration graph");
            if (color[next] == 0) open(next);
            continue;
        }
        const std::uint32_t done = id;
        stack.pop_back();
        color[done] = 2;
        best.resize(configs.size(), SR::zero());
        lo.resize(configs.size(), Score::neg_inf());
        hi.resize(configs.size(), Score::neg_inf());
        const bool at_target = configs[done] == target;
        V acc = at_target ? SR::one() : SR::zero();
        std::optional<Score> mn, mx;
        if (at_target) mn = mx = Score(0);
        for (auto [to, wt] : succ[done]) {
            acc = SR::combine(acc, SR::extend(wt, best[to]));
            if constexpr (track_range) {
                if (wt.is_finite() && hi[to].is_finite()) {
                    Score a = wt + lo[to], b = wt + hi[to];
                    mn = mn ? std::min(*mn, a) : a;
                    mx = mx ? std::max(*mx, b) : b;
                }
            }
        }
        best[done] = acc;
        if (mn) {
            lo[done] = *mn;
            hi[done] = *mx;
        }
    }

    result.value = best[0];
    result.configurations = configs.size();
    if constexpr (track_range) {
        if (hi[0].is_finite()) {
            result.min_finite = lo[0];
            result.max_finite = hi[0];
        }
    }
    return result;
}

// ---- The pushdown system for merging with reordering ----

struct S2Stats {
    std::size_t main_states = 0;
    std::size_t aux_states = 0;
    std::size_t rules = 0;
    std::size_t symbols = 0;
    // (1 + b1)(|V1| + 1) * 2^(b2*d2)(|V2| + 1)
    long double state_bound = 0;
};

struct S2System {
    Wpds<MaxPlus> wpds{0, 0};
    Configuration initial, target;
    std::vector<std::string> state_names, symbol_names;
    S2Stats stats;
    ScoreBounds bounds;
    std::size_t n1 = 0, n2 = 0;  // instruction counts

    // Every S2 path weight lies within [2L(n1+n2), 2R(n1+n2)].
    std::int64_t weight_lower() const { return 2 * bounds.lower * static_cast<std::int64_t>(n1 + n2); }
    std::int64_t weight_upper() const { return 2 * bounds.upper * static_cast<std::int64_t>(n1 + n2); }
    // Distinct values a saturation transition can take, counting -inf.
    std::uint64_t diversity() const { return static_cast<std::uint64_t>(weight_upper() - weight_lower()) + 2; }
};

// Requires delta with declared bounds and b1 <= 20.
S2System build_wpds_s2(const Program& p1, const Program& p2, const ScoringFn& delta);

struct WpdsResult {
    Score score;
    S2Stats s2;
    SaturationStats saturation;
    std::uint64_t update_cap = 0;
};

WpdsResult fmbr_wpds_detailed(const Program& p1, const Program& p2, const ScoringFn& delta);
Score fmbr_wpds(const Program& p1, const Program& p2, const ScoringFn& delta);

// One line per rule: `state gamma -> state' w ; weight`, `eps` for an empty word.
std::string dump_wpds(const S2System& s);

}  // namespace fmbr
