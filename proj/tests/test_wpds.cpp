#include "doctest.h"

#include "fmbr/corpus.hpp"
#include "fmbr/fmbr_dp.hpp"
#include "fmbr/wpds.hpp"
#include "test_util.hpp"

using namespace fmbr;
using fmbr::testing::kPf1;
using fmbr::testing::kPf2;

namespace {

// max/+ with 0 as the additive unit: not a semiring over Z u {-inf}.
struct BrokenMaxPlus {
    using value_type = Score;
    static Score zero() { return Score(0); }
    static Score one() { return Score(0); }
    static Score combine(Score a, Score b) { return max(a, b); }
    static Score extend(Score a, Score b) { return a + b; }
};

Wpds<MaxPlus> toy(std::size_t states, std::size_t symbols, std::vector<WpdsRule<MaxPlus>> rules) {
    Wpds<MaxPlus> w(states, symbols);
    for (auto& r : rules) w.add_rule(std::move(r));
    return w;
}

}  // namespace

TEST_CASE("max-plus semiring axioms") {
    auto r = check_semiring_axioms<MaxPlus>({Score::neg_inf(), Score(-3), Score(0), Score(5)});
    CHECK(r.ok());
    CHECK(r.instances == 64 * 9);
    for (Score a : {Score::neg_inf(), Score(-3), Score(0), Score(5)}) {
        CHECK(MaxPlus::combine(a, a) == a);
        CHECK(MaxPlus::extend(MaxPlus::zero(), a) == MaxPlus::zero());
    }

    Rng rng(17);
    std::vector<std::array<Score, 3>> triples(10000);
    auto draw = [&] { return uniform(rng, 0, 9) == 0 ? Score::neg_inf() : Score(uniform(rng, -1000000, 1000000)); };
    for (auto& t : triples) t = {draw(), draw(), draw()};
    CHECK(check_semiring_axioms<MaxPlus>(triples).ok());
}

TEST_CASE("axiom checker reports violations") {
    auto r = check_semiring_axioms<BrokenMaxPlus>({Score(-3), Score(5)});
    CHECK_FALSE(r.ok());
}

TEST_CASE("reach on small systems") {
    // states s=0, s'=1; symbol $=0
    auto w = toy(2, 1, {{0, 0, 1, {0}, Score(5)}});
    CHECK(reach(w, {0, {0}}, {1, {0}}) == Score(5));
    CHECK(config_graph_reach(w, {0, {0}}, {1, {0}}).value == Score(5));

    Wpds<MaxPlus> empty(1, 1);
    CHECK(reach(empty, {0, {0}}, {0, {0}}) == Score(0));
    CHECK(reach(empty, {0, {}}, {0, {}}) == Score(0));

    auto diamond = toy(2, 1, {{0, 0, 1, {0}, Score(2)}, {0, 0, 1, {0}, Score(7)}});
    CHECK(reach(diamond, {0, {0}}, {1, {0}}) == Score(7));
    CHECK(config_graph_reach(diamond, {0, {0}}, {1, {0}}).value == Score(7));

    // Unreachable target.
    CHECK(reach(w, {1, {0}}, {0, {0}}).is_neg_inf());
}

TEST_CASE("reach through push and pop") {
    // p=0 q=1 r=2 t=3; a=0 b=1 c=2 d=3
    auto w = toy(4, 4,
                 {{0, 0, 1, {1, 2}, Score(1)}, {1, 1, 2, {}, Score(2)}, {2, 2, 3, {3}, Score(3)},
                  {1, 1, 3, {}, Score(-4)}});
    const Configuration from{0, {0}}, to{3, {3}};
    CHECK(reach(w, from, to) == Score(6));
    CHECK(config_graph_reach(w, from, to).value == Score(6));
    auto cg = config_graph_reach(w, from, to);
    REQUIRE(cg.max_finite);
    CHECK(*cg.max_finite == Score(6));
    CHECK(*cg.min_finite == Score(6));
}

TEST_CASE("cycles and divergence guards") {
    auto loop = toy(1, 1, {{0, 0, 0, {0}, Score(1)}});
    CHECK_THROWS_AS(config_graph_reach(loop, {0, {0}}, {0, {0}}), WpdsError);
    CHECK_THROWS_AS(reach(loop, {0, {0}}, {0, {0}}, SaturationOptions{50}), WpdsError);

    auto grow = toy(1, 1, {{0, 0, 0, {0, 0}, Score(0)}});
    CHECK_THROWS_AS(config_graph_reach(grow, {0, {0}}, {0, {}}, ConfigGraphLimits{1000, 100}), WpdsError);

    CHECK_THROWS_AS(toy(1, 1, {{0, 0, 0, {0, 0, 0}, Score(0)}}), WpdsError);
    CHECK_THROWS_AS(toy(1, 1, {{0, 1, 0, {}, Score(0)}}), WpdsError);
}

TEST_CASE("pushdown merge examples") {
    LcsScoring d;
    CHECK(fmbr_wpds(parse_program("a"), parse_program("a"), d) == Score(1));
    CHECK(fmbr_wpds(parse_program("a"), parse_program("b"), d) == Score(0));

    auto s = build_wpds_s2(parse_program("a.b.c"), parse_program("[a|b]"), d);
    CHECK(s.wpds.num_symbols() == 2);
    CHECK(s.symbol_names == std::vector<std::string>{"{}", "$"});

    const Program p1 = parse_program(kPf1), p2 = parse_program(kPf2);
    auto r = fmbr_wpds_detailed(p1, p2, d);
    CHECK(r.score == Score(9));
    CHECK(static_cast<long double>(r.s2.main_states + r.s2.aux_states) <= r.s2.state_bound);
    CHECK(r.saturation.max_updates_per_transition <= r.update_cap);

    TableScoring unbounded(Score(1), Score(0), Score(0));
    CHECK_THROWS_AS(build_wpds_s2(p1, p2, unbounded), std::invalid_argument);
}

TEST_CASE("pushdown dump format") {
    LcsScoring d;
    auto s = build_wpds_s2(parse_program("a"), parse_program("a"), d);
    const std::string text = dump_wpds(s);
    CHECK(text.find("(0,0,[{}]) {} -> (bot,bot,[]) eps ; 1\n") != std::string::npos);
}

TEST_CASE("pushdown agrees with the dp and the configuration graph") {
    for (const auto& pair : random_pairs(77, 150)) {
        const S2System s = build_wpds_s2(pair.p1, pair.p2, *pair.delta);
        for (const auto& rule : s.wpds.rules()) CHECK(rule.word.size() <= 2);
        SaturationStats st;
        const Score sat = reach(s.wpds, s.initial, s.target, SaturationOptions{s.diversity()}, &st);
        const auto cg = config_graph_reach(s.wpds, s.initial, s.target);
        const Score dp = fmbr_dp(pair.p1, pair.p2, *pair.delta);
        CHECK(sat == dp);
        CHECK(cg.value == dp);
        CHECK(st.max_updates_per_transition <= s.diversity());
        CHECK(static_cast<long double>(s.stats.main_states + s.stats.aux_states) <= s.stats.state_bound);
        if (cg.max_finite) {
            CHECK(cg.min_finite->value() >= s.weight_lower());
            CHECK(cg.max_finite->value() <= s.weight_upper());
        }
    }
}
