#include "doctest.h"

#include "fmbr/corpus.hpp"
#include "fmbr/fmbr_dp.hpp"
#include "fmbr/signature.hpp"
#include "test_util.hpp"

using namespace fmbr;
using fmbr::testing::kPf1;
using fmbr::testing::kPf2;
using fmbr::testing::words;

namespace {

const char* kRunningLines = "2.3.4.5.[7.[9.10]|12.13].14.15";

std::uint64_t bits(std::initializer_list<int> idx) {
    std::uint64_t r = 0;
    for (int j : idx) r |= std::uint64_t{1} << (j - 1);
    return r;
}

}  // namespace

TEST_CASE("signature updates") {
    auto g = build_brgraph(parse_program(kRunningLines));
    const NodeId br1 = g.construct_node[0];
    const NodeId br2 = g.construct_node[1];

    CHECK(update_signature(SigOp::en, g, br1, Signature{{0}}) == Signature{{0, 0}});

    // Leaving br2 completes branch 1 of br1.
    CHECK(update_signature(SigOp::ex, g, br2, Signature{{0, bits({1})}}) == Signature{{bits({1})}});
    // Leaving 13 completes branch 2 of br1.
    NodeId n13 = 0;
    for (NodeId u = 0; u < g.size(); ++u)
        if (g[u].label == "13") n13 = u;
    CHECK(update_signature(SigOp::ex, g, n13, Signature{{0, 0}}) == Signature{{bits({2})}});

    CHECK(update_signature(SigOp::seq, g, br1, Signature{{bits({1, 2})}}) == Signature{{0}});
    CHECK(update_signature(SigOp::done, g, g.right, Signature{{0}}) == Signature{});

    CHECK_THROWS_AS(update_signature(SigOp::en, g, g.left, Signature{{0}}), SignatureError);
    CHECK_THROWS_AS(update_signature(SigOp::ex, g, g.left, Signature{{0}}), SignatureError);
    CHECK_THROWS_AS(update_signature(SigOp::ex, g, n13, Signature{{0}}), SignatureError);
    CHECK_THROWS_AS(update_signature(SigOp::done, g, g.right, Signature{{0, 0}}), SignatureError);
    CHECK_THROWS_AS(update_signature(SigOp::done, g, g.left, Signature{{0}}), SignatureError);
}

TEST_CASE("signature contains") {
    auto g = build_brgraph(parse_program(kRunningLines));
    const NodeId br1 = g.construct_node[0];
    const NodeId first = g[br1].entries[0];
    const NodeId second = g[br1].entries[1];
    CHECK_FALSE(signature_contains(g, br1, first, Signature{{0, 0}}));
    CHECK(signature_contains(g, br1, second, Signature{{bits({2})}}));
    CHECK_THROWS_AS(signature_contains(g, br1, g.left, Signature{{0}}), SignatureError);

    auto g3 = build_brgraph(parse_program("[a|b|c]"));
    CHECK_FALSE(signature_contains(g3, 0, g3[0].entries[1], Signature{{bits({1, 3})}}));
    CHECK(signature_contains(g3, 0, g3[0].entries[2], Signature{{bits({1, 3})}}));
}

TEST_CASE("dp examples") {
    LcsScoring d;
    CHECK(fmbr_dp(parse_program("a"), parse_program("b"), d) == Score(0));
    CHECK(fmbr_dp(parse_program(kPf1), parse_program(kPf2), d) == Score(9));
    const Program p = parse_program("[a|b.c].d");
    CHECK(fmbr_dp(p, p, d) == Score(4));
    TableScoring forbid(Score(1), Score::neg_inf(), Score::neg_inf());
    CHECK(fmbr_dp(parse_program("a"), parse_program("b.a"), forbid).is_neg_inf());
}

TEST_CASE("witness examples") {
    LcsScoring d;
    auto w = fmbr_witness(parse_program("a"), parse_program("a"), d);
    CHECK(w.score == Score(1));
    CHECK(w.alignment == Alignment{{"a", "a"}});
    CHECK(w.pi1.perms.empty());

    const Program p1 = parse_program(kPf1);
    const Program p2 = parse_program(kPf2);
    w = fmbr_witness(p1, p2, d);
    CHECK(w.score == Score(9));
    CHECK(w.pi1 == Reordering{{{2, 1}, {1}}});
    CHECK(w.pi2 == identity_reordering(p2));
    CHECK(linearize(p1, w.pi1) == words("a b c d h i e f g j k"));
    CHECK(is_alignment_of(w.alignment, linearize(p1, w.pi1), linearize(p2, w.pi2)));
    CHECK(score_alignment(w.alignment, d) == Score(9));

    w = fmbr_witness(parse_program("a.b"), parse_program("b.a"), d);
    CHECK(w.score == Score(1));
    int matched = 0;
    for (const auto& c : w.alignment) matched += c.top == c.bottom;
    CHECK(matched == 1);
}

TEST_CASE("dp stats") {
    LcsScoring d;
    auto st = dp_stats(parse_program("a"), parse_program("b"), d);
    CHECK(st.states_visited <= 9);
    CHECK(st.height_violations == 0);

    st = dp_stats(parse_program(kPf1), parse_program(kPf2), d);
    CHECK(st.states_visited <= 16 * 14 * 16 * 13);
    CHECK(static_cast<long double>(st.states_visited) <= st.state_bound);
    CHECK(st.height_violations == 0);

    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        Program a = random_straight_line(rng, 12, 4);
        Program b = random_straight_line(rng, 12, 4);
        st = dp_stats(a, b, d);
        CHECK(st.states_visited <= (instruction_count(a) + 1) * (instruction_count(b) + 1));
    }
}

TEST_CASE("dp agrees with brute force on random pairs") {
    for (const auto& pair : random_pairs(2024, 200)) {
        const Score brute = fmbr_bruteforce(pair.p1, pair.p2, *pair.delta);
        FmbrSolver solver(pair.p1, pair.p2, *pair.delta);
        CHECK(solver.value() == brute);
        CHECK(FmbrSolver(pair.p1, pair.p2, *pair.delta, ExpandOrder::second_program).value() == brute);

        const auto w = solver.witness();
        CHECK(w.score == brute);
        const auto s1 = linearize(pair.p1, w.pi1);
        const auto s2 = linearize(pair.p2, w.pi2);
        CHECK(is_alignment_of(w.alignment, s1, s2));
        CHECK(score_alignment(w.alignment, *pair.delta) == brute);
        CHECK(seq_align_score(s1, s2, *pair.delta) == brute);

        const auto st = solver.stats();
        CHECK(st.height_violations == 0);
        CHECK(static_cast<long double>(st.states_visited) <= st.state_bound);

        auto shared = std::shared_ptr<const ScoringFn>(pair.delta);
        TransposedScoring dt(shared);
        CHECK(fmbr_dp(pair.p2, pair.p1, dt) == brute);
        CHECK(brute >= seq_align_score(linearize(pair.p1), linearize(pair.p2), *pair.delta));
    }
}

TEST_CASE("straight-line programs reduce to plain alignment") {
    Rng rng(12);
    auto table = random_bounded_table(rng, 4);
    for (int i = 0; i < 100; ++i) {
        Program a = random_straight_line(rng, 12, 4);
        Program b = random_straight_line(rng, 12, 4);
        CHECK(fmbr_dp(a, b, *table) == seq_align_score(linearize(a), linearize(b), *table));
    }
}

TEST_CASE("self merge matches every instruction") {
    Rng rng(13);
    LcsScoring d;
    for (int i = 0; i < 100; ++i) {
        Program p = random_program(rng, {});
        CHECK(fmbr_dp(p, p, d) == Score(static_cast<std::int64_t>(instruction_count(p))));
    }
}
