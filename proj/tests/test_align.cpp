#include "doctest.h"

#include "fmbr/align.hpp"
#include "fmbr/corpus.hpp"
#include "test_util.hpp"

#include <functional>

using namespace fmbr;
using fmbr::testing::words;

namespace {

// Maximum column score over every alignment, by exhaustive recursion.
Score brute_align(const Linearization& s1, const Linearization& s2, const ScoringFn& delta) {
    std::function<Score(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) -> Score {
        if (i == s1.size() && j == s2.size()) return Score(0);
        Score best = Score::neg_inf();
        if (i < s1.size() && j < s2.size()) best = max(best, delta(s1[i], s2[j]) + go(i + 1, j + 1));
        if (i < s1.size()) best = max(best, delta(s1[i], kGap) + go(i + 1, j));
        if (j < s2.size()) best = max(best, delta(kGap, s2[j]) + go(i, j + 1));
        return best;
    };
    return go(0, 0);
}

Linearization random_string(Rng& rng, std::size_t max_len, std::size_t alphabet) {
    const auto sigma = alphabet_symbols(alphabet);
    Linearization s(static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(max_len))));
    for (auto& c : s) c = sigma[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(alphabet) - 1))];
    return s;
}

const Linearization kS1 = words("a b c d h i e f g j k");
const Linearization kS2 = words("a c l h i e f g j k");

}  // namespace

TEST_CASE("score alignment") {
    LcsScoring lcs_delta;
    CHECK(score_alignment({}, lcs_delta) == Score(0));
    CHECK(score_alignment({{"a", "a"}, {"b", "-"}}, lcs_delta) == Score(1));
    TableScoring forbid(Score(1), Score::neg_inf(), Score(0));
    CHECK(score_alignment({{"a", "b"}, {"c", "c"}}, forbid).is_neg_inf());
}

TEST_CASE("twelve-column alignment of the running strings scores 9") {
    const Alignment m = {{"a", "a"}, {"b", "-"}, {"c", "c"}, {"d", "-"}, {"-", "l"}, {"h", "h"},
                         {"i", "i"}, {"e", "e"}, {"f", "f"}, {"g", "g"}, {"j", "j"}, {"k", "k"}};
    CHECK(m.size() == 12);
    CHECK(is_alignment_of(m, kS1, kS2));
    CHECK(score_alignment(m, LcsScoring{}) == Score(9));
}

TEST_CASE("seq_align examples") {
    LcsScoring d;
    CHECK(seq_align({}, {}, d).score == Score(0));
    CHECK(seq_align({}, {}, d).alignment.empty());
    CHECK(seq_align(kS1, kS2, d).score == Score(9));
    const Linearization identity = words("a b c d e f g h i j k");
    CHECK(seq_align(identity, kS2, d).score == Score(7));
    CHECK(brute_align(identity, kS2, d) == Score(7));
    CHECK(lcs(kS1, kS2) == 9);
    CHECK(lcs({}, kS2) == 0);
    CHECK(lcs(kS1, kS1) == static_cast<std::int64_t>(kS1.size()));
}

TEST_CASE("traceback prefers diagonal, then a gap in the second row") {
    LcsScoring d;
    auto r = seq_align(words("a"), words("b"), d);
    CHECK(r.alignment == Alignment{{"a", "b"}});
    r = seq_align(words("a b"), words("b"), d);
    CHECK(r.alignment == Alignment{{"a", "-"}, {"b", "b"}});
    TableScoring no_mismatch(Score(1), Score::neg_inf(), Score(0));
    r = seq_align(words("a"), words("b"), no_mismatch);
    CHECK(r.alignment == Alignment{{"a", "-"}, {"-", "b"}});
}

TEST_CASE("load scoring") {
    auto lcs_fn = load_scoring("builtin lcs\n");
    CHECK((*lcs_fn)("a", "a") == Score(1));
    CHECK((*lcs_fn)("a", "b") == Score(0));
    CHECK((*lcs_fn)("a", "-") == Score(0));
    CHECK((*lcs_fn)("-", "a") == Score(0));
    REQUIRE(lcs_fn->bounds());
    CHECK(*lcs_fn->bounds() == ScoreBounds{0, 1});

    auto t = load_scoring("default_match 2\ndefault_mismatch -inf\ndefault_gap -1\n");
    CHECK((*t)("x", "x") == Score(2));
    CHECK((*t)("x", "y").is_neg_inf());
    CHECK((*t)("x", "-") == Score(-1));
    CHECK((*t)("-", "y") == Score(-1));
    CHECK(!t->bounds());

    auto e = load_scoring("# comment\nbounds -1 2\na b 2\n- a -1\nb b -inf\n");
    CHECK((*e)("a", "b") == Score(2));
    CHECK((*e)("b", "a") == Score(0));
    CHECK((*e)("-", "a") == Score(-1));
    CHECK((*e)("b", "b").is_neg_inf());

    CHECK_THROWS_AS(load_scoring("bounds -1 2\na b 5\n"), ScoringFormatError);
    CHECK_THROWS_AS(load_scoring("- - 1\n"), ScoringFormatError);
    CHECK_THROWS_AS(load_scoring("a b\n"), ScoringFormatError);
    CHECK_THROWS_AS(load_scoring("a b x\n"), ScoringFormatError);
    CHECK_THROWS_AS(load_scoring("bounds 1 2\n"), ScoringFormatError);
    CHECK_THROWS_AS(load_scoring("builtin lcs\na a 2\n"), ScoringFormatError);
}

TEST_CASE("random strings: dp equals exhaustive alignment, symmetry, witness validity") {
    Rng rng(3);
    auto lcs_delta = std::make_shared<LcsScoring>();
    for (int i = 0; i < 300; ++i) {
        const auto s1 = random_string(rng, 8, 3);
        const auto s2 = random_string(rng, 8, 3);
        std::shared_ptr<const ScoringFn> delta = lcs_delta;
        if (i % 2) delta = random_bounded_table(rng, 3);
        const auto r = seq_align(s1, s2, *delta);
        CHECK(r.score == brute_align(s1, s2, *delta));
        CHECK(is_alignment_of(r.alignment, s1, s2));
        CHECK(score_alignment(r.alignment, *delta) == r.score);
        CHECK(r.alignment.size() >= std::max(s1.size(), s2.size()));
        CHECK(r.alignment.size() <= s1.size() + s2.size());
        for (const auto& c : r.alignment) CHECK(!(c.top == kGap && c.bottom == kGap));
        TransposedScoring dt(delta);
        CHECK(seq_align(s2, s1, dt).score == r.score);
        CHECK(lcs(s1, s2) == lcs(s2, s1));
        CHECK(lcs(s1, s2) <= static_cast<std::int64_t>(std::min(s1.size(), s2.size())));
        CHECK(Score(lcs(s1, s2)) == seq_align(s1, s2, LcsScoring{}).score);
    }
}

TEST_CASE("score arithmetic") {
    CHECK((Score(3) + Score::neg_inf()).is_neg_inf());
    CHECK(Score::neg_inf() < Score(-1000000));
    CHECK(max(Score(2), Score(5)) == Score(5));
    CHECK(Score::parse("-inf").is_neg_inf());
    CHECK(Score::parse("-12") == Score(-12));
    CHECK(Score(-4).to_string() == "-4");
    CHECK_THROWS_AS(Score(INT64_MAX - 1) + Score(5), std::overflow_error);
}
