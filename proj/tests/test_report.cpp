#include "doctest.h"

#include "fmbr/report.hpp"
#include "fmbr/selftest.hpp"
#include "test_util.hpp"

using namespace fmbr;

namespace {

Linearization rows(const std::vector<ListingLine>& lines, LineTag only) {
    Linearization out;
    for (const auto& l : lines)
        if (l.tag == LineTag::shared || l.tag == only) out.push_back(l.instruction);
    return out;
}

}  // namespace

TEST_CASE("algorithm names") {
    CHECK(parse_algorithm("wpds") == Algorithm::wpds);
    CHECK(to_string(Algorithm::brute) == "brute");
    CHECK_THROWS_AS(parse_algorithm("fast"), std::invalid_argument);
}

TEST_CASE("merge report on the running example") {
    const Program p1 = parse_program(testing::kPf1), p2 = parse_program(testing::kPf2);
    const LcsScoring lcs_delta;
    for (auto algo : {Algorithm::brute, Algorithm::dp, Algorithm::wpds}) {
        const auto r = merge_programs(p1, p2, lcs_delta, algo);
        CHECK(r.score == Score(9));
        CHECK(score_alignment(r.alignment, lcs_delta) == r.score);
        CHECK(is_alignment_of(r.alignment, linearize(p1, r.pi1), linearize(p2, r.pi2)));
        const auto j = to_json(r);
        CHECK(j["score"] == 9);
        CHECK(j["algorithm"] == to_string(algo));
        CHECK(j.contains("dp_stats") == (algo == Algorithm::dp));
        CHECK(j.contains("wpds_stats") == (algo == Algorithm::wpds));
    }
    CHECK(score_to_json(Score::neg_inf()) == "-inf");
}

TEST_CASE("json is stable apart from timing") {
    const Program p1 = parse_program(testing::kPf1), p2 = parse_program(testing::kPf2);
    auto a = to_json(merge_programs(p1, p2, LcsScoring{}, Algorithm::dp));
    auto b = to_json(merge_programs(p1, p2, LcsScoring{}, Algorithm::dp));
    a.erase("timing_ms");
    b.erase("timing_ms");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("merged listing") {
    const Program p1 = parse_program(testing::kPf1), p2 = parse_program(testing::kPf2);
    const auto w = fmbr_witness(p1, p2, LcsScoring{});
    const auto lines = merged_listing(w.alignment);
    std::size_t shared = 0, only1 = 0, only2 = 0;
    for (const auto& l : lines) {
        shared += l.tag == LineTag::shared;
        only1 += l.tag == LineTag::only_p1;
        only2 += l.tag == LineTag::only_p2;
    }
    CHECK(shared == 9);
    CHECK(only1 == 2);
    CHECK(only2 == 1);
    CHECK(rows(lines, LineTag::only_p1) == linearize(p1, w.pi1));
    CHECK(rows(lines, LineTag::only_p2) == linearize(p2, w.pi2));

    const Alignment mismatch{{"a", "b"}, {"c", "-"}, {"-", "d"}, {"e", "e"}};
    CHECK(render_listing(merged_listing(mismatch)) ==
          "only-P1  a\nonly-P2  b\nonly-P1  c\nonly-P2  d\nshared   e\n");
}

TEST_CASE("selftest formatting") {
    CriterionResult r{3, "agreement", true, "5 pairs, 0 failed", 1.5, 300};
    CHECK(format_result(r) == "criterion  3 PASS  agreement (1.50 s, limit 300 s): 5 pairs, 0 failed");
    r.passed = false;
    r.limit_seconds = 0;
    CHECK(format_result(r) == "criterion  3 FAIL  agreement (1.50 s): 5 pairs, 0 failed");
}
