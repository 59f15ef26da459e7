#include "doctest.h"

#include "fmbr/brgraph.hpp"
#include "fmbr/fmbr_dp.hpp"
#include "fmbr/hardness.hpp"

#include <algorithm>
#include <set>

using namespace fmbr;

namespace {

X3CInstance inst(std::size_t n, std::vector<std::array<std::uint32_t, 3>> sets) { return {n, std::move(sets)}; }

}  // namespace

TEST_CASE("reduction of the smallest instance") {
    const auto x = inst(1, {{1, 2, 3}, {1, 2, 3}});
    const auto r = reduce_x3c(x);
    CHECK(render_program(r.p1) == "[u1|u2|u3|Y.star|Y.Z].Y");
    CHECK(render_program(r.p2) == "Y.star.u1.u2.u3.Z.Y.star.u1.u2.u3.Z.Y");
    CHECK(r.threshold == 8);
}

TEST_CASE("reduction shape") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto x = gen_random_x3c(2, 3 + seed % 3, seed);
        const auto r = reduce_x3c(x);
        const auto m1 = metrics(r.p1);
        const auto m2 = metrics(r.p2);
        CHECK(m1.depth == 1);
        CHECK(m1.br_factor == 3 * x.n + x.m());
        CHECK(m2.depth == 0);
        CHECK(m2.br_factor == 0);
        CHECK(r.threshold == static_cast<std::int64_t>(3 * x.n + 2 * x.m() + 1));
        CHECK(instruction_count(r.p1) == static_cast<std::size_t>(r.threshold));
    }
}

TEST_CASE("set elements appear in ascending order") {
    const auto r = reduce_x3c(inst(1, {{3, 1, 2}, {2, 3, 1}}));
    CHECK(render_program(r.p2) == "Y.star.u1.u2.u3.Z.Y.star.u1.u2.u3.Z.Y");
}

TEST_CASE("invalid instances") {
    CHECK_THROWS_AS(reduce_x3c(inst(1, {{1, 2, 3}})), std::invalid_argument);
    CHECK_THROWS_AS(reduce_x3c(inst(1, {{1, 2, 3}, {1, 2, 4}})), std::invalid_argument);
    CHECK_THROWS_AS(reduce_x3c(inst(1, {{1, 2, 3}, {1, 1, 2}})), std::invalid_argument);
    CHECK_THROWS_AS(reduce_x3c(inst(0, {{1, 2, 3}})), std::invalid_argument);
}

TEST_CASE("brute-force covers") {
    auto c = solve_x3c_bruteforce(inst(1, {{1, 2, 3}, {1, 2, 3}}));
    REQUIRE(c);
    CHECK(c->indices.size() == 1);

    CHECK_FALSE(solve_x3c_bruteforce(inst(2, {{1, 2, 3}, {1, 2, 4}, {1, 5, 6}})));

    const auto x = inst(2, {{1, 2, 3}, {4, 5, 6}, {1, 4, 5}});
    c = solve_x3c_bruteforce(x);
    REQUIRE(c);
    CHECK(c->indices == std::vector<std::size_t>{1, 2});
    CHECK(verify_cover(x, *c));
    CHECK_FALSE(verify_cover(x, Cover{{1, 3}}));
    CHECK_FALSE(verify_cover(x, Cover{{1}}));
    CHECK_FALSE(verify_cover(x, Cover{{1, 2, 3}}));
    CHECK_THROWS_AS(verify_cover(x, Cover{{1, 4}}), std::out_of_range);
    CHECK_THROWS_AS(verify_cover(x, Cover{{0, 1}}), std::out_of_range);

    const auto big = gen_random_x3c(3, 60, 1);
    CHECK_THROWS_AS(solve_x3c_bruteforce(big, 1000), ResourceCapExceeded);
}

TEST_CASE("generator") {
    const auto a = gen_random_x3c(1, 2, 42);
    CHECK(a.sets == std::vector<std::array<std::uint32_t, 3>>{{1, 2, 3}, {1, 2, 3}});
    CHECK(gen_random_x3c(2, 5, 9) == gen_random_x3c(2, 5, 9));
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto p = gen_random_x3c(2, 4, seed, true);
        CHECK(p.m() == 4);
        auto c = solve_x3c_bruteforce(p);
        REQUIRE(c);
        CHECK(verify_cover(p, *c));
    }
    CHECK_THROWS_AS(gen_random_x3c(2, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_random_x3c(0, 2, 1), std::invalid_argument);
}

TEST_CASE("file format round trip") {
    const auto x = gen_random_x3c(2, 5, 3);
    CHECK(parse_x3c(write_x3c(x)) == x);
    CHECK(write_x3c(inst(1, {{1, 2, 3}, {1, 2, 3}})) == "1 2\n1 2 3\n1 2 3\n");
    CHECK_THROWS_AS(parse_x3c("1 2\n1 2 3\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_x3c("1 2\n1 2 3\n1 2 3\n4"), std::invalid_argument);
}

TEST_CASE("family enumeration") {
    for (std::size_t m = 2; m <= 5; ++m) CHECK(enumerate_x3c_families(1, m).size() == 1);

    // Orbit representatives computed independently: smallest relabelled form
    // of every multiset of three 3-subsets of {1..6}.
    using Family = std::vector<std::array<std::uint32_t, 3>>;
    auto canon = [](Family f) {
        std::array<std::uint32_t, 6> perm{0, 1, 2, 3, 4, 5};
        Family best;
        do {
            Family img;
            for (auto s : f) {
                std::array<std::uint32_t, 3> t{perm[s[0] - 1] + 1, perm[s[1] - 1] + 1, perm[s[2] - 1] + 1};
                std::sort(t.begin(), t.end());
                img.push_back(t);
            }
            std::sort(img.begin(), img.end());
            if (best.empty() || img < best) best = img;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    };
    std::vector<std::array<std::uint32_t, 3>> triples;
    for (std::uint32_t a = 1; a <= 6; ++a)
        for (std::uint32_t b = a + 1; b <= 6; ++b)
            for (std::uint32_t c = b + 1; c <= 6; ++c) triples.push_back({a, b, c});
    std::set<Family> orbits;
    for (std::size_t i = 0; i < triples.size(); ++i)
        for (std::size_t j = i; j < triples.size(); ++j)
            for (std::size_t k = j; k < triples.size(); ++k) orbits.insert(canon({triples[i], triples[j], triples[k]}));

    const auto fam = enumerate_x3c_families(2, 3);
    CHECK(fam.size() == orbits.size());
    std::set<Family> seen;
    for (const auto& f : fam) {
        CHECK_NOTHROW(validate_x3c(f));
        seen.insert(canon(f.sets));
    }
    CHECK(seen == orbits);
}

TEST_CASE("reduction equivalence on small instances") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const bool planted = seed % 2 == 0;
        const auto x = gen_random_x3c(1 + seed % 2, 3 + seed % 2, seed, planted);
        const auto r = reduce_x3c(x);
        const Score v = fmbr_dp(r.p1, r.p2, *r.delta);
        const bool solvable = solve_x3c_bruteforce(x).has_value();
        CHECK(solvable == (v >= Score(r.threshold)));
        CHECK(v <= Score(r.threshold));
        if (solvable) CHECK(v == Score(r.threshold));
    }
}
