#include "fmbr/corpus.hpp"

#include <algorithm>
#include <set>

namespace fmbr {

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<std::string> alphabet_symbols(std::size_t k) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < k; ++i)
        out.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "s" + std::to_string(i));
    return out;
}

namespace {

// Random composition of n into k positive parts.
std::vector<std::size_t> split(Rng& rng, std::size_t n, std::size_t k) {
    std::set<std::size_t> cuts;
    while (cuts.size() + 1 < k) cuts.insert(static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(n) - 1)));
    std::vector<std::size_t> parts;
    std::size_t prev = 0;
    for (std::size_t c : cuts) {
        parts.push_back(c - prev);
        prev = c;
    }
    parts.push_back(n - prev);
    return parts;
}

Program grow(Rng& rng, const ProgramShape& shape, const std::vector<std::string>& sigma, std::size_t n,
             std::size_t depth_left) {
    const auto roll = uniform(rng, 0, 9);
    if (n == 1 && (depth_left == 0 || roll < 7))
        return Program::instr(sigma[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(sigma.size()) - 1))]);
    if (depth_left > 0 && shape.max_branch > 0 && (n == 1 || roll < 4)) {
        const auto k = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(std::min(shape.max_branch, n))));
        std::vector<Program> branches;
        for (std::size_t part : split(rng, n, k)) branches.push_back(grow(rng, shape, sigma, part, depth_left - 1));
        return Program::branch(std::move(branches));
    }
    const auto k = static_cast<std::size_t>(uniform(rng, 2, static_cast<std::int64_t>(std::min<std::size_t>(4, n))));
    std::vector<Program> parts;
    for (std::size_t part : split(rng, n, k)) parts.push_back(grow(rng, shape, sigma, part, depth_left));
    return Program::seq(std::move(parts));
}

}  // namespace

Program random_program(Rng& rng, const ProgramShape& shape) {
    const auto sigma = alphabet_symbols(std::max<std::size_t>(1, shape.alphabet));
    const auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(std::max<std::size_t>(1, shape.max_instructions))));
    return grow(rng, shape, sigma, n, shape.max_depth);
}

Program random_straight_line(Rng& rng, std::size_t max_len, std::size_t alphabet) {
    return random_program(rng, ProgramShape{max_len, 0, 0, alphabet});
}

std::shared_ptr<const TableScoring> random_bounded_table(Rng& rng, std::size_t alphabet, std::int64_t lower,
                                                         std::int64_t upper) {
    auto table = std::make_shared<TableScoring>(Score(0), Score(0), Score(0), ScoreBounds{lower, upper});
    auto draw = [&] { return uniform(rng, 0, 19) == 0 ? Score::neg_inf() : Score(uniform(rng, lower, upper)); };
    auto symbols = alphabet_symbols(alphabet);
    symbols.emplace_back(kGap);
    for (const auto& a : symbols)
        for (const auto& b : symbols)
            if (a != kGap || b != kGap) table->set(a, b, draw());
    return table;
}

std::vector<CorpusPair> random_pairs(std::uint64_t seed, std::size_t count, const ProgramShape& shape,
                                     std::uint64_t max_product) {
    Rng rng(seed);
    std::vector<CorpusPair> out;
    for (std::size_t i = 0; i < count; ++i) {
        for (;;) {
            Program p1 = random_program(rng, shape);
            Program p2 = random_program(rng, shape);
            if (count_reorderings(p1) * count_reorderings(p2) > max_product) continue;
            CorpusPair pair{std::move(p1), std::move(p2), nullptr, i % 2 == 0};
            if (pair.lcs_scoring)
                pair.delta = std::make_shared<LcsScoring>();
            else
                pair.delta = random_bounded_table(rng, shape.alphabet);
            out.push_back(std::move(pair));
            break;
        }
    }
    return out;
}

}  // namespace fmbr
