#include "fmbr/hardness.hpp"

#include "fmbr/brgraph.hpp"
#include "fmbr/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fmbr {

void validate_x3c(const X3CInstance& inst) {
    if (inst.n < 1) throw std::invalid_argument("x3c: n must be at least 1");
    if (inst.m() <= inst.n) throw std::invalid_argument("x3c: need m > n");
    const auto universe = static_cast<std::uint32_t>(3 * inst.n);
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
        const auto& s = inst.sets[i];
        for (auto e : s)
            if (e < 1 || e > universe)
                throw std::invalid_argument("x3c: set " + std::to_string(i + 1) + " has element " + std::to_string(e) +
                                            " outside 1.." + std::to_string(universe));
        if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2])
            throw std::invalid_argument("x3c: set " + std::to_string(i + 1) + " repeats an element");
    }
}

X3CReduction reduce_x3c(const X3CInstance& inst) {
    validate_x3c(inst);
    auto I = [](const std::string& s) { return Program::instr(s); };
    auto u = [&](std::uint32_t e) { return I("u" + std::to_string(e)); };

    std::vector<Program> branches;
    for (std::uint32_t e = 1; e <= 3 * inst.n; ++e) branches.push_back(u(e));
    for (std::size_t i = 0; i < inst.n; ++i) branches.push_back(Program::seq({I("Y"), I("star")}));
    for (std::size_t i = inst.n; i < inst.m(); ++i) branches.push_back(Program::seq({I("Y"), I("Z")}));

    std::vector<Program> p2{I("Y")};
    for (const auto& s : inst.sets) {
        auto q = s;
        std::sort(q.begin(), q.end());
        p2.push_back(I("star"));
        for (auto e : q) p2.push_back(u(e));
        p2.push_back(I("Z"));
        p2.push_back(I("Y"));
    }

    X3CReduction r{Program::seq({Program::branch(std::move(branches)), I("Y")}), Program::seq(std::move(p2)),
                   std::make_shared<LcsScoring>(),
                   static_cast<std::int64_t>(3 * inst.n + 2 * inst.m() + 1)};
    return r;
}

std::optional<Cover> solve_x3c_bruteforce(const X3CInstance& inst, std::uint64_t cap) {
    validate_x3c(inst);
    const std::size_t m = inst.m(), n = inst.n;
    BigCount combos = 1;
    for (std::size_t i = 0; i < n; ++i) combos = combos * (m - i) / (i + 1);
    if (combos > cap)
        throw ResourceCapExceeded("x3c brute force refused: " + combos.str() + " combinations exceed the cap of " +
                                  std::to_string(cap));

    std::vector<std::uint64_t> masks;
    for (const auto& s : inst.sets) {
        std::uint64_t b = 0;
        for (auto e : s) b |= std::uint64_t{1} << (e - 1);
        masks.push_back(b);
    }
    const std::uint64_t full = (3 * n >= 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << (3 * n)) - 1;

    std::vector<std::size_t> pick(n);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
        std::uint64_t seen = 0;
        bool disjoint = true;
        for (std::size_t i : pick) {
            if (seen & masks[i]) {
                disjoint = false;
                break;
            }
            seen |= masks[i];
        }
        if (disjoint && seen == full) {
            Cover c;
            for (std::size_t i : pick) c.indices.push_back(i + 1);
            return c;
        }
        // Next n-combination of 0..m-1 in lexicographic order.
        std::size_t k = n;
        while (k > 0 && pick[k - 1] == m - n + k - 1) --k;
        if (k == 0) return std::nullopt;
        ++pick[k - 1];
        for (std::size_t i = k; i < n; ++i) pick[i] = pick[i - 1] + 1;
    }
}

bool verify_cover(const X3CInstance& inst, const Cover& c) {
    for (std::size_t i : c.indices)
        if (i < 1 || i > inst.m())
            throw std::out_of_range("cover index " + std::to_string(i) + " outside 1.." + std::to_string(inst.m()));
    if (c.indices.size() != inst.n) return false;
    std::set<std::uint32_t> covered;
    for (std::size_t i : c.indices)
        for (auto e : inst.sets[i - 1])
            if (!covered.insert(e).second) return false;
    return covered.size() == 3 * inst.n;
}

X3CInstance gen_random_x3c(std::size_t n, std::size_t m, std::uint64_t seed, bool planted) {
    if (n < 1 || m <= n) throw std::invalid_argument("x3c generator: need m > n >= 1");
    Rng rng(seed);
    X3CInstance inst{n, {}};
    std::vector<std::uint32_t> universe(3 * n);
    std::iota(universe.begin(), universe.end(), 1);

    auto random_set = [&] {
        std::vector<std::uint32_t> pool = universe;
        std::array<std::uint32_t, 3> s{};
        for (int i = 0; i < 3; ++i) {
            auto k = static_cast<std::size_t>(uniform(rng, i, static_cast<std::int64_t>(pool.size()) - 1));
            std::swap(pool[static_cast<std::size_t>(i)], pool[k]);
            s[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(i)];
        }
        std::sort(s.begin(), s.end());
        return s;
    };

    if (planted) {
        std::vector<std::uint32_t> shuffled = universe;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (std::size_t i = 0; i < n; ++i) {
            std::array<std::uint32_t, 3> s{shuffled[3 * i], shuffled[3 * i + 1], shuffled[3 * i + 2]};
            std::sort(s.begin(), s.end());
            inst.sets.push_back(s);
        }
    }
    while (inst.sets.size() < m) inst.sets.push_back(random_set());
    if (planted) std::shuffle(inst.sets.begin(), inst.sets.end(), rng);
    return inst;
}

X3CInstance parse_x3c(const std::string& text) {
    std::istringstream in(text);
    X3CInstance inst;
    std::size_t m = 0;
    if (!(in >> inst.n >> m)) throw std::invalid_argument("x3c file: expected 'n m' on the first line");
    for (std::size_t i = 0; i < m; ++i) {
        std::array<std::uint32_t, 3> s{};
        if (!(in >> s[0] >> s[1] >> s[2]))
            throw std::invalid_argument("x3c file: expected three indices for set " + std::to_string(i + 1));
        inst.sets.push_back(s);
    }
    std::string extra;
    if (in >> extra) throw std::invalid_argument("x3c file: trailing data '" + extra + "'");
    validate_x3c(inst);
    return inst;
}

std::string write_x3c(const X3CInstance& inst) {
    std::ostringstream out;
    out << inst.n << ' ' << inst.m() << '\n';
    for (const auto& s : inst.sets) out << s[0] << ' ' << s[1] << ' ' << s[2] << '\n';
    return out.str();
}

std::vector<X3CInstance> enumerate_x3c_families(std::size_t n, std::size_t m) {
    if (n < 1 || m <= n) throw std::invalid_argument("x3c families: need m > n >= 1");
    const std::size_t u = 3 * n;
    if (u > 9) throw std::invalid_argument("x3c families: universe too large for exhaustive enumeration");

    std::vector<std::uint32_t> triples;  // bitmasks
    for (std::uint32_t a = 0; a < u; ++a)
        for (std::uint32_t b = a + 1; b < u; ++b)
            for (std::uint32_t c = b + 1; c < u; ++c) triples.push_back((1u << a) | (1u << b) | (1u << c));

    std::vector<std::vector<std::uint32_t>> perms;  // element image tables
    std::vector<std::uint32_t> perm(u);
    std::iota(perm.begin(), perm.end(), 0);
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    auto relabel = [&](std::uint32_t mask, const std::vector<std::uint32_t>& p) {
        std::uint32_t out = 0;
        for (std::uint32_t e = 0; e < u; ++e)
            if ((mask >> e) & 1) out |= 1u << p[e];
        return out;
    };

    std::vector<X3CInstance> out;
    std::vector<std::size_t> idx(m, 0);  // nondecreasing indices into triples
    std::vector<std::uint32_t> family(m), image(m);
    for (;;) {
        for (std::size_t i = 0; i < m; ++i) family[i] = triples[idx[i]];
        std::sort(family.begin(), family.end());
        bool canonical = true;
        for (const auto& p : perms) {
            for (std::size_t i = 0; i < m; ++i) image[i] = relabel(family[i], p);
            std::sort(image.begin(), image.end());
            if (image < family) {
                canonical = false;
                break;
            }
        }
        if (canonical) {
            X3CInstance inst{n, {}};
            for (std::uint32_t mask : family) {
                std::array<std::uint32_t, 3> s{};
                std::size_t k = 0;
                for (std::uint32_t e = 0; e < u; ++e)
                    if ((mask >> e) & 1) s[k++] = e + 1;
                inst.sets.push_back(s);
            }
            out.push_back(std::move(inst));
        }
        std::size_t k = m;
        while (k > 0 && idx[k - 1] == triples.size() - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t i = k; i < m; ++i) idx[i] = idx[k - 1];
    }
    return out;
}

}  // namespace fmbr
