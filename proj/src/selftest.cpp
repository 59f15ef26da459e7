#include "fmbr/selftest.hpp"

#include "fmbr/brgraph.hpp"
#include "fmbr/corpus.hpp"
#include "fmbr/fmbr_dp.hpp"
#include "fmbr/hardness.hpp"
#include "fmbr/wpds.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <sstream>

namespace fmbr {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failures for one criterion; keeps the first few messages.
struct Tally {
    std::uint64_t checked = 0;
    std::uint64_t failed = 0;
    std::vector<std::string> notes;

    void expect(bool ok, const std::function<std::string()>& what) {
        ++checked;
        if (ok) return;
        ++failed;
        if (notes.size() < 3) notes.push_back(what());
    }
    std::string summary(const std::string& unit) const {
        std::string s = std::to_string(checked) + " " + unit + ", " + std::to_string(failed) + " failed";
        for (const auto& n : notes) s += "; " + n;
        return s;
    }
};

bool witness_rescores(const Program& p1, const Program& p2, const ScoringFn& delta, const Reordering& pi1,
                      const Reordering& pi2, const Alignment& m, Score score) {
    validate_reordering(p1, pi1);
    validate_reordering(p2, pi2);
    return is_alignment_of(m, linearize(p1, pi1), linearize(p2, pi2)) && score_alignment(m, delta) == score;
}

std::string pair_text(const Program& p1, const Program& p2) {
    return render_program(p1) + " vs " + render_program(p2);
}

Linearization words(const std::string& s) {
    Linearization out;
    std::istringstream in(s);
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

}  // namespace

SelftestConfig SelftestConfig::quick(std::uint64_t seed) {
    SelftestConfig c;
    c.seed = seed;
    c.corpus_pairs = 100;
    c.max_m_two = 4;
    c.random_x3c = 10;
    return c;
}

SelftestConfig SelftestConfig::full(std::uint64_t seed) {
    SelftestConfig c;
    c.seed = seed;
    return c;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream out;
    out << "criterion " << std::setw(2) << r.id << " " << (r.passed ? "PASS" : "FAIL") << "  " << r.title << " ("
        << std::fixed << std::setprecision(r.seconds < 0.01 ? 4 : 2) << r.seconds << " s";
    if (r.limit_seconds > 0) out << ", limit " << std::defaultfloat << std::setprecision(6) << r.limit_seconds << " s";
    out << "): " << r.detail;
    return out.str();
}

std::vector<CriterionResult> run_selftest(const SelftestConfig& cfg, std::ostream* log) {
    std::vector<CriterionResult> results(10);
    const char* titles[10] = {"LCS of the running strings",
                              "running example: brute = dp = wpds = 9, P1 outer branches swapped",
                              "brute, dp and wpds agree on the random corpus",
                              "x3c solvable iff merge score reaches the threshold",
                              "dp state count within the signature bound",
                              "max-plus semiring axioms",
                              "pushdown path weights within the diversity range",
                              "straight-line pairs reduce to plain alignment",
                              "self merge scores the instruction count",
                              "witnesses re-score to the reported value"};
    const double limits[10] = {0.001, 1.0, 300.0, 600.0, 0, 1.0, 0, 0, 0, 0};
    for (int i = 0; i < 10; ++i) {
        results[static_cast<std::size_t>(i)].id = i + 1;
        results[static_cast<std::size_t>(i)].title = titles[i];
        results[static_cast<std::size_t>(i)].limit_seconds = limits[i];
    }
    Tally witness;

    auto run = [&](int id, const std::function<std::string(bool&)>& body) {
        auto& r = results[static_cast<std::size_t>(id - 1)];
        const auto t0 = Clock::now();
        bool ok = true;
        try {
            r.detail = body(ok);
        } catch (const std::exception& e) {
            ok = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = seconds_since(t0);
        if (r.limit_seconds > 0 && r.seconds > r.limit_seconds) {
            ok = false;
            r.detail += "; time limit exceeded";
        }
        r.passed = ok;
        if (log) *log << format_result(r) << std::endl;
    };

    const LcsScoring lcs_delta;

    run(1, [&](bool& ok) {
        const auto s1 = words("a b c d h i e f g j k");
        const auto s2 = words("a c l h i e f g j k");
        const auto t0 = Clock::now();
        const std::int64_t v = lcs(s1, s2);
        const double dt = seconds_since(t0);
        ok = v == 9 && dt < 0.001;
        return "lcs = " + std::to_string(v);
    });

    run(2, [&](bool& ok) {
        const Program p1 = parse_program("a.b.c.d.[e.[f.g]|h.i].j.k");
        const Program p2 = parse_program("a.c.l.[h.i|e.[f.g]].j.k");
        const Score brute = fmbr_bruteforce(p1, p2, lcs_delta);
        const Score dp = fmbr_dp(p1, p2, lcs_delta);
        const Score wp = fmbr_wpds(p1, p2, lcs_delta);
        const auto w = fmbr_witness(p1, p2, lcs_delta);
        const bool swapped = !w.pi1.perms.empty() && w.pi1.perms[0] == std::vector<std::size_t>{2, 1};
        witness.expect(witness_rescores(p1, p2, lcs_delta, w.pi1, w.pi2, w.alignment, w.score),
                       [] { return std::string("running example witness"); });
        ok = brute == Score(9) && dp == Score(9) && wp == Score(9) && w.score == Score(9) && swapped;
        return "brute " + brute.to_string() + ", dp " + dp.to_string() + ", wpds " + wp.to_string() +
               ", witness pi1 " + (swapped ? "swaps" : "keeps") + " the outer construct";
    });

    // Criteria 3, 5, 7 share one pass over the corpus.
    Tally bound, diversity;
    std::string corpus_shape;
    run(3, [&](bool& ok) {
        Tally agree;
        const auto corpus = random_pairs(cfg.seed, cfg.corpus_pairs);
        std::size_t max_b = 0, max_d = 0, tables = 0;
        for (const auto& pair : corpus) {
            const auto& d = *pair.delta;
            const auto m1 = metrics(pair.p1), m2 = metrics(pair.p2);
            max_b = std::max({max_b, m1.br_factor, m2.br_factor});
            max_d = std::max({max_d, m1.depth, m2.depth});
            tables += pair.lcs_scoring ? 0 : 1;

            const auto bw = fmbr_bruteforce_witness(pair.p1, pair.p2, d);
            FmbrSolver solver(pair.p1, pair.p2, d);
            const auto w = solver.witness();
            const auto st = solver.stats();
            const S2System s = build_wpds_s2(pair.p1, pair.p2, d);
            SaturationStats sat;
            const Score wp = reach(s.wpds, s.initial, s.target, SaturationOptions{s.diversity()}, &sat);
            const auto cg = config_graph_reach(s.wpds, s.initial, s.target);

            agree.expect(bw.score == w.score && w.score == wp && cg.value == wp, [&] {
                return pair_text(pair.p1, pair.p2) + ": brute " + bw.score.to_string() + " dp " +
                       w.score.to_string() + " wpds " + wp.to_string() + " config graph " + cg.value.to_string();
            });
            bound.expect(static_cast<long double>(st.states_visited) <= st.state_bound && st.height_violations == 0,
                         [&] { return pair_text(pair.p1, pair.p2) + ": " + std::to_string(st.states_visited) + " states"; });
            bool in_range = sat.max_updates_per_transition <= s.diversity();
            if (cg.max_finite)
                in_range = in_range && cg.min_finite->value() >= s.weight_lower() &&
                           cg.max_finite->value() <= s.weight_upper();
            diversity.expect(in_range, [&] {
                return pair_text(pair.p1, pair.p2) + ": weights [" +
                       (cg.min_finite ? cg.min_finite->to_string() : "none") + ", " +
                       (cg.max_finite ? cg.max_finite->to_string() : "none") + "] vs [" +
                       std::to_string(s.weight_lower()) + ", " + std::to_string(s.weight_upper()) + "]";
            });
            witness.expect(witness_rescores(pair.p1, pair.p2, d, w.pi1, w.pi2, w.alignment, w.score) &&
                               witness_rescores(pair.p1, pair.p2, d, bw.pi1, bw.pi2, bw.alignment, bw.score),
                           [&] { return pair_text(pair.p1, pair.p2); });
        }
        corpus_shape = "max b " + std::to_string(max_b) + ", max d " + std::to_string(max_d) + ", " +
                       std::to_string(tables) + " bounded tables";
        ok = agree.failed == 0 && agree.checked == cfg.corpus_pairs;
        return agree.summary("pairs") + " (" + corpus_shape + ")";
    });

    run(4, [&](bool& ok) {
        Tally eq;
        std::vector<X3CInstance> instances;
        for (std::size_t m = 2; m <= 5; ++m)
            for (auto& f : enumerate_x3c_families(1, m)) instances.push_back(std::move(f));
        for (std::size_t m = 3; m <= cfg.max_m_two; ++m)
            for (auto& f : enumerate_x3c_families(2, m)) instances.push_back(std::move(f));
        const std::size_t exhaustive = instances.size();
        Rng rng(cfg.seed ^ 0x5eedull);
        for (std::size_t i = 0; i < cfg.random_x3c; ++i) {
            const auto n = static_cast<std::size_t>(uniform(rng, 1, 2));
            const auto m = static_cast<std::size_t>(uniform(rng, static_cast<std::int64_t>(n) + 1, 5));
            instances.push_back(gen_random_x3c(n, m, rng(), i % 2 == 0));
        }
        std::size_t solvable_count = 0;
        for (const auto& inst : instances) {
            const auto cover = solve_x3c_bruteforce(inst);
            if (cover && !verify_cover(inst, *cover)) throw std::logic_error("brute force returned an invalid cover");
            const auto r = reduce_x3c(inst);
            FmbrSolver solver(r.p1, r.p2, *r.delta);
            const auto w = solver.witness();
            const Score tau(r.threshold);
            solvable_count += cover ? 1 : 0;
            eq.expect(cover.has_value() == (w.score >= tau) && (!cover || w.score == tau), [&] {
                return write_x3c(inst) + " solvable=" + (cover ? "yes" : "no") + " score " + w.score.to_string() +
                       " threshold " + tau.to_string();
            });
            witness.expect(witness_rescores(r.p1, r.p2, *r.delta, w.pi1, w.pi2, w.alignment, w.score),
                           [&] { return "x3c " + write_x3c(inst); });
        }
        ok = eq.failed == 0;
        return eq.summary("instances") + " (" + std::to_string(exhaustive) + " exhaustive classes, " +
               std::to_string(cfg.random_x3c) + " random, " + std::to_string(solvable_count) + " solvable)";
    });

    run(5, [&](bool& ok) {
        ok = bound.failed == 0 && bound.checked == cfg.corpus_pairs;
        return bound.summary("pairs");
    });

    run(6, [&](bool& ok) {
        Rng rng(cfg.seed ^ 0xabcdull);
        auto draw = [&] {
            switch (uniform(rng, 0, 9)) {
            case 0: return Score::neg_inf();
            case 1: return Score(0);
            default: return Score(uniform(rng, -1'000'000'000, 1'000'000'000));
            }
        };
        std::vector<std::array<Score, 3>> triples(cfg.semiring_triples);
        std::size_t with_inf = 0;
        for (auto& t : triples) {
            t = {draw(), draw(), draw()};
            with_inf += (t[0].is_neg_inf() || t[1].is_neg_inf() || t[2].is_neg_inf()) ? 1 : 0;
        }
        const auto report = check_semiring_axioms<MaxPlus>(triples);
        ok = report.ok() && with_inf > 0;
        std::string s = std::to_string(triples.size()) + " triples (" + std::to_string(with_inf) + " with -inf), " +
                        std::to_string(report.instances) + " axiom instances, " +
                        std::to_string(report.violations.size()) + " violations";
        if (!report.ok()) s += "; " + report.violations.front();
        return s;
    });

    run(7, [&](bool& ok) {
        ok = diversity.failed == 0 && diversity.checked == cfg.corpus_pairs;
        return diversity.summary("pairs");
    });

    run(8, [&](bool& ok) {
        Tally t;
        Rng rng(cfg.seed ^ 0x51ull);
        for (std::size_t i = 0; i < cfg.straight_pairs; ++i) {
            const Program a = random_straight_line(rng, 12, 4);
            const Program b = random_straight_line(rng, 12, 4);
            std::shared_ptr<const ScoringFn> d = std::make_shared<LcsScoring>();
            if (i % 2) d = random_bounded_table(rng, 4);
            const Score dp = fmbr_dp(a, b, *d);
            const Score sa = seq_align(linearize(a), linearize(b), *d).score;
            t.expect(dp == sa, [&] { return pair_text(a, b) + ": dp " + dp.to_string() + " sa " + sa.to_string(); });
        }
        ok = t.failed == 0;
        return t.summary("pairs");
    });

    run(9, [&](bool& ok) {
        Tally t;
        Rng rng(cfg.seed ^ 0x99ull);
        for (std::size_t i = 0; i < cfg.self_programs; ++i) {
            const Program p = random_program(rng, {});
            const Score v = fmbr_dp(p, p, lcs_delta);
            t.expect(v == Score(static_cast<std::int64_t>(instruction_count(p))),
                     [&] { return render_program(p) + ": " + v.to_string(); });
        }
        ok = t.failed == 0;
        return t.summary("programs");
    });

    run(10, [&](bool& ok) {
        ok = witness.failed == 0 && witness.checked > 0;
        return witness.summary("witnesses");
    });

    return results;
}

}  // namespace fmbr
