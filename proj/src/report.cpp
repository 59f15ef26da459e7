#include "fmbr/report.hpp"

#include "fmbr/brgraph.hpp"

#include <chrono>
#include <stdexcept>

namespace fmbr {

Algorithm parse_algorithm(const std::string& name) {
    if (name == "brute") return Algorithm::brute;
    if (name == "dp") return Algorithm::dp;
    if (name == "wpds") return Algorithm::wpds;
    throw std::invalid_argument("unknown algorithm '" + name + "' (expected brute, dp or wpds)");
}

std::string to_string(Algorithm a) {
    switch (a) {
    case Algorithm::brute: return "brute";
    case Algorithm::dp: return "dp";
    case Algorithm::wpds: return "wpds";
    }
    return "?";
}

MergeReport merge_programs(const Program& p1, const Program& p2, const ScoringFn& delta, Algorithm algo,
                           std::uint64_t brute_cap) {
    const auto start = std::chrono::steady_clock::now();
    MergeReport r;
    r.algorithm = algo;
    switch (algo) {
    case Algorithm::brute: {
        auto w = fmbr_bruteforce_witness(p1, p2, delta, brute_cap);
        r.score = w.score;
        r.pi1 = std::move(w.pi1);
        r.pi2 = std::move(w.pi2);
        r.alignment = std::move(w.alignment);
        r.witness_algorithm = Algorithm::brute;
        break;
    }
    case Algorithm::dp: {
        FmbrSolver solver(p1, p2, delta);
        auto w = solver.witness();
        r.score = w.score;
        r.pi1 = std::move(w.pi1);
        r.pi2 = std::move(w.pi2);
        r.alignment = std::move(w.alignment);
        r.dp_stats = solver.stats();
        break;
    }
    case Algorithm::wpds: {
        r.wpds = fmbr_wpds_detailed(p1, p2, delta);
        r.score = r.wpds->score;
        auto w = fmbr_witness(p1, p2, delta);
        if (w.score != r.score)
            throw std::logic_error("pushdown score " + r.score.to_string() + " differs from the witness score " +
                                   w.score.to_string());
        r.pi1 = std::move(w.pi1);
        r.pi2 = std::move(w.pi2);
        r.alignment = std::move(w.alignment);
        break;
    }
    }
    r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

nlohmann::json score_to_json(Score s) {
    if (s.is_neg_inf()) return "-inf";
    return s.value();
}

nlohmann::json to_json(const MergeReport& r) {
    nlohmann::json j;
    j["score"] = score_to_json(r.score);
    j["algorithm"] = to_string(r.algorithm);
    j["witness_algorithm"] = to_string(r.witness_algorithm);
    j["reorderings"] = {{"p1", r.pi1.perms}, {"p2", r.pi2.perms}};
    auto cols = nlohmann::json::array();
    for (const auto& c : r.alignment) cols.push_back({c.top, c.bottom});
    j["alignment"] = cols;
    j["timing_ms"] = r.timing_ms;
    if (r.dp_stats) {
        const auto& s = *r.dp_stats;
        j["dp_stats"] = {{"states_visited", s.states_visited},
                         {"signatures_per_node_p1", s.signatures_per_node1},
                         {"signatures_per_node_p2", s.signatures_per_node2},
                         {"height_violations", s.height_violations},
                         {"state_bound", static_cast<double>(s.state_bound)}};
    }
    if (r.wpds) {
        const auto& w = *r.wpds;
        j["wpds_stats"] = {{"main_states", w.s2.main_states},
                           {"aux_states", w.s2.aux_states},
                           {"rules", w.s2.rules},
                           {"stack_symbols", w.s2.symbols},
                           {"state_bound", static_cast<double>(w.s2.state_bound)},
                           {"automaton_transitions", w.saturation.transitions},
                           {"worklist_pops", w.saturation.worklist_pops},
                           {"max_updates_per_transition", w.saturation.max_updates_per_transition},
                           {"update_cap", w.update_cap}};
    }
    return j;
}

std::vector<ListingLine> merged_listing(const Alignment& m) {
    std::vector<ListingLine> out;
    for (const auto& c : m) {
        if (c.top != kGap && c.top == c.bottom) {
            out.push_back({LineTag::shared, c.top});
            continue;
        }
        if (c.top != kGap) out.push_back({LineTag::only_p1, c.top});
        if (c.bottom != kGap) out.push_back({LineTag::only_p2, c.bottom});
    }
    return out;
}

std::string render_listing(const std::vector<ListingLine>& lines) {
    std::string out;
    for (const auto& l : lines) {
        switch (l.tag) {
        case LineTag::shared: out += "shared   "; break;
        case LineTag::only_p1: out += "only-P1  "; break;
        case LineTag::only_p2: out += "only-P2  "; break;
        }
        out += l.instruction + '\n';
    }
    return out;
}

}  // namespace fmbr
