#include "fmbr/funcmerg.hpp"

namespace fmbr {

namespace {

std::vector<std::uint32_t> intern_labels(const BranchingGraph& g, std::vector<std::string>& symbols,
                                         std::unordered_map<std::string, std::uint32_t>& ids) {
    std::vector<std::uint32_t> out(g.size(), 0);
    for (NodeId u = 0; u < g.size(); ++u) {
        if (g[u].is_br) continue;
        auto [it, fresh] = ids.emplace(g[u].label, static_cast<std::uint32_t>(symbols.size()));
        if (fresh) symbols.push_back(g[u].label);
        out[u] = it->second;
    }
    return out;
}

}  // namespace

PairScores::PairScores(const BranchingGraph& g1, const BranchingGraph& g2, const ScoringFn& delta) {
    std::vector<std::string> s1, s2;
    std::unordered_map<std::string, std::uint32_t> id1, id2;
    sym1_ = intern_labels(g1, s1, id1);
    sym2_ = intern_labels(g2, s2, id2);
    width_ = s2.size();
    pair_.assign(s1.size() * s2.size(), Score::neg_inf());
    for (std::size_t a = 0; a < s1.size(); ++a)
        for (std::size_t b = 0; b < s2.size(); ++b) pair_[a * width_ + b] = delta(s1[a], s2[b]);
    for (const auto& a : s1) del_.push_back(delta(a, kGap));
    for (const auto& b : s2) ins_.push_back(delta(kGap, b));
}

}  // namespace fmbr
