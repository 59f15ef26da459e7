#pragma once

#include "fmbr/brgraph.hpp"
#include "fmbr/funcmerg.hpp"
#include "fmbr/signature.hpp"

#include <unordered_map>
#include <vector>

namespace fmbr::detail {

// Interned signatures of one graph with cached updates.
class SignatureTable {
public:
    explicit SignatureTable(const BranchingGraph& g) : g_(g) {
        initial_ = intern(Signature::initial());
        bottom_ = intern(Signature{});
    }

    std::uint32_t initial() const { return initial_; }
    std::uint32_t bottom() const { return bottom_; }
    std::uint64_t top(std::uint32_t id) const { return tops_[id]; }
    const Signature& get(std::uint32_t id) const { return sigs_[id]; }
    std::size_t count() const { return sigs_.size(); }

    std::uint32_t apply(const Move& m, NodeId u, std::uint32_t sig) {
        if (m.op == SigOp::keep) return sig;
        auto& cache = cache_[static_cast<int>(m.op) - 1];
        const std::uint64_t key = (std::uint64_t{sig} << 32) | u;
        if (auto it = cache.find(key); it != cache.end()) return it->second;
        std::uint32_t out = intern(update_signature(m.op, g_, u, sigs_[sig]));
        cache.emplace(key, out);
        return out;
    }

private:
    std::uint32_t intern(Signature s) {
        auto [it, fresh] = ids_.emplace(s, static_cast<std::uint32_t>(sigs_.size()));
        if (fresh) {
            tops_.push_back(s.empty() ? 0 : s.top());
            sigs_.push_back(std::move(s));
        }
        return it->second;
    }

    const BranchingGraph& g_;
    std::vector<Signature> sigs_;
    std::vector<std::uint64_t> tops_;
    std::unordered_map<Signature, std::uint32_t, SignatureHash> ids_;
    std::unordered_map<std::uint64_t, std::uint32_t> cache_[4];
    std::uint32_t initial_ = 0, bottom_ = 0;
};

}  // namespace fmbr::detail
