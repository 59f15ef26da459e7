#include "fmbr/signature.hpp"

#include <string>

namespace fmbr {

std::size_t SignatureHash::operator()(const Signature& s) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ s.records.size();
    for (std::uint64_t r : s.records) {
        h ^= r + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
}

Signature update_signature(SigOp kind, const BranchingGraph& g, NodeId u, Signature x) {
    const auto& node = g[u];
    const auto need_height = [&](std::size_t h, const char* op) {
        if (x.height() < h)
            throw SignatureError(std::string(op) + " on node " + std::to_string(u) + " needs height >= " +
                                 std::to_string(h) + ", got " + std::to_string(x.height()));
    };
    switch (kind) {
    case SigOp::keep:
        break;
    case SigOp::en:
        if (!node.is_br) throw SignatureError("en on a non-branching node");
        need_height(1, "en");
        x.records.push_back(0);
        break;
    case SigOp::seq:
        if (node.next_kind != EdgeKind::seq) throw SignatureError("seq without a sequential edge");
        need_height(1, "seq");
        x.records.back() = 0;
        break;
    case SigOp::ex:
        if (node.next_kind != EdgeKind::exit) throw SignatureError("ex without a branch-exit edge");
        need_height(2, "ex");
        x.records.pop_back();
#ifdef FMBR_FAULT_UPD_EX
        // Deliberately wrong: marks every branch of the enclosing construct.
        x.records.back() |= full_record(g[node.next].entries.size());
#else
        x.records.back() |= std::uint64_t{1} << (node.exit_index - 1);
#endif
        break;
    case SigOp::done:
        if (u != g.right) throw SignatureError("done away from the right node");
        if (x.height() != 1) throw SignatureError("done needs a single record");
        x.records.pop_back();
        break;
    }
    return x;
}

bool signature_contains(const BranchingGraph& g, NodeId u, NodeId v, const Signature& x) {
    std::uint32_t j = g.branch_index(u, v);
    if (j == 0) throw SignatureError("node " + std::to_string(v) + " is not a branch of " + std::to_string(u));
    if (x.empty()) throw SignatureError("contains on an empty signature");
    return (x.top() >> (j - 1)) & 1;
}

}  // namespace fmbr
