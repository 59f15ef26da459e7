#pragma once

#include "fmbr/brgraph.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fmbr {

// Stack of records, one per enclosing construct of the current node plus one
// for the node itself. Record bit j-1 set means branch j is fully traversed.
struct Signature {
    std::vector<std::uint64_t> records;  // back() is the top

    static Signature initial() { return Signature{{0}}; }

    std::size_t height() const { return records.size(); }
    bool empty() const { return records.empty(); }
    std::uint64_t top() const { return records.back(); }

    friend bool operator==(const Signature&, const Signature&) = default;
};

struct SignatureHash {
    std::size_t operator()(const Signature& s) const noexcept;
};

enum class SigOp : std::uint8_t { keep, en, seq, ex, done };

class SignatureError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// en: push an empty record. seq: replace the top with an empty record.
// ex: pop, then mark u's branch as traversed in the enclosing record.
// done: pop the last record (u must be the right node). keep: unchanged.
Signature update_signature(SigOp kind, const BranchingGraph& g, NodeId u, Signature x);

// Whether v, a branch entry of br node u, is marked traversed in x's top record.
bool signature_contains(const BranchingGraph& g, NodeId u, NodeId v, const Signature& x);

inline std::uint64_t full_record(std::size_t arity) {
    return arity >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << arity) - 1;
}

}  // namespace fmbr
