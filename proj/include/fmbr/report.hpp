#pragma once

#include "fmbr/align.hpp"
#include "fmbr/ast.hpp"
#include "fmbr/fmbr_dp.hpp"
#include "fmbr/wpds.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fmbr {

enum class Algorithm { brute, dp, wpds };

Algorithm parse_algorithm(const std::string& name);
std::string to_string(Algorithm a);

struct MergeReport {
    Score score;
    Algorithm algorithm = Algorithm::dp;
    Algorithm witness_algorithm = Algorithm::dp;
    Reordering pi1, pi2;
    Alignment alignment;
    double timing_ms = 0;
    std::optional<DpStats> dp_stats;
    std::optional<WpdsResult> wpds;
};

// Score plus witness. The pushdown algorithm reports its own score with the
// reorderings and alignment of the memoized solver.
MergeReport merge_programs(const Program& p1, const Program& p2, const ScoringFn& delta, Algorithm algo,
                           std::uint64_t brute_cap = kDefaultEnumerationCap);

nlohmann::json score_to_json(Score s);
nlohmann::json to_json(const MergeReport& r);

enum class LineTag { shared, only_p1, only_p2 };

struct ListingLine {
    LineTag tag;
    std::string instruction;
};

// Alignment order; a column pairing two different instructions yields two lines.
std::vector<ListingLine> merged_listing(const Alignment& m);
std::string render_listing(const std::vector<ListingLine>& lines);

}  // namespace fmbr
