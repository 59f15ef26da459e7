#pragma once

#include "fmbr/ast.hpp"
#include "fmbr/score.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fmbr {

struct ScoreBounds {
    std::int64_t lower = 0;  // L <= 0
    std::int64_t upper = 1;  // R >= 1
    friend bool operator==(const ScoreBounds&, const ScoreBounds&) = default;
};

// Oracle access to delta over (symbol-or-gap)^2; kGap stands for the gap.
// Never queried with (gap, gap).
class ScoringFn {
public:
    virtual ~ScoringFn() = default;
    virtual Score operator()(std::string_view a, std::string_view b) const = 0;
    virtual std::optional<ScoreBounds> bounds() const = 0;
};

class LcsScoring final : public ScoringFn {
public:
    Score operator()(std::string_view a, std::string_view b) const override {
        return (a == b && a != kGap) ? Score(1) : Score(0);
    }
    std::optional<ScoreBounds> bounds() const override { return ScoreBounds{0, 1}; }
};

class TableScoring final : public ScoringFn {
public:
    TableScoring(Score default_match, Score default_mismatch, Score default_gap,
                 std::optional<ScoreBounds> bounds = std::nullopt);

    // Explicit entry; overrides the defaults for that ordered pair.
    void set(std::string a, std::string b, Score s);

    Score operator()(std::string_view a, std::string_view b) const override;
    std::optional<ScoreBounds> bounds() const override { return bounds_; }

    Score default_match() const { return match_; }
    Score default_mismatch() const { return mismatch_; }
    Score default_gap() const { return gap_; }
    const std::map<std::pair<std::string, std::string>, Score>& entries() const { return table_; }

private:
    void check_bounds(Score s, const std::string& what) const;

    Score match_, mismatch_, gap_;
    std::optional<ScoreBounds> bounds_;
    std::map<std::pair<std::string, std::string>, Score> table_;
};

// delta^T(a, b) = delta(b, a).
class TransposedScoring final : public ScoringFn {
public:
    explicit TransposedScoring(std::shared_ptr<const ScoringFn> inner) : inner_(std::move(inner)) {}
    Score operator()(std::string_view a, std::string_view b) const override { return (*inner_)(b, a); }
    std::optional<ScoreBounds> bounds() const override { return inner_->bounds(); }

private:
    std::shared_ptr<const ScoringFn> inner_;
};

class ScoringFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Line-oriented scoring file, or the text "builtin lcs".
std::shared_ptr<const ScoringFn> load_scoring(std::string_view text);
// "lcs" or a path to a scoring file.
std::shared_ptr<const ScoringFn> scoring_from_arg(const std::string& arg);

struct Column {
    std::string top;     // symbol of S1 or kGap
    std::string bottom;  // symbol of S2 or kGap
    friend bool operator==(const Column&, const Column&) = default;
};

using Alignment = std::vector<Column>;

Score score_alignment(const Alignment& m, const ScoringFn& delta);
// True iff no (gap, gap) column exists and the rows spell s1 and s2.
bool is_alignment_of(const Alignment& m, const Linearization& s1, const Linearization& s2);

struct AlignResult {
    Score score;
    Alignment alignment;
};

// Suffix dynamic program; ties in the traceback prefer the match column, then
// (S1 symbol, gap), then (gap, S2 symbol).
AlignResult seq_align(const Linearization& s1, const Linearization& s2, const ScoringFn& delta);
Score seq_align_score(const Linearization& s1, const Linearization& s2, const ScoringFn& delta);
std::int64_t lcs(const Linearization& s1, const Linearization& s2);

}  // namespace fmbr
