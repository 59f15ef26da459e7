#include "fmbr/align.hpp"

#include <fstream>
#include <sstream>

namespace fmbr {

Score Score::parse(const std::string& text) {
    if (text == "-inf") return neg_inf();
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a score: '" + text + "'");
    }
    if (used != text.size()) throw std::invalid_argument("not a score: '" + text + "'");
    return Score(v);
}

TableScoring::TableScoring(Score default_match, Score default_mismatch, Score default_gap,
                           std::optional<ScoreBounds> bounds)
    : match_(default_match), mismatch_(default_mismatch), gap_(default_gap), bounds_(bounds) {
    if (bounds_ && (bounds_->lower > 0 || bounds_->upper < 1))
        throw std::invalid_argument("bounds must satisfy L <= 0 and R >= 1");
    check_bounds(match_, "default_match");
    check_bounds(mismatch_, "default_mismatch");
    check_bounds(gap_, "default_gap");
}

void TableScoring::check_bounds(Score s, const std::string& what) const {
    if (!bounds_ || s.is_neg_inf()) return;
    if (s.value() < bounds_->lower || s.value() > bounds_->upper)
        throw std::invalid_argument(what + " = " + s.to_string() + " lies outside bounds [" +
                                    std::to_string(bounds_->lower) + ", " + std::to_string(bounds_->upper) + "]");
}

void TableScoring::set(std::string a, std::string b, Score s) {
    if (a == kGap && b == kGap) throw std::invalid_argument("(-, -) is not a valid column");
    for (const auto* sym : {&a, &b})
        if (*sym != kGap && !is_valid_instruction(*sym))
            throw std::invalid_argument("invalid symbol '" + *sym + "'");
    check_bounds(s, "entry (" + a + ", " + b + ")");
    table_[{std::move(a), std::move(b)}] = s;
}

Score TableScoring::operator()(std::string_view a, std::string_view b) const {
    if (!table_.empty()) {
        auto it = table_.find(std::pair<std::string, std::string>(a, b));
        if (it != table_.end()) return it->second;
    }
    if (a == kGap || b == kGap) return gap_;
    return a == b ? match_ : mismatch_;
}

std::shared_ptr<const ScoringFn> load_scoring(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;

    std::optional<ScoreBounds> bounds;
    Score match(1), mismatch(0), gap(0);
    std::vector<std::tuple<std::string, std::string, Score, std::size_t>> entries;
    bool builtin_lcs = false;
    bool saw_other = false;

    auto fail = [&](const std::string& msg) -> ScoringFormatError {
        return ScoringFormatError("scoring line " + std::to_string(lineno) + ": " + msg);
    };
    auto score_of = [&](const std::string& tok) {
        try {
            return Score::parse(tok);
        } catch (const std::invalid_argument& e) {
            throw fail(e.what());
        }
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;

        if (tok[0] == "builtin") {
            if (tok.size() != 2 || tok[1] != "lcs") throw fail("only 'builtin lcs' is supported");
            builtin_lcs = true;
        } else if (tok[0] == "bounds") {
            if (tok.size() != 3) throw fail("expected 'bounds L R'");
            Score l = score_of(tok[1]), r = score_of(tok[2]);
            if (!l.is_finite() || !r.is_finite()) throw fail("bounds must be finite");
            if (l.value() > 0 || r.value() < 1) throw fail("bounds must satisfy L <= 0 and R >= 1");
            bounds = ScoreBounds{l.value(), r.value()};
            saw_other = true;
        } else if (tok[0] == "default_match" || tok[0] == "default_mismatch" || tok[0] == "default_gap") {
            if (tok.size() != 2) throw fail("expected '" + tok[0] + " k'");
            Score s = score_of(tok[1]);
            (tok[0] == "default_match" ? match : tok[0] == "default_mismatch" ? mismatch : gap) = s;
            saw_other = true;
        } else {
            if (tok.size() != 3) throw fail("expected 'SYM SYM score'");
            if (tok[0] == kGap && tok[1] == kGap) throw fail("(-, -) entry is not allowed");
            for (std::size_t i = 0; i < 2; ++i)
                if (tok[i] != kGap && !is_valid_instruction(tok[i])) throw fail("invalid symbol '" + tok[i] + "'");
            entries.emplace_back(tok[0], tok[1], score_of(tok[2]), lineno);
            saw_other = true;
        }
    }

    if (builtin_lcs) {
        if (saw_other) throw ScoringFormatError("'builtin lcs' cannot be combined with other lines");
        return std::make_shared<LcsScoring>();
    }

    std::shared_ptr<TableScoring> fn;
    try {
        fn = std::make_shared<TableScoring>(match, mismatch, gap, bounds);
    } catch (const std::invalid_argument& e) {
        throw ScoringFormatError(e.what());
    }
    for (auto& [a, b, s, at] : entries) {
        try {
            fn->set(a, b, s);
        } catch (const std::invalid_argument& e) {
            throw ScoringFormatError("scoring line " + std::to_string(at) + ": " + e.what());
        }
    }
    return fn;
}

std::shared_ptr<const ScoringFn> scoring_from_arg(const std::string& arg) {
    if (arg == "lcs") return std::make_shared<LcsScoring>();
    std::ifstream in(arg);
    if (!in) throw std::runtime_error("cannot open scoring file '" + arg + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return load_scoring(buf.str());
}

Score score_alignment(const Alignment& m, const ScoringFn& delta) {
    Score total(0);
    for (const auto& col : m) total += delta(col.top, col.bottom);
    return total;
}

bool is_alignment_of(const Alignment& m, const Linearization& s1, const Linearization& s2) {
    std::size_t i = 0, j = 0;
    for (const auto& col : m) {
        if (col.top == kGap && col.bottom == kGap) return false;
        if (col.top != kGap) {
            if (i >= s1.size() || s1[i] != col.top) return false;
            ++i;
        }
        if (col.bottom != kGap) {
            if (j >= s2.size() || s2[j] != col.bottom) return false;
            ++j;
        }
    }
    return i == s1.size() && j == s2.size();
}

namespace {

// dp[i][j] = best score aligning s1[i..] with s2[j..].
std::vector<Score> suffix_table(const Linearization& s1, const Linearization& s2, const ScoringFn& delta) {
    const std::size_t n = s1.size(), m = s2.size(), w = m + 1;
    std::vector<Score> dp((n + 1) * w, Score(0));
    for (std::size_t jj = m; jj-- > 0;) dp[n * w + jj] = delta(kGap, s2[jj]) + dp[n * w + jj + 1];
    for (std::size_t ii = n; ii-- > 0;) {
        dp[ii * w + m] = delta(s1[ii], kGap) + dp[(ii + 1) * w + m];
        for (std::size_t jj = m; jj-- > 0;) {
            Score best = delta(s1[ii], s2[jj]) + dp[(ii + 1) * w + jj + 1];
            best = max(best, delta(s1[ii], kGap) + dp[(ii + 1) * w + jj]);
            best = max(best, delta(kGap, s2[jj]) + dp[ii * w + jj + 1]);
            dp[ii * w + jj] = best;
        }
    }
    return dp;
}

}  // namespace

AlignResult seq_align(const Linearization& s1, const Linearization& s2, const ScoringFn& delta) {
    const std::size_t n = s1.size(), m = s2.size(), w = m + 1;
    auto dp = suffix_table(s1, s2, delta);
    AlignResult r{dp[0], {}};
    r.alignment.reserve(n + m);
    std::size_t i = 0, j = 0;
    while (i < n || j < m) {
        Score here = dp[i * w + j];
        if (i < n && j < m && delta(s1[i], s2[j]) + dp[(i + 1) * w + j + 1] == here) {
            r.alignment.push_back({s1[i], s2[j]});
            ++i, ++j;
        } else if (i < n && delta(s1[i], kGap) + dp[(i + 1) * w + j] == here) {
            r.alignment.push_back({s1[i], std::string(kGap)});
            ++i;
        } else {
            r.alignment.push_back({std::string(kGap), s2[j]});
            ++j;
        }
    }
    return r;
}

Score seq_align_score(const Linearization& s1, const Linearization& s2, const ScoringFn& delta) {
    return suffix_table(s1, s2, delta)[0];
}

std::int64_t lcs(const Linearization& s1, const Linearization& s2) {
    return seq_align_score(s1, s2, LcsScoring{}).value();
}

}  // namespace fmbr
