#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace fmbr {

// Integer score with a distinct -inf that absorbs addition. Finite arithmetic
// is overflow-checked and throws std::overflow_error instead of wrapping.
class Score {
public:
    constexpr Score() = default;
    constexpr Score(std::int64_t v) : value_(v) {
        if (v == kNegInfRep) throw std::overflow_error("score value collides with -inf sentinel");
    }

    static constexpr Score neg_inf() {
        Score s;
        s.value_ = kNegInfRep;
        return s;
    }

    constexpr bool is_neg_inf() const { return value_ == kNegInfRep; }
    constexpr bool is_finite() const { return value_ != kNegInfRep; }

    std::int64_t value() const {
        if (is_neg_inf()) throw std::logic_error("value() on -inf score");
        return value_;
    }

    friend Score operator+(Score a, Score b) {
        if (a.is_neg_inf() || b.is_neg_inf()) return neg_inf();
        std::int64_t r;
        if (__builtin_add_overflow(a.value_, b.value_, &r) || r == kNegInfRep)
            throw std::overflow_error("score addition overflow");
        return Score(r);
    }
    Score& operator+=(Score o) { return *this = *this + o; }

    // -inf is the smallest element, so the raw representation orders correctly.
    friend constexpr auto operator<=>(Score a, Score b) = default;
    friend constexpr bool operator==(Score a, Score b) = default;

    std::string to_string() const { return is_neg_inf() ? "-inf" : std::to_string(value_); }

    // Parses a decimal integer or "-inf".
    static Score parse(const std::string& text);

private:
    static constexpr std::int64_t kNegInfRep = std::numeric_limits<std::int64_t>::min();
    std::int64_t value_ = 0;
};

inline Score max(Score a, Score b) { return a < b ? b : a; }

inline std::ostream& operator<<(std::ostream& os, Score s) { return os << s.to_string(); }

}  // namespace fmbr
