#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fmbr {

// Reserved spelling of the alignment gap; never a valid instruction.
inline constexpr std::string_view kGap = "-";

bool is_valid_instruction(std::string_view symbol);

// Abstract program: an instruction, a branching construct [P1 | ... | Pk], or a
// sequential composition P1 . P2 . ... (kept flat, at least two parts).
class Program {
public:
    enum class Kind { instr, branch, seq };

    static Program instr(std::string symbol);
    static Program branch(std::vector<Program> branches);
    // Nested Seq parts are spliced in; a single part is returned unchanged.
    static Program seq(std::vector<Program> parts);

    Kind kind() const { return kind_; }
    bool is_instr() const { return kind_ == Kind::instr; }
    bool is_branch() const { return kind_ == Kind::branch; }
    bool is_seq() const { return kind_ == Kind::seq; }

    const std::string& symbol() const { return symbol_; }
    // Branches of a Branch node or parts of a Seq node.
    const std::vector<Program>& children() const { return children_; }

    friend bool operator==(const Program&, const Program&) = default;

private:
    Program() = default;
    Kind kind_ = Kind::instr;
    std::string symbol_;
    std::vector<Program> children_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t pos);
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// program := term ('.' term)* ; term := IDENT | '[' program ('|' program)* ']'
Program parse_program(std::string_view text);
std::string render_program(const Program& p);

struct Metrics {
    std::size_t size = 0;       // characters over instructions and [ ] | .
    std::size_t br_factor = 0;  // max branch count of any construct
    std::size_t depth = 0;      // max nesting of constructs
    friend bool operator==(const Metrics&, const Metrics&) = default;
};

Metrics metrics(const Program& p);
std::size_t instruction_count(const Program& p);
// Number of Branch nodes; construct ids are their preorder ranks 0..n-1.
std::size_t construct_count(const Program& p);
// Arity of every construct, indexed by construct id.
std::vector<std::size_t> construct_arities(const Program& p);

// Per-construct permutation (i_1, ..., i_k) of 1..k; the reordered construct
// lists original branches i_1, ..., i_k in that order. Indexed by construct id.
struct Reordering {
    std::vector<std::vector<std::size_t>> perms;
    friend bool operator==(const Reordering&, const Reordering&) = default;
};

class ReorderingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Reordering identity_reordering(const Program& p);
void validate_reordering(const Program& p, const Reordering& pi);
Program apply_reordering(const Program& p, const Reordering& pi);
// Single reordering of p equivalent to applying `first` and then `second`.
// `second` is keyed by construct ids of the reordered program p^first, whose
// preorder differs from p's once branches move.
Reordering compose(const Program& p, const Reordering& first, const Reordering& second);

using Linearization = std::vector<std::string>;

Linearization linearize(const Program& p, const Reordering& pi);
Linearization linearize(const Program& p);  // identity reordering

using BigCount = boost::multiprecision::cpp_int;
BigCount count_reorderings(const Program& p);

std::string join(const Linearization& s, std::string_view sep = " ");

}  // namespace fmbr
