#include "fmbr/ast.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <utility>

namespace fmbr {

bool is_valid_instruction(std::string_view symbol) {
    if (symbol.empty()) return false;
    return std::all_of(symbol.begin(), symbol.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

Program Program::instr(std::string symbol) {
    if (!is_valid_instruction(symbol))
        throw std::invalid_argument("invalid instruction token '" + symbol + "'");
    Program p;
    p.kind_ = Kind::instr;
    p.symbol_ = std::move(symbol);
    return p;
}

Program Program::branch(std::vector<Program> branches) {
    if (branches.empty()) throw std::invalid_argument("branching construct needs at least one branch");
    Program p;
    p.kind_ = Kind::branch;
    p.children_ = std::move(branches);
    return p;
}

Program Program::seq(std::vector<Program> parts) {
    if (parts.empty()) throw std::invalid_argument("empty sequence");
    if (parts.size() == 1) return std::move(parts.front());
    Program p;
    p.kind_ = Kind::seq;
    for (auto& part : parts) {
        if (part.is_seq()) {
            for (auto& inner : part.children_) p.children_.push_back(std::move(inner));
        } else {
            p.children_.push_back(std::move(part));
        }
    }
    return p;
}

ParseError::ParseError(const std::string& what, std::size_t pos)
    : std::runtime_error("parse error at offset " + std::to_string(pos) + ": " + what), pos_(pos) {}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Program parse() {
        skip_ws();
        if (at_end()) throw ParseError("empty program", pos_);
        Program p = program();
        skip_ws();
        if (!at_end()) {
            if (text_[pos_] == ']') throw ParseError("unbalanced ']'", pos_);
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        }
        return p;
    }

private:
    Program program() {
        std::vector<Program> parts;
        parts.push_back(term());
        while (peek() == '.') {
            ++pos_;
            parts.push_back(term());
        }
        return Program::seq(std::move(parts));
    }

    Program term() {
        skip_ws();
        if (at_end()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '[') {
            std::size_t open = pos_++;
            std::vector<Program> branches;
            for (;;) {
                skip_ws();
                if (at_end()) throw ParseError("unbalanced '['", open);
                if (text_[pos_] == '|' || text_[pos_] == ']') throw ParseError("empty branch", pos_);
                branches.push_back(program());
                char d = peek();
                if (d == '|') {
                    ++pos_;
                } else if (d == ']') {
                    ++pos_;
                    break;
                } else if (d == '\0') {
                    throw ParseError("unbalanced '['", open);
                } else {
                    throw ParseError(std::string("unexpected '") + d + "'", pos_);
                }
            }
            return Program::branch(std::move(branches));
        }
        if (c == '-') throw ParseError("'-' is reserved for the gap symbol", pos_);
        std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
        if (start == pos_) {
            if (c == ']') throw ParseError("unbalanced ']'", pos_);
            if (c == '|' || c == '.') throw ParseError("missing instruction", pos_);
            throw ParseError(std::string("unexpected '") + c + "'", pos_);
        }
        return Program::instr(std::string(text_.substr(start, pos_ - start)));
    }

    // Next significant character, or '\0' at end.
    char peek() {
        skip_ws();
        return at_end() ? '\0' : text_[pos_];
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void render_into(const Program& p, std::string& out) {
    switch (p.kind()) {
    case Program::Kind::instr:
        out += p.symbol();
        break;
    case Program::Kind::branch:
        out += '[';
        for (std::size_t i = 0; i < p.children().size(); ++i) {
            if (i) out += '|';
            render_into(p.children()[i], out);
        }
        out += ']';
        break;
    case Program::Kind::seq:
        for (std::size_t i = 0; i < p.children().size(); ++i) {
            if (i) out += '.';
            render_into(p.children()[i], out);
        }
        break;
    }
}

// Preorder walk over Branch nodes.
void for_each_construct(const Program& p, const std::function<void(const Program&)>& f) {
    if (p.is_branch()) f(p);
    for (const auto& c : p.children()) for_each_construct(c, f);
}

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).parse(); }

std::string render_program(const Program& p) {
    std::string out;
    render_into(p, out);
    return out;
}

Metrics metrics(const Program& p) {
    Metrics m;
    switch (p.kind()) {
    case Program::Kind::instr:
        m.size = 1;
        break;
    case Program::Kind::branch:
        m.size = 2 + (p.children().size() - 1);
        m.br_factor = p.children().size();
        for (const auto& c : p.children()) {
            Metrics cm = metrics(c);
            m.size += cm.size;
            m.br_factor = std::max(m.br_factor, cm.br_factor);
            m.depth = std::max(m.depth, cm.depth);
        }
        m.depth += 1;
        break;
    case Program::Kind::seq:
        m.size = p.children().size() - 1;
        for (const auto& c : p.children()) {
            Metrics cm = metrics(c);
            m.size += cm.size;
            m.br_factor = std::max(m.br_factor, cm.br_factor);
            m.depth = std::max(m.depth, cm.depth);
        }
        break;
    }
    return m;
}

std::size_t instruction_count(const Program& p) {
    if (p.is_instr()) return 1;
    std::size_t n = 0;
    for (const auto& c : p.children()) n += instruction_count(c);
    return n;
}

std::size_t construct_count(const Program& p) {
    std::size_t n = 0;
    for_each_construct(p, [&](const Program&) { ++n; });
    return n;
}

std::vector<std::size_t> construct_arities(const Program& p) {
    std::vector<std::size_t> out;
    for_each_construct(p, [&](const Program& b) { out.push_back(b.children().size()); });
    return out;
}

Reordering identity_reordering(const Program& p) {
    Reordering pi;
    for (std::size_t k : construct_arities(p)) {
        std::vector<std::size_t> perm(k);
        std::iota(perm.begin(), perm.end(), std::size_t{1});
        pi.perms.push_back(std::move(perm));
    }
    return pi;
}

void validate_reordering(const Program& p, const Reordering& pi) {
    auto arities = construct_arities(p);
    if (pi.perms.size() != arities.size())
        throw ReorderingError("reordering has " + std::to_string(pi.perms.size()) + " entries, program has " +
                              std::to_string(arities.size()) + " branching constructs");
    for (std::size_t c = 0; c < arities.size(); ++c) {
        const auto& perm = pi.perms[c];
        std::vector<bool> seen(arities[c] + 1, false);
        bool ok = perm.size() == arities[c];
        for (std::size_t i : perm) {
            if (!ok) break;
            if (i < 1 || i > arities[c] || seen[i]) ok = false;
            else seen[i] = true;
        }
        if (!ok)
            throw ReorderingError("entry for construct " + std::to_string(c) + " is not a permutation of 1.." +
                                  std::to_string(arities[c]));
    }
}

namespace {

Program reorder(const Program& p, const Reordering& pi, std::size_t& next_id) {
    switch (p.kind()) {
    case Program::Kind::instr:
        return p;
    case Program::Kind::branch: {
        const auto& perm = pi.perms[next_id++];
        // Children are renumbered in the original preorder, so reorder after
        // visiting them all in source order.
        std::vector<Program> kids;
        kids.reserve(p.children().size());
        for (const auto& c : p.children()) kids.push_back(reorder(c, pi, next_id));
        std::vector<Program> out;
        out.reserve(kids.size());
        for (std::size_t i : perm) out.push_back(kids[i - 1]);
        return Program::branch(std::move(out));
    }
    case Program::Kind::seq: {
        std::vector<Program> parts;
        parts.reserve(p.children().size());
        for (const auto& c : p.children()) parts.push_back(reorder(c, pi, next_id));
        return Program::seq(std::move(parts));
    }
    }
    return p;
}

// Construct ids follow source preorder while the visiting order follows pi,
// so each child's first id is computed up front.
void linearize_into(const Program& p, const Reordering& pi, std::size_t& next_id, Linearization& out) {
    switch (p.kind()) {
    case Program::Kind::instr:
        out.push_back(p.symbol());
        break;
    case Program::Kind::branch: {
        std::size_t my_id = next_id++;
        std::vector<std::size_t> child_ids(p.children().size());
        for (std::size_t i = 0; i < p.children().size(); ++i) {
            child_ids[i] = next_id;
            next_id += construct_count(p.children()[i]);
        }
        for (std::size_t i : pi.perms[my_id]) {
            std::size_t id = child_ids[i - 1];
            linearize_into(p.children()[i - 1], pi, id, out);
        }
        break;
    }
    case Program::Kind::seq:
        for (const auto& c : p.children()) linearize_into(c, pi, next_id, out);
        break;
    }
}

// Maps each source construct id to its preorder id in p^pi.
void reordered_ids(const Program& p, const Reordering& pi, std::size_t& src_id, std::size_t& dst_id,
                   std::vector<std::size_t>& map) {
    switch (p.kind()) {
    case Program::Kind::instr:
        break;
    case Program::Kind::branch: {
        std::size_t me = src_id++;
        map[me] = dst_id++;
        std::vector<std::size_t> child_src(p.children().size());
        for (std::size_t i = 0; i < p.children().size(); ++i) {
            child_src[i] = src_id;
            src_id += construct_count(p.children()[i]);
        }
        for (std::size_t i : pi.perms[me]) {
            std::size_t s = child_src[i - 1];
            reordered_ids(p.children()[i - 1], pi, s, dst_id, map);
        }
        break;
    }
    case Program::Kind::seq:
        for (const auto& c : p.children()) reordered_ids(c, pi, src_id, dst_id, map);
        break;
    }
}

}  // namespace

Program apply_reordering(const Program& p, const Reordering& pi) {
    validate_reordering(p, pi);
    std::size_t next_id = 0;
    return reorder(p, pi, next_id);
}

Reordering compose(const Program& p, const Reordering& first, const Reordering& second) {
    validate_reordering(p, first);
    validate_reordering(apply_reordering(p, first), second);
    std::vector<std::size_t> map(first.perms.size());
    std::size_t src = 0, dst = 0;
    reordered_ids(p, first, src, dst, map);
    Reordering out;
    out.perms.resize(first.perms.size());
    for (std::size_t c = 0; c < first.perms.size(); ++c) {
        const auto& a = first.perms[c];
        const auto& b = second.perms[map[c]];
        for (std::size_t s : b) out.perms[c].push_back(a[s - 1]);
    }
    return out;
}

Linearization linearize(const Program& p, const Reordering& pi) {
    validate_reordering(p, pi);
    Linearization out;
    std::size_t next_id = 0;
    linearize_into(p, pi, next_id, out);
    return out;
}

Linearization linearize(const Program& p) { return linearize(p, identity_reordering(p)); }

BigCount count_reorderings(const Program& p) {
    BigCount total = 1;
    for (std::size_t k : construct_arities(p)) {
        for (std::size_t i = 2; i <= k; ++i) total *= i;
    }
    return total;
}

std::string join(const Linearization& s, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += sep;
        out += s[i];
    }
    return out;
}

}  // namespace fmbr
