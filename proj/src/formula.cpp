#include "nlimodal/formula.hpp"

#include <algorithm>
#include <cstring>
#include <set>
#include <sstream>

namespace nlimodal {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::uint64_t hash_string(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

Formula Formula::make(Kind kind, std::string name, Formula lhs, Formula rhs) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->name = std::move(name);
    node->size = 1;
    node->modal_depth = 0;
    std::uint64_t h = mix(0, static_cast<std::uint64_t>(kind) + 1);
    if (!node->name.empty()) h = mix(h, hash_string(node->name));
    if (!lhs.empty()) {
        h = mix(h, lhs.hash());
        node->size += lhs.size();
        node->modal_depth = lhs.modal_depth();
        node->lhs = std::move(lhs);
    }
    if (!rhs.empty()) {
        h = mix(h, rhs.hash());
        node->size += rhs.size();
        node->modal_depth = std::max(node->modal_depth, rhs.modal_depth());
        node->rhs = std::move(rhs);
    }
    if (kind == Kind::Box || kind == Kind::Diamond) node->modal_depth += 1;
    node->hash = h;
    return Formula(std::move(node));
}

Formula Formula::atom(std::string name) { return make(Kind::Atom, std::move(name), {}, {}); }
Formula Formula::top() { return make(Kind::Top, {}, {}, {}); }
Formula Formula::bottom() { return make(Kind::Bottom, {}, {}, {}); }
Formula Formula::negation(Formula f) { return make(Kind::Not, {}, std::move(f), {}); }
Formula Formula::conjunction(Formula lhs, Formula rhs) {
    return make(Kind::And, {}, std::move(lhs), std::move(rhs));
}
Formula Formula::disjunction(Formula lhs, Formula rhs) {
    return make(Kind::Or, {}, std::move(lhs), std::move(rhs));
}
Formula Formula::implication(Formula lhs, Formula rhs) {
    return make(Kind::Implies, {}, std::move(lhs), std::move(rhs));
}
Formula Formula::equivalence(Formula lhs, Formula rhs) {
    return make(Kind::Iff, {}, std::move(lhs), std::move(rhs));
}
Formula Formula::box(Formula f) { return make(Kind::Box, {}, std::move(f), {}); }
Formula Formula::diamond(Formula f) { return make(Kind::Diamond, {}, std::move(f), {}); }

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    if (!node_ || !other.node_) return false;
    if (node_->hash != other.node_->hash || node_->kind != other.node_->kind) return false;
    if (node_->kind == Kind::Atom) return node_->name == other.node_->name;
    if (node_->lhs.empty() != other.node_->lhs.empty()) return false;
    if (!node_->lhs.empty() && !(node_->lhs == other.node_->lhs)) return false;
    if (node_->rhs.empty() != other.node_->rhs.empty()) return false;
    if (!node_->rhs.empty() && !(node_->rhs == other.node_->rhs)) return false;
    return true;
}

// ── Lexer ───────────────────────────────────────────────────────────────────

namespace {

enum class Tok {
    Atom,
    Top,
    Bottom,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Box,
    Diamond,
    LParen,
    RParen,
    End,
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Atom: return "atom";
        case Tok::Top: return "'⊤'";
        case Tok::Bottom: return "'⊥'";
        case Tok::Not: return "'¬'";
        case Tok::And: return "'∧'";
        case Tok::Or: return "'∨'";
        case Tok::Implies: return "'→'";
        case Tok::Iff: return "'↔'";
        case Tok::Box: return "'□'";
        case Tok::Diamond: return "'◇'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;  // atoms only
    std::size_t offset;
};

bool starts_with(const std::string& s, std::size_t i, const char* lit) {
    std::size_t n = std::strlen(lit);
    return s.compare(i, n, lit) == 0;
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        std::size_t at = i;
        auto push = [&](Tok k, std::size_t len) {
            out.push_back({k, {}, at});
            i += len;
        };
        if (c == '(') { push(Tok::LParen, 1); continue; }
        if (c == ')') { push(Tok::RParen, 1); continue; }
        if (c == '~') { push(Tok::Not, 1); continue; }
        if (c == '&') { push(Tok::And, 1); continue; }
        if (c == '|') { push(Tok::Or, 1); continue; }
        if (c == '1') { push(Tok::Top, 1); continue; }
        if (c == '0') { push(Tok::Bottom, 1); continue; }
        if (c == '-') {
            if (starts_with(text, i, "->")) { push(Tok::Implies, 2); continue; }
            throw ParseError("expected '->' at byte " + std::to_string(at), at, {"'->'"}, true);
        }
        if (c == '<') {
            if (starts_with(text, i, "<->")) { push(Tok::Iff, 3); continue; }
            if (starts_with(text, i, "<>")) { push(Tok::Diamond, 2); continue; }
            throw ParseError("expected '<->' or '<>' at byte " + std::to_string(at), at,
                             {"'<->'", "'<>'"}, true);
        }
        if (c == '[') {
            if (starts_with(text, i, "[]")) { push(Tok::Box, 2); continue; }
            throw ParseError("expected '[]' at byte " + std::to_string(at), at, {"'[]'"}, true);
        }
        if (starts_with(text, i, "¬")) { push(Tok::Not, 2); continue; }       // ¬
        if (starts_with(text, i, "∧")) { push(Tok::And, 3); continue; }       // ∧
        if (starts_with(text, i, "∨")) { push(Tok::Or, 3); continue; }        // ∨
        if (starts_with(text, i, "→")) { push(Tok::Implies, 3); continue; }   // →
        if (starts_with(text, i, "↔")) { push(Tok::Iff, 3); continue; }       // ↔
        if (starts_with(text, i, "□")) { push(Tok::Box, 3); continue; }       // □
        if (starts_with(text, i, "◇")) { push(Tok::Diamond, 3); continue; }   // ◇
        if (starts_with(text, i, "⊤")) { push(Tok::Top, 3); continue; }       // ⊤
        if (starts_with(text, i, "⊥")) { push(Tok::Bottom, 3); continue; }    // ⊥
        if (c >= 'a' && c <= 'z') {
            std::size_t j = i + 1;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Tok::Atom, text.substr(i, j - i), at});
            i = j;
            continue;
        }
        throw ParseError("unknown symbol at byte " + std::to_string(at), at, {}, true);
    }
    out.push_back({Tok::End, {}, text.size()});
    return out;
}

// ── Parser ──────────────────────────────────────────────────────────────────

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Formula run() {
        Formula f = parse_iff();
        if (peek().kind != Tok::End)
            fail({"'∧'", "'∨'", "'→'", "'↔'", "end of input"});
        return f;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    Token take() { return tokens_[pos_++]; }

    [[noreturn]] void fail(std::vector<std::string> expected) {
        const Token& t = peek();
        std::ostringstream msg;
        msg << "syntax error at byte " << t.offset << ": unexpected " << tok_name(t.kind)
            << "; expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg << (i + 1 == expected.size() ? " or " : ", ");
            msg << expected[i];
        }
        throw ParseError(msg.str(), t.offset, std::move(expected));
    }

    Formula parse_iff() {
        Formula lhs = parse_implies();
        if (peek().kind == Tok::Iff) {
            take();
            return Formula::equivalence(std::move(lhs), parse_iff());  // right-assoc
        }
        return lhs;
    }

    Formula parse_implies() {
        Formula lhs = parse_or();
        if (peek().kind == Tok::Implies) {
            take();
            return Formula::implication(std::move(lhs), parse_implies());  // right-assoc
        }
        return lhs;
    }

    Formula parse_or() {
        Formula f = parse_and();
        while (peek().kind == Tok::Or) {
            take();
            f = Formula::disjunction(std::move(f), parse_and());
        }
        return f;
    }

    Formula parse_and() {
        Formula f = parse_unary();
        while (peek().kind == Tok::And) {
            take();
            f = Formula::conjunction(std::move(f), parse_unary());
        }
        return f;
    }

    Formula parse_unary() {
        switch (peek().kind) {
            case Tok::Not: take(); return Formula::negation(parse_unary());
            case Tok::Box: take(); return Formula::box(parse_unary());
            case Tok::Diamond: take(); return Formula::diamond(parse_unary());
            default: return parse_primary();
        }
    }

    Formula parse_primary() {
        switch (peek().kind) {
            case Tok::Atom: return Formula::atom(take().text);
            case Tok::Top: take(); return Formula::top();
            case Tok::Bottom: take(); return Formula::bottom();
            case Tok::LParen: {
                take();
                Formula f = parse_iff();
                if (peek().kind != Tok::RParen) fail({"')'"});
                take();
                return f;
            }
            default:
                fail({"atom", "'⊤'", "'⊥'", "'¬'", "'□'", "'◇'", "'('"});
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty input", 0, {"formula"});
    return Parser(lex(text)).run();
}

// ── Printer ─────────────────────────────────────────────────────────────────

namespace {

// Higher binds tighter.
int precedence(Kind k) {
    switch (k) {
        case Kind::Iff: return 1;
        case Kind::Implies: return 2;
        case Kind::Or: return 3;
        case Kind::And: return 4;
        case Kind::Not:
        case Kind::Box:
        case Kind::Diamond: return 5;
        default: return 6;
    }
}

void render_rec(const Formula& f, std::string& out);

// Parenthesize `child` when printing it under `parent` on the given side
// would reassociate the tree.
void render_child(const Formula& child, Kind parent, bool right_side, std::string& out) {
    int pp = precedence(parent);
    int cp = precedence(child.kind());
    bool parens;
    if (cp > pp) {
        parens = false;
    } else if (cp < pp) {
        parens = true;
    } else {
        // Equal precedence: the associative side may stay bare.
        bool parent_right_assoc = (parent == Kind::Implies || parent == Kind::Iff);
        parens = (right_side != parent_right_assoc);
    }
    if (parens) out += '(';
    render_rec(child, out);
    if (parens) out += ')';
}

void render_rec(const Formula& f, std::string& out) {
    switch (f.kind()) {
        case Kind::Atom: out += f.name(); return;
        case Kind::Top: out += "⊤"; return;
        case Kind::Bottom: out += "⊥"; return;
        case Kind::Not:
        case Kind::Box:
        case Kind::Diamond: {
            out += f.kind() == Kind::Not ? "¬" : f.kind() == Kind::Box ? "□" : "◇";
            const Formula& g = f.left();
            if (precedence(g.kind()) < 5) {
                out += '(';
                render_rec(g, out);
                out += ')';
            } else {
                render_rec(g, out);
            }
            return;
        }
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff: {
            const char* op = f.kind() == Kind::And       ? " ∧ "
                             : f.kind() == Kind::Or      ? " ∨ "
                             : f.kind() == Kind::Implies ? " → "
                                                         : " ↔ ";
            render_child(f.left(), f.kind(), false, out);
            out += op;
            render_child(f.right(), f.kind(), true, out);
            return;
        }
    }
}

}  // namespace

std::string render(const Formula& f) {
    std::string out;
    render_rec(f, out);
    return out;
}

// ── Negation normal form ────────────────────────────────────────────────────

namespace {

Formula nnf_neg(const Formula& f);

Formula nnf_pos(const Formula& f) {
    switch (f.kind()) {
        case Kind::Atom:
        case Kind::Top:
        case Kind::Bottom: return f;
        case Kind::Not: return nnf_neg(f.left());
        case Kind::And: return Formula::conjunction(nnf_pos(f.left()), nnf_pos(f.right()));
        case Kind::Or: return Formula::disjunction(nnf_pos(f.left()), nnf_pos(f.right()));
        case Kind::Implies: return Formula::disjunction(nnf_neg(f.left()), nnf_pos(f.right()));
        case Kind::Iff:
            // Expanded as the conjunction of the two implications.
            return Formula::conjunction(
                Formula::disjunction(nnf_neg(f.left()), nnf_pos(f.right())),
                Formula::disjunction(nnf_neg(f.right()), nnf_pos(f.left())));
        case Kind::Box: return Formula::box(nnf_pos(f.left()));
        case Kind::Diamond: return Formula::diamond(nnf_pos(f.left()));
    }
    throw std::logic_error("unreachable");
}

Formula nnf_neg(const Formula& f) {
    switch (f.kind()) {
        case Kind::Atom: return Formula::negation(f);
        case Kind::Top: return Formula::bottom();
        case Kind::Bottom: return Formula::top();
        case Kind::Not: return nnf_pos(f.left());
        case Kind::And: return Formula::disjunction(nnf_neg(f.left()), nnf_neg(f.right()));
        case Kind::Or: return Formula::conjunction(nnf_neg(f.left()), nnf_neg(f.right()));
        case Kind::Implies: return Formula::conjunction(nnf_pos(f.left()), nnf_neg(f.right()));
        case Kind::Iff:
            return Formula::disjunction(
                Formula::conjunction(nnf_pos(f.left()), nnf_neg(f.right())),
                Formula::conjunction(nnf_neg(f.left()), nnf_pos(f.right())));
        case Kind::Box: return Formula::diamond(nnf_neg(f.left()));
        case Kind::Diamond: return Formula::box(nnf_neg(f.left()));
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Formula nnf(const Formula& f) { return nnf_pos(f); }

Formula substitute(const Formula& f, const std::map<std::string, Formula>& mapping) {
    switch (f.kind()) {
        case Kind::Atom: {
            auto it = mapping.find(f.name());
            return it == mapping.end() ? f : it->second;
        }
        case Kind::Top:
        case Kind::Bottom: return f;
        case Kind::Not: return Formula::negation(substitute(f.left(), mapping));
        case Kind::Box: return Formula::box(substitute(f.left(), mapping));
        case Kind::Diamond: return Formula::diamond(substitute(f.left(), mapping));
        case Kind::And:
            return Formula::conjunction(substitute(f.left(), mapping),
                                        substitute(f.right(), mapping));
        case Kind::Or:
            return Formula::disjunction(substitute(f.left(), mapping),
                                        substitute(f.right(), mapping));
        case Kind::Implies:
            return Formula::implication(substitute(f.left(), mapping),
                                        substitute(f.right(), mapping));
        case Kind::Iff:
            return Formula::equivalence(substitute(f.left(), mapping),
                                        substitute(f.right(), mapping));
    }
    throw std::logic_error("unreachable");
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
    if (f.kind() == Kind::Atom) {
        out.insert(f.name());
        return;
    }
    if (f.is_leaf()) return;
    collect_atoms(f.left(), out);
    if (!f.is_unary()) collect_atoms(f.right(), out);
}

}  // namespace

std::vector<std::string> atoms(const Formula& f) {
    std::set<std::string> s;
    collect_atoms(f, s);
    return {s.begin(), s.end()};
}

}  // namespace nlimodal
