// ============================================================================
// formula.hpp — AST for propositional modal logic (atoms, ⊤, ⊥, ¬ ∧ ∨ → ↔ □ ◇)
// ============================================================================
//
// Formulas are immutable shared trees with value semantics; structural
// equality is O(1) on pointer-equal subtrees and hash-accelerated otherwise.
//
// Grammar (parse/render):
//   precedence  ¬ □ ◇  >  ∧  >  ∨  >  →  >  ↔
//   ∧ and ∨ are left-associative, → and ↔ right-associative.
//   Unicode tokens: ¬ ∧ ∨ → ↔ □ ◇ ⊤ ⊥;  ASCII aliases: ~ & | -> <-> [] <> 1 0
//   atoms: [a-z][a-zA-Z0-9_]*
//
// So "¬a ∧ b ∨ c" is ((¬a)∧b)∨c and "◇a ∧ b" is (◇a)∧b.
// ============================================================================

#ifndef NLIMODAL_FORMULA_HPP
#define NLIMODAL_FORMULA_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlimodal {

enum class Kind : std::uint8_t {
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
};

class Formula {
public:
    // Leaf factories
    static Formula atom(std::string name);
    static Formula top();
    static Formula bottom();

    // Connective factories
    static Formula negation(Formula f);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula disjunction(Formula lhs, Formula rhs);
    static Formula implication(Formula lhs, Formula rhs);
    static Formula equivalence(Formula lhs, Formula rhs);
    static Formula box(Formula f);
    static Formula diamond(Formula f);

    Kind kind() const noexcept { return node_->kind; }
    // Atom name; only meaningful when kind() == Kind::Atom.
    const std::string& name() const { return node_->name; }
    // Left child (or the only child of a unary connective).
    const Formula& left() const { return node_->lhs; }
    const Formula& right() const { return node_->rhs; }

    bool is_leaf() const noexcept {
        Kind k = node_->kind;
        return k == Kind::Atom || k == Kind::Top || k == Kind::Bottom;
    }
    bool is_unary() const noexcept {
        Kind k = node_->kind;
        return k == Kind::Not || k == Kind::Box || k == Kind::Diamond;
    }

    // Number of nodes in the tree.
    std::size_t size() const noexcept { return node_->size; }
    // Maximum nesting of □/◇.
    int modal_depth() const noexcept { return node_->modal_depth; }
    std::uint64_t hash() const noexcept { return node_->hash; }

    bool operator==(const Formula& other) const;
    bool operator!=(const Formula& other) const { return !(*this == other); }

private:
    struct Node {
        Kind kind;
        std::string name;  // atoms only
        Formula lhs;       // empty for leaves
        Formula rhs;       // empty for leaves and unary nodes
        std::uint64_t hash = 0;
        std::size_t size = 1;
        int modal_depth = 0;
    };

    Formula() = default;  // empty slot inside Node; never exposed
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Formula make(Kind kind, std::string name, Formula lhs, Formula rhs);

    bool empty() const noexcept { return node_ == nullptr; }

    std::shared_ptr<const Node> node_;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const noexcept {
        return static_cast<std::size_t>(f.hash());
    }
};

// Raised by parse() on bad input. `offset` is the byte position of the
// offending token; `expected` lists the token classes that were legal there.
// `unknown_symbol` is set when the input contains a character that cannot
// start any token.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t offset,
               std::vector<std::string> expected, bool unknown_symbol = false)
        : std::runtime_error(std::move(message)),
          offset(offset),
          expected(std::move(expected)),
          unknown_symbol(unknown_symbol) {}

    std::size_t offset;
    std::vector<std::string> expected;
    bool unknown_symbol;
};

// Parses the grammar above; throws ParseError.
Formula parse(const std::string& text);

// Canonical printer: Unicode operators, minimal parentheses.
// parse(render(f)) == f for every formula.
std::string render(const Formula& f);

// Negation normal form: ¬ only on atoms, no → or ↔, □/◇ related by duality.
// Idempotent and K-equivalent to the input.
Formula nnf(const Formula& f);

// Simultaneous substitution of formulas for atom names; atoms not in the
// mapping are unchanged.
Formula substitute(const Formula& f, const std::map<std::string, Formula>& mapping);

// Sorted distinct atom names occurring in f.
std::vector<std::string> atoms(const Formula& f);

}  // namespace nlimodal

#endif  // NLIMODAL_FORMULA_HPP
