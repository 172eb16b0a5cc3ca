#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "medianlab/lattice.hpp"

namespace medianlab {

/// An immutable lattice term: a tree of meets and joins over variables
/// x1, x2, ... (1-based). Copies share structure.
class Term {
public:
    enum class Kind { Var, Meet, Join };

    static Term var(int index);
    static Term meet(Term left, Term right);
    static Term join(Term left, Term right);

    Kind kind() const { return node_->kind; }
    int var_index() const { return node_->var; }
    Term left() const { return Term(node_->left); }
    Term right() const { return Term(node_->right); }

    /// Largest variable index occurring in the term.
    int arity() const { return node_->arity; }

    bool operator==(const Term& other) const;

    /// Canonical fully parenthesized rendering; parses back to an equal term.
    std::string render() const;

    /// Bottom-up fold with the lattice's meet and join; assignment[i-1]
    /// interprets xi. Throws UnboundVariable when the assignment is short.
    Element evaluate(const FiniteLattice& l, std::span<const Element> assignment) const;

    /// Substitutes every xi by x(sigma[i-1]); sigma must cover the arity.
    Term permuted(std::span<const int> sigma) const;

private:
    struct Node {
        Kind kind;
        int var = 0;
        int arity = 0;
        std::shared_ptr<const Node> left, right;
    };
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Grammar: variables x1|x2|x3... (aliases x, y, z), '^' meet (binds
/// tighter), 'v' join, parentheses, prefix MeetSym(...)/JoinSym(...).
/// Whitespace-insensitive. Throws SyntaxError with a character position.
Term parse_term(std::string_view text);

/// Meet (join) of the six permuted copies of a ternary-or-smaller term, in
/// lexicographic permutation order (identity first), left-associated.
/// Throws ArityTooLarge above arity 3.
Term meet_symmetrization(const Term& t);
Term join_symmetrization(const Term& t);

struct CheckResult {
    bool holds = false;
    std::optional<std::vector<Element>> counterexample; // first in lexicographic order
};

/// Exhaustive identity / inequality check over all assignments (arities <= 3).
CheckResult holds_identity(const FiniteLattice& l, const Term& s, const Term& t);
CheckResult holds_inequality(const FiniteLattice& l, const Term& s, const Term& t);

/// Modularity via the symmetric criterion: the join-symmetrized
/// x^(zv(x^y)) lies below the meet-symmetrized xv(y^(xvz)).
bool modular_by_symmetric_identity(const FiniteLattice& l);

/// Named terms. m and M are the least and greatest symmetric ternary terms
/// strictly between the full meet and join; the n5 pair bounds the blocks of
/// the pentagon's term-function kernel.
const Term& lower_median_term();  // (x1^x2)v(x1^x3)v(x2^x3)
const Term& upper_median_term();  // (x1vx2)^(x1vx3)^(x2vx3)
const Term& n5_upper_term();      // JoinSym(x1 ^ (x3 v (x1 ^ x2)))
const Term& n5_lower_term();      // MeetSym(x1 v (x2 ^ (x1 v x3)))

} // namespace medianlab
