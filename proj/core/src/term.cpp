#include "medianlab/term.hpp"

#include <array>
#include <cctype>

#include "medianlab/error.hpp"

namespace medianlab {

Term Term::var(int index) {
    if (index < 1) fail("SyntaxError", "variable indices are 1-based");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Var;
    node->var = index;
    node->arity = index;
    return Term(std::move(node));
}

Term Term::meet(Term l, Term r) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Meet;
    node->arity = std::max(l.arity(), r.arity());
    node->left = std::move(l.node_);
    node->right = std::move(r.node_);
    return Term(std::move(node));
}

Term Term::join(Term l, Term r) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Join;
    node->arity = std::max(l.arity(), r.arity());
    node->left = std::move(l.node_);
    node->right = std::move(r.node_);
    return Term(std::move(node));
}

bool Term::operator==(const Term& other) const {
    if (node_ == other.node_) return true;
    if (kind() != other.kind()) return false;
    if (kind() == Kind::Var) return var_index() == other.var_index();
    return left() == other.left() && right() == other.right();
}

std::string Term::render() const {
    switch (kind()) {
    case Kind::Var:
        return "x" + std::to_string(var_index());
    case Kind::Meet:
        return "(" + left().render() + " ^ " + right().render() + ")";
    case Kind::Join:
        return "(" + left().render() + " v " + right().render() + ")";
    }
    return {};
}

Element Term::evaluate(const FiniteLattice& l, std::span<const Element> assignment) const {
    switch (kind()) {
    case Kind::Var: {
        int i = var_index();
        if (i > int(assignment.size()))
            fail("UnboundVariable", "no value for variable x" + std::to_string(i));
        return assignment[i - 1];
    }
    case Kind::Meet:
        return l.meet(left().evaluate(l, assignment), right().evaluate(l, assignment));
    case Kind::Join:
        return l.join(left().evaluate(l, assignment), right().evaluate(l, assignment));
    }
    return 0;
}

Term Term::permuted(std::span<const int> sigma) const {
    switch (kind()) {
    case Kind::Var: {
        int i = var_index();
        if (i > int(sigma.size())) fail("UnboundVariable", "permutation too short for x" + std::to_string(i));
        return var(sigma[i - 1]);
    }
    case Kind::Meet:
        return meet(left().permuted(sigma), right().permuted(sigma));
    case Kind::Join:
        return join(left().permuted(sigma), right().permuted(sigma));
    }
    return *this;
}

namespace {

// Lexicographic order on S3, identity first.
constexpr std::array<std::array<int, 3>, 6> kPermutations = {{
    {1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1},
}};

struct Parser {
    std::string_view src;
    size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    [[noreturn]] void error(const std::string& message, size_t at) {
        fail("SyntaxError", message + " at position " + std::to_string(at));
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool starts_with(std::string_view word) const {
        return src.compare(pos, word.size(), word) == 0;
    }

    Term parse_expr() {
        Term t = parse_meet();
        while (peek() == 'v') {
            ++pos;
            t = Term::join(std::move(t), parse_meet());
        }
        return t;
    }

    Term parse_meet() {
        Term t = parse_factor();
        while (peek() == '^') {
            ++pos;
            t = Term::meet(std::move(t), parse_factor());
        }
        return t;
    }

    // Tokens never swallow a following 'v', so "x1^x2vx3" parses without
    // whitespace: variables are x, y, z or x<digits>; the only keywords are
    // the symmetrization prefixes.
    Term parse_factor() {
        char c = peek();
        size_t at = pos;
        if (c == '\0') error("unexpected end of input", pos);
        if (c == '(') {
            ++pos;
            Term t = parse_expr();
            if (peek() != ')') error("expected ')'", pos);
            ++pos;
            return t;
        }
        for (std::string_view word : {"MeetSym", "JoinSym"}) {
            if (!starts_with(word)) continue;
            pos += word.size();
            if (peek() != '(') error(std::string("expected '(' after ") + std::string(word), pos);
            ++pos;
            Term inner = parse_expr();
            if (peek() != ')') error("expected ')'", pos);
            ++pos;
            return word == "MeetSym" ? meet_symmetrization(inner) : join_symmetrization(inner);
        }
        if (c == 'y') {
            ++pos;
            return Term::var(2);
        }
        if (c == 'z') {
            ++pos;
            return Term::var(3);
        }
        if (c == 'x') {
            ++pos;
            if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
                return Term::var(1);
            int value = 0;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                value = value * 10 + (src[pos] - '0');
                if (value > 1000) error("variable index too large", at);
                ++pos;
            }
            if (value == 0) error("variable indices are 1-based", at);
            return Term::var(value);
        }
        error("unexpected character", at);
    }
};

Term symmetrize(const Term& t, Term::Kind op) {
    if (t.arity() > 3)
        fail("ArityTooLarge", "symmetrization is defined for ternary terms; arity is " +
                                  std::to_string(t.arity()));
    Term acc = t.permuted(kPermutations[0]);
    for (size_t i = 1; i < kPermutations.size(); ++i) {
        Term next = t.permuted(kPermutations[i]);
        acc = op == Term::Kind::Meet ? Term::meet(std::move(acc), std::move(next))
                                     : Term::join(std::move(acc), std::move(next));
    }
    return acc;
}

CheckResult exhaustive_check(const FiniteLattice& l, const Term& s, const Term& t, bool inequality) {
    int k = std::max({s.arity(), t.arity(), 1});
    if (k > 3) fail("ArityTooLarge", "identity checking is defined for ternary terms");
    const int n = l.size();
    std::vector<Element> a(k, 0);
    while (true) {
        Element vs = s.evaluate(l, a);
        Element vt = t.evaluate(l, a);
        bool ok = inequality ? l.leq(vs, vt) : vs == vt;
        if (!ok) return {false, a};
        int i = k - 1;
        while (i >= 0 && a[i] == n - 1) a[i--] = 0;
        if (i < 0) break;
        ++a[i];
    }
    return {true, std::nullopt};
}

} // namespace

Term parse_term(std::string_view text) {
    Parser p{text};
    Term t = p.parse_expr();
    if (p.peek() != '\0') p.error("trailing input", p.pos);
    return t;
}

Term meet_symmetrization(const Term& t) { return symmetrize(t, Term::Kind::Meet); }
Term join_symmetrization(const Term& t) { return symmetrize(t, Term::Kind::Join); }

CheckResult holds_identity(const FiniteLattice& l, const Term& s, const Term& t) {
    return exhaustive_check(l, s, t, false);
}

CheckResult holds_inequality(const FiniteLattice& l, const Term& s, const Term& t) {
    return exhaustive_check(l, s, t, true);
}

bool modular_by_symmetric_identity(const FiniteLattice& l) {
    return holds_inequality(l, n5_upper_term(), n5_lower_term()).holds;
}

const Term& lower_median_term() {
    static const Term t = parse_term("(x1 ^ x2) v (x1 ^ x3) v (x2 ^ x3)");
    return t;
}

const Term& upper_median_term() {
    static const Term t = parse_term("(x1 v x2) ^ (x1 v x3) ^ (x2 v x3)");
    return t;
}

const Term& n5_upper_term() {
    static const Term t = parse_term("JoinSym(x1 ^ (x3 v (x1 ^ x2)))");
    return t;
}

const Term& n5_lower_term() {
    static const Term t = parse_term("MeetSym(x1 v (x2 ^ (x1 v x3)))");
    return t;
}

} // namespace medianlab
