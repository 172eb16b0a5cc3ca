#pragma once

#include <string>
#include <vector>

#include "medianlab/lattice.hpp"
#include "medianlab/term.hpp"

namespace medianlab {

/// A ternary operation on a lattice, stored as a full value table of length
/// n^3 indexed by (x*n + y)*n + z. Equality is by table.
struct TernaryOp {
    int n = 0;
    std::vector<Element> table;

    Element at(Element x, Element y, Element z) const {
        return table[(size_t(x) * n + y) * n + z];
    }
    bool operator==(const TernaryOp& other) const = default;
};

TernaryOp projection_op(const FiniteLattice& l, int coordinate); // 0, 1 or 2
TernaryOp term_op(const FiniteLattice& l, const Term& t);
TernaryOp pointwise_meet(const FiniteLattice& l, const TernaryOp& f, const TernaryOp& g);
TernaryOp pointwise_join(const FiniteLattice& l, const TernaryOp& f, const TernaryOp& g);

/// A symmetric monotone majority operation, stored reduced: one value per
/// sorted triple i <= j <= k. Symmetry holds by representation; majority,
/// monotonicity and the median bounds are checked by check_median_invariants.
class Median {
public:
    Median(int n, std::vector<Element> reduced);

    static int reduced_size(int n) { return n * (n + 1) * (n + 2) / 6; }
    static int reduced_index(int i, int j, int k) { // requires i <= j <= k
        return i + j * (j + 1) / 2 + k * (k + 1) * (k + 2) / 6;
    }

    int carrier_size() const { return n_; }
    Element at_sorted(int i, int j, int k) const { return reduced_[reduced_index(i, j, k)]; }
    Element at(Element x, Element y, Element z) const;
    const std::vector<Element>& reduced_table() const { return reduced_; }
    TernaryOp full_table() const;

    bool operator==(const Median& other) const = default;
    bool operator<(const Median& other) const { return reduced_ < other.reduced_; }

private:
    int n_;
    std::vector<Element> reduced_;
};

struct MedianCheck {
    bool ok = true;
    std::string violated; // "symmetry", "majority", "monotonicity", "bounds"
};

/// Checks symmetry, majority and monotonicity of an arbitrary ternary
/// operation, exhaustively. Reports the first violated invariant.
MedianCheck is_median(const FiniteLattice& l, const TernaryOp& f);

/// Majority, monotonicity and the pointwise m <= f <= M bounds for a reduced
/// table (symmetry is structural).
MedianCheck check_median_invariants(const FiniteLattice& l, const Median& f);

Median lower_median_fn(const FiniteLattice& l); // table of (x^y)v(x^z)v(y^z)
Median upper_median_fn(const FiniteLattice& l); // table of (xvy)^(xvz)^(yvz)

Median median_from_op(const FiniteLattice& l, const TernaryOp& f); // requires symmetry

} // namespace medianlab
