#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace medianlab {

using Element = int;

/// A finite lattice over elements 0..n-1. Indices are a fixed linear
/// extension of the order (bottom is 0, top is n-1); names are
/// presentation-only. Order, meet and join are table lookups; all values
/// are immutable after construction.
class FiniteLattice {
public:
    FiniteLattice() = default;

    /// Builds a lattice from an acyclic cover relation given over input
    /// indices 0..names.size()-1. Elements are relabeled into a linear
    /// extension (stable: ties broken by input position). With
    /// `require_reduced`, the input must already be a transitive reduction.
    /// Throws: DuplicateElement, InvalidName, CyclicCovers, RedundantCover,
    /// NotALattice.
    static FiniteLattice from_covers(std::vector<std::string> names,
                                     std::vector<std::pair<int, int>> covers,
                                     bool require_reduced = false);

    /// Builds a lattice from a full order relation (row-major n*n, leq[x*n+y]
    /// nonzero iff x <= y). Relation must be a partial order and every pair
    /// must have a unique glb and lub.
    static FiniteLattice from_order(std::vector<std::string> names,
                                    const std::vector<uint8_t>& leq);

    /// As from_order, additionally reporting the input-index -> element map.
    static std::pair<FiniteLattice, std::vector<int>>
    from_order_mapped(std::vector<std::string> names, const std::vector<uint8_t>& leq);

    int size() const { return n_; }
    bool leq(Element x, Element y) const { return leq_[size_t(x) * n_ + y] != 0; }
    Element meet(Element x, Element y) const { return meet_[size_t(x) * n_ + y]; }
    Element join(Element x, Element y) const { return join_[size_t(x) * n_ + y]; }
    Element bottom() const { return 0; }
    Element top() const { return n_ - 1; }

    const std::string& name(Element x) const { return names_[x]; }
    const std::vector<std::string>& names() const { return names_; }

    /// Covering pairs (x, y) with x covered by y, sorted lexicographically.
    /// This is exactly the transitive reduction of the order.
    const std::vector<std::pair<Element, Element>>& covers() const { return covers_; }
    const std::vector<Element>& lower_covers(Element x) const { return lower_adj_[x]; }
    const std::vector<Element>& upper_covers(Element x) const { return upper_adj_[x]; }

    /// (x^y)v(x^z)v(y^z) and its dual, the extremal median values.
    Element median_lower(Element a, Element b, Element c) const {
        return join(join(meet(a, b), meet(a, c)), meet(b, c));
    }
    Element median_upper(Element a, Element b, Element c) const {
        return meet(meet(join(a, b), join(a, c)), join(b, c));
    }

    /// Elementwise equality: same size, names and order relation.
    bool operator==(const FiniteLattice& other) const {
        return n_ == other.n_ && names_ == other.names_ && leq_ == other.leq_;
    }

private:
    int n_ = 0;
    std::vector<std::string> names_;
    std::vector<uint8_t> leq_;   // n*n
    std::vector<Element> meet_;  // n*n
    std::vector<Element> join_;  // n*n
    std::vector<std::pair<Element, Element>> covers_;
    std::vector<std::vector<Element>> lower_adj_;
    std::vector<std::vector<Element>> upper_adj_;

    friend struct LatticeBuilder;
};

/// Order reversed, meet and join swapped. Indices are reversed as well, so
/// dual(dual(L)) == L elementwise.
FiniteLattice dual(const FiniteLattice& l);

/// Componentwise order on pairs; |result| = |l1| * |l2|.
FiniteLattice direct_product(const FiniteLattice& l1, const FiniteLattice& l2);

/// Disjoint union with every element of l1 below every element of l2.
FiniteLattice linear_sum(const FiniteLattice& l1, const FiniteLattice& l2);

/// Linear sum with the top of l1 identified with the bottom of l2;
/// |result| = |l1| + |l2| - 1.
FiniteLattice glue(const FiniteLattice& l1, const FiniteLattice& l2);

/// Smallest meet- and join-closed carrier containing `generators`, sorted.
std::vector<Element> closure_carrier(const FiniteLattice& l, std::vector<Element> generators);

struct Sublattice {
    FiniteLattice lattice;
    std::vector<Element> embedding; // sublattice element -> parent element
};

/// The sublattice generated by a nonempty set, with the embedding into the parent.
Sublattice sublattice_closure(const FiniteLattice& l, const std::vector<Element>& generators);

struct GeneratedSublattice {
    Sublattice sub;
    std::array<Element, 3> generators; // witness (repeats allowed)
};

/// All sublattices generated by at most three elements, deduplicated by
/// carrier set, in lexicographic carrier order.
std::vector<GeneratedSublattice> three_generated_sublattices(const FiniteLattice& l);

/// True iff the two median term functions coincide on every triple.
bool is_distributive(const FiniteLattice& l);

/// True iff x v (y ^ z) = (x v y) ^ z whenever x <= z.
bool is_modular(const FiniteLattice& l);

enum class Pattern { N5, M3 };

/// Searches for a sublattice copy of N5 or M3 (closure of element triples);
/// returns the 5-element carrier of the first copy in lexicographic
/// generator order, or nullopt.
std::optional<std::vector<Element>> find_sublattice_copy(const FiniteLattice& l, Pattern pattern);

/// All order-automorphisms, as permutations of element indices, in
/// lexicographic order (identity first).
std::vector<std::vector<int>> automorphisms(const FiniteLattice& l);

struct IsoResult {
    bool isomorphic = false;
    std::vector<int> witness; // element of l1 -> element of l2 when isomorphic
};

inline constexpr int kDefaultIsoSizeLimit = 2000;

/// Order-isomorphism test: iterated partition refinement on
/// (height, depth, cover degrees), then lexicographic backtracking.
/// Throws SizeLimitExceeded above `size_limit` elements.
IsoResult is_isomorphic(const FiniteLattice& l1, const FiniteLattice& l2,
                        int size_limit = kDefaultIsoSizeLimit);

} // namespace medianlab
