#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "medianlab/lattice.hpp"
#include "medianlab/term.hpp"
#include "medianlab/ternary.hpp"

namespace medianlab {

inline constexpr std::size_t kDefaultCap = 1'000'000;

/// The poset of three-element subsets with a nontrivial permitted interval
/// [m, M]. Triples are sorted ascending and listed in lexicographic order;
/// T <= T' iff some bijection dominates coordinatewise.
struct TPoset {
    std::vector<std::array<Element, 3>> triples;
    std::vector<uint8_t> leq;                    // count x count, reflexive
    std::vector<std::vector<Element>> intervals; // per triple, ascending

    int count() const { return int(triples.size()); }
    bool less(int i, int j) const { return i != j && leq[size_t(i) * triples.size() + j] != 0; }
};

std::vector<Element> permitted_interval(const FiniteLattice& l, std::array<Element, 3> triple);

/// Computes the T-poset; the order relation is checked for antisymmetry
/// (OrderNotAntisymmetric if two distinct triples compare both ways).
TPoset t_poset(const FiniteLattice& l);

std::string triple_name(const FiniteLattice& l, const std::array<Element, 3>& triple);

/// All medians of l, via monotone interval-respecting maps out of the
/// T-poset, each extended to a full reduced table (majority on repeated
/// triples, m = M on trivial ones) and re-verified. Output is canonical:
/// sorted lexicographically by the image vector over triples.
/// Throws TooManyMedians above `cap`.
struct MedianEnumeration {
    TPoset tposet;
    std::vector<Median> medians;
    std::vector<std::vector<Element>> images; // per median, one image per triple
};
MedianEnumeration enumerate_outer_medians(const FiniteLattice& l, std::size_t cap = kDefaultCap);

/// Median label: concatenated images of the T-poset triples in canonical
/// triple order ("0db" for abc -> 0, acd -> d, bcd -> b). The unique median
/// of a distributive lattice gets "m".
std::string median_name(const FiniteLattice& l, const TPoset& tp, std::span<const Element> images);

/// The lattice of all medians under pointwise order. Element i corresponds
/// to enumeration.medians[i]; pointwise meets/joins are verified to land in
/// the set and to agree with the order-theoretic tables.
struct OuterMedianLattice {
    FiniteLattice lattice;
    MedianEnumeration enumeration;
    std::vector<std::string> names; // per element
};
OuterMedianLattice outer_median_lattice(const FiniteLattice& l, std::size_t cap = kDefaultCap);

/// The set of ternary term operations: closure of the three projections
/// under pointwise meet and join, deduplicated by value table, in insertion
/// order. Throws CloneCapExceeded above `cap` (no partial result).
std::vector<TernaryOp> ternary_clone(const FiniteLattice& l, std::size_t cap = kDefaultCap);

/// Inner medians = medians whose full table lies in the ternary clone.
struct MedianClassification {
    OuterMedianLattice om;
    FiniteLattice im;               // induced lattice on the inner medians
    std::vector<int> im_to_om;      // im element -> om element
    std::vector<bool> inner;        // per om element
    std::size_t clone_size = 0;
};
MedianClassification inner_median_lattice(const FiniteLattice& l, std::size_t cap = kDefaultCap);

/// Clone-side route to the same set: term operations that are medians.
/// Cross-checks inner_median_lattice without enumerating all medians.
std::vector<Median> inner_medians_via_clone(const FiniteLattice& l, std::size_t cap = kDefaultCap);

/// Lattice on an explicit median set under pointwise order.
FiniteLattice median_set_lattice(const FiniteLattice& carrier, const std::vector<Median>& medians,
                                 std::vector<std::string> names = {});

/// The three equivalent conditions of the two-outer-medians theorem,
/// evaluated independently. Throws EquivalenceViolated if they disagree.
struct TwoOuterReport {
    bool om_le_2 = false;
    bool om_eq_im = false;
    bool n5_only = false; // at most one nondistributive 3-generated sublattice, and it is N5
};
TwoOuterReport two_outer_median_characterization(const FiniteLattice& l, std::size_t cap = kDefaultCap);

/// Whether two symmetric terms induce the same function on l (the term-kernel
/// relation). Symmetry is functional: all six permuted functions must agree;
/// throws NotSymmetric otherwise.
bool cut_relates(const FiniteLattice& l, const Term& s, const Term& t);

/// Product certificate for OM: when the T-poset splits into connected
/// order-components, OM is the direct product of the per-component median
/// sets. Returns nullopt when there is no split (fewer than two components).
struct OmFactor {
    std::vector<int> triple_indices; // indices into the shared T-poset
    FiniteLattice om;
    std::size_t median_count = 0;
};
struct OmDecomposition {
    TPoset tposet;
    std::vector<OmFactor> factors;
    unsigned long long total = 1; // product of factor sizes
};
std::optional<OmDecomposition> om_product_decomposition(const FiniteLattice& l,
                                                        std::size_t cap = kDefaultCap);

} // namespace medianlab
