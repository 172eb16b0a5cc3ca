#pragma once

// Independent reference implementations used to cross-check the library.
// These deliberately avoid the library's T-poset / permitted-homomorphism,
// worklist-closure and refinement-backtracking code paths.

#include <vector>

#include "medianlab/lattice.hpp"

namespace medianlab::oracle {

// All symmetric majority tables filtered by monotonicity, as reduced tables
// over sorted triples, sorted lexicographically. DFS over raw value choices;
// no permitted intervals involved.
std::vector<std::vector<Element>> enumerate_medians(const FiniteLattice& l);

// Number of n-element lattices up to isomorphism by brute force: every
// strict upper-triangular relation, transitivity and unique-bound filters,
// canonical form as the minimum over all n! relabelings. Feasible for n <= 6.
int count_lattices(int n);

// All order-automorphisms by filtering all n! permutations.
std::vector<std::vector<int>> automorphisms(const FiniteLattice& l);

// The ternary term operations as full value tables, via a plain
// repeat-until-stable closure over an ordered set.
std::vector<std::vector<Element>> clone_tables(const FiniteLattice& l);

// Every congruence of l, as canonical block labelings: all set partitions
// (restricted growth strings) filtered by meet/join compatibility.
std::vector<std::vector<int>> all_congruences(const FiniteLattice& l);

} // namespace medianlab::oracle
