#pragma once

#include <string>
#include <vector>

#include "medianlab/lattice.hpp"

namespace medianlab {

/// Named lattices: M3, N5, M4, A1, A2, A3, L4, L5, B1, B2, B3, B4, and the
/// parametric families chain(n), grid(a,b), E(n). Throws UnknownName.
FiniteLattice build_named(const std::string& name);

FiniteLattice build_chain(int n);        // n >= 1 elements
FiniteLattice build_grid(int a, int b);  // chain(a) x chain(b)

/// The 2n+1-element lattice with exactly n medians: two chains z1..z_{n-1}
/// and a1..a_{n-2} with cross covers a_i < z_{i+1}, topped by a < b < 1.
FiniteLattice build_E(int n); // n >= 2

/// The twelve nondistributive lattices with at most six elements.
const std::vector<std::string>& table1_names();

/// All n-element lattices up to isomorphism (1 <= n <= 8): depth-first
/// generation of linear-extension-labeled meet-semilattices with a top,
/// deduplicated by color-refinement invariants plus isomorphism tests.
/// Throws SizeUnsupported outside the range.
std::vector<FiniteLattice> enumerate_lattices(int n);

struct Table1Row {
    std::string name;
    std::string expected_om;
    std::string expected_im;
    std::string computed_om;
    std::string computed_im;
    std::size_t om_size = 0;
    std::size_t im_size = 0;
    bool match = false;
    std::string note; // "product-certified", "figure-derived", "caption-derived"
};

/// Recomputes the outer and inner median lattice of each named lattice and
/// compares against the stored expectations. With `force_full_m4`, the
/// 1296-element OM of M4 is materialized and cross-checked against the
/// product certificate. `inject_mismatch` flips the expectation of one row
/// (negative-path testing).
std::vector<Table1Row> reproduce_table1(bool force_full_m4 = false,
                                        const std::string& inject_mismatch = {});

} // namespace medianlab
