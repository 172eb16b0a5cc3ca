#include <algorithm>

#include "doctest.h"
#include "medianlab/catalog.hpp"
#include "medianlab/congruence.hpp"
#include "medianlab/error.hpp"
#include "oracles.hpp"

using namespace medianlab;

namespace {

Element by_name(const FiniteLattice& l, const std::string& name) {
    for (Element x = 0; x < l.size(); ++x)
        if (l.name(x) == name) return x;
    FAIL("no element named ", name);
    return -1;
}

std::vector<std::vector<std::string>> block_names(const FiniteLattice& l, const Congruence& c) {
    std::vector<std::vector<std::string>> out;
    for (const auto& block : c.blocks()) {
        std::vector<std::string> names;
        for (Element x : block) names.push_back(l.name(x));
        std::sort(names.begin(), names.end());
        out.push_back(std::move(names));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("congruence generated by pairs") {
    FiniteLattice n5 = build_named("N5");
    CHECK(congruence_generated(n5, {}).block_count() == n5.size()); // identity
    CHECK(congruence_generated(n5, {{n5.bottom(), n5.top()}}).block_count() == 1);

    Element a = by_name(n5, "a"), c = by_name(n5, "c");
    Congruence cg = congruence_generated(n5, {{a, c}});
    CHECK(cg.block_count() == 4);
    CHECK(block_names(n5, cg) ==
          std::vector<std::vector<std::string>>{{"0"}, {"1"}, {"a", "c"}, {"b"}});

    // least-congruence property against the full enumeration: cg itself is a
    // congruence containing the pair, and every such congruence is coarser.
    bool found_self = false;
    for (const auto& part : oracle::all_congruences(n5)) {
        if (part[a] != part[c]) continue;
        bool equal = true, coarser = true;
        for (Element x = 0; x < n5.size(); ++x)
            for (Element y = 0; y < n5.size(); ++y) {
                bool in_cg = cg.same(x, y), in_part = part[x] == part[y];
                equal = equal && in_cg == in_part;
                coarser = coarser && (!in_cg || in_part);
            }
        found_self = found_self || equal;
        CHECK(coarser);
    }
    CHECK(found_self);
}

TEST_CASE("theta_d") {
    for (const FiniteLattice& l : {build_chain(4), build_grid(2, 2), build_grid(3, 3)})
        CHECK(theta_d(l).block_count() == l.size()); // distributive: identity

    FiniteLattice n5 = build_named("N5");
    Congruence t_n5 = theta_d(n5);
    CHECK(block_names(n5, t_n5) ==
          std::vector<std::vector<std::string>>{{"0"}, {"1"}, {"a", "c"}, {"b"}});

    CHECK(theta_d(build_named("M3")).block_count() == 1);
    CHECK(theta_d(build_named("A1")).block_count() == 1);

    // L4 collapses onto the 2-chain: merging 0 with d pulls in a and b, while
    // c and 1 stay apart from the bottom block.
    FiniteLattice l4 = build_named("L4");
    Congruence t_l4 = theta_d(l4);
    CHECK(block_names(l4, t_l4) ==
          std::vector<std::vector<std::string>>{{"0", "a", "b", "d"}, {"1", "c"}});

    // E(n) only collapses {a, b}
    FiniteLattice e4 = build_E(4);
    Congruence t_e4 = theta_d(e4);
    CHECK(t_e4.block_count() == e4.size() - 1);
    CHECK(t_e4.same(by_name(e4, "a"), by_name(e4, "b")));
}

TEST_CASE("quotient") {
    FiniteLattice m3 = build_named("M3");
    Quotient ident = quotient(m3, congruence_generated(m3, {}));
    CHECK(is_isomorphic(ident.lattice, m3).isomorphic);
    for (Element x = 0; x < m3.size(); ++x) CHECK(ident.projection[x] == x);

    Quotient full = quotient(m3, congruence_generated(m3, {{m3.bottom(), m3.top()}}));
    CHECK(full.lattice.size() == 1);

    FiniteLattice n5 = build_named("N5");
    Quotient q = quotient(n5, theta_d(n5));
    CHECK(is_isomorphic(q.lattice, build_grid(2, 2)).isomorphic);
    // projection is order-preserving
    for (Element x = 0; x < n5.size(); ++x)
        for (Element y = 0; y < n5.size(); ++y)
            if (n5.leq(x, y)) CHECK(q.lattice.leq(q.projection[x], q.projection[y]));
}

TEST_CASE("quotient rejects incompatible partitions") {
    FiniteLattice n5 = build_named("N5");
    // {a, b} is not a congruence block of the pentagon
    std::vector<int> bad(n5.size());
    for (Element x = 0; x < n5.size(); ++x) bad[x] = x;
    bad[by_name(n5, "b")] = bad[by_name(n5, "a")];
    CHECK(!is_congruence(n5, bad));
    CHECK_THROWS_AS(Congruence::from_partition(n5, bad), Error);
}

TEST_CASE("every congruence with distributive quotient contains theta_d") {
    for (int n = 1; n <= 6; ++n) {
        for (const FiniteLattice& l : enumerate_lattices(n)) {
            Congruence td = theta_d(l);
            for (const auto& part : oracle::all_congruences(l)) {
                Congruence theta = Congruence::from_partition(l, part);
                if (!is_distributive(quotient(l, theta).lattice)) continue;
                for (Element x = 0; x < l.size(); ++x)
                    for (Element y = 0; y < l.size(); ++y)
                        if (td.same(x, y)) CHECK(theta.same(x, y));
            }
        }
    }
}

TEST_CASE("congruence blocks are interval sublattices") {
    for (const std::string& name : table1_names()) {
        FiniteLattice l = build_named(name);
        for (const auto& part : oracle::all_congruences(l)) {
            Congruence theta = Congruence::from_partition(l, part);
            for (const auto& block : theta.blocks()) {
                Element lo = block.front(), hi = block.front();
                for (Element x : block) {
                    lo = l.meet(lo, x);
                    hi = l.join(hi, x);
                }
                for (Element u = 0; u < l.size(); ++u)
                    if (l.leq(lo, u) && l.leq(u, hi))
                        CHECK(theta.same(u, lo));
            }
        }
    }
}
