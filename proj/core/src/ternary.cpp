#include "medianlab/ternary.hpp"

#include <algorithm>

#include "medianlab/error.hpp"

namespace medianlab {

TernaryOp projection_op(const FiniteLattice& l, int coordinate) {
    const int n = l.size();
    TernaryOp f{n, std::vector<Element>(size_t(n) * n * n)};
    size_t idx = 0;
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
            for (Element z = 0; z < n; ++z, ++idx)
                f.table[idx] = coordinate == 0 ? x : coordinate == 1 ? y : z;
    return f;
}

TernaryOp term_op(const FiniteLattice& l, const Term& t) {
    if (t.arity() > 3) fail("ArityTooLarge", "ternary tables require arity <= 3");
    const int n = l.size();
    TernaryOp f{n, std::vector<Element>(size_t(n) * n * n)};
    std::array<Element, 3> a{};
    size_t idx = 0;
    for (a[0] = 0; a[0] < n; ++a[0])
        for (a[1] = 0; a[1] < n; ++a[1])
            for (a[2] = 0; a[2] < n; ++a[2], ++idx) f.table[idx] = t.evaluate(l, a);
    return f;
}

TernaryOp pointwise_meet(const FiniteLattice& l, const TernaryOp& f, const TernaryOp& g) {
    TernaryOp h{f.n, std::vector<Element>(f.table.size())};
    for (size_t i = 0; i < f.table.size(); ++i) h.table[i] = l.meet(f.table[i], g.table[i]);
    return h;
}

TernaryOp pointwise_join(const FiniteLattice& l, const TernaryOp& f, const TernaryOp& g) {
    TernaryOp h{f.n, std::vector<Element>(f.table.size())};
    for (size_t i = 0; i < f.table.size(); ++i) h.table[i] = l.join(f.table[i], g.table[i]);
    return h;
}

Median::Median(int n, std::vector<Element> reduced) : n_(n), reduced_(std::move(reduced)) {
    if (int(reduced_.size()) != reduced_size(n))
        fail("NotALattice", "reduced median table has the wrong size");
}

Element Median::at(Element x, Element y, Element z) const {
    if (x > y) std::swap(x, y);
    if (y > z) std::swap(y, z);
    if (x > y) std::swap(x, y);
    return at_sorted(x, y, z);
}

TernaryOp Median::full_table() const {
    const int n = n_;
    TernaryOp f{n, std::vector<Element>(size_t(n) * n * n)};
    size_t idx = 0;
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
            for (Element z = 0; z < n; ++z, ++idx) f.table[idx] = at(x, y, z);
    return f;
}

MedianCheck is_median(const FiniteLattice& l, const TernaryOp& f) {
    const int n = l.size();
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
            for (Element z = 0; z < n; ++z) {
                Element v = f.at(x, y, z);
                if (f.at(x, z, y) != v || f.at(y, x, z) != v || f.at(y, z, x) != v ||
                    f.at(z, x, y) != v || f.at(z, y, x) != v)
                    return {false, "symmetry"};
            }
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
            if (f.at(x, x, y) != x || f.at(x, y, x) != x || f.at(y, x, x) != x)
                return {false, "majority"};
    // Monotone iff every single-coordinate cover step does not decrease the
    // value; general comparisons decompose into such steps.
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
            for (Element z = 0; z < n; ++z) {
                Element v = f.at(x, y, z);
                for (Element u : l.upper_covers(x))
                    if (!l.leq(v, f.at(u, y, z))) return {false, "monotonicity"};
                for (Element u : l.upper_covers(y))
                    if (!l.leq(v, f.at(x, u, z))) return {false, "monotonicity"};
                for (Element u : l.upper_covers(z))
                    if (!l.leq(v, f.at(x, y, u))) return {false, "monotonicity"};
            }
    return {};
}

MedianCheck check_median_invariants(const FiniteLattice& l, const Median& f) {
    const int n = l.size();
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
            if (f.at(x, x, y) != x) return {false, "majority"};
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) {
                Element v = f.at_sorted(i, j, k);
                for (Element u : l.upper_covers(i))
                    if (!l.leq(v, f.at(u, j, k))) return {false, "monotonicity"};
                for (Element u : l.upper_covers(j))
                    if (!l.leq(v, f.at(i, u, k))) return {false, "monotonicity"};
                for (Element u : l.upper_covers(k))
                    if (!l.leq(v, f.at(i, j, u))) return {false, "monotonicity"};
                if (!l.leq(l.median_lower(i, j, k), v) || !l.leq(v, l.median_upper(i, j, k)))
                    return {false, "bounds"};
            }
    return {};
}

Median lower_median_fn(const FiniteLattice& l) {
    const int n = l.size();
    std::vector<Element> reduced(Median::reduced_size(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k)
                reduced[Median::reduced_index(i, j, k)] = l.median_lower(i, j, k);
    return Median(n, std::move(reduced));
}

Median upper_median_fn(const FiniteLattice& l) {
    const int n = l.size();
    std::vector<Element> reduced(Median::reduced_size(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k)
                reduced[Median::reduced_index(i, j, k)] = l.median_upper(i, j, k);
    return Median(n, std::move(reduced));
}

Median median_from_op(const FiniteLattice& l, const TernaryOp& f) {
    const int n = l.size();
    std::vector<Element> reduced(Median::reduced_size(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) reduced[Median::reduced_index(i, j, k)] = f.at(i, j, k);
    return Median(n, std::move(reduced));
}

} // namespace medianlab
