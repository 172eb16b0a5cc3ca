#include "medianlab/median.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "medianlab/congruence.hpp"
#include "medianlab/error.hpp"

namespace medianlab {

namespace {

constexpr std::array<std::array<int, 3>, 6> kPerms3 = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

bool triple_dominated(const FiniteLattice& l, const std::array<Element, 3>& lo,
                      const std::array<Element, 3>& hi) {
    for (const auto& p : kPerms3)
        if (l.leq(lo[0], hi[p[0]]) && l.leq(lo[1], hi[p[1]]) && l.leq(lo[2], hi[p[2]])) return true;
    return false;
}

struct TableHash {
    size_t operator()(const std::vector<Element>& v) const {
        size_t h = 1469598103934665603ull;
        for (Element e : v) {
            h ^= size_t(e) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Monotone interval-respecting assignments over a set of triples, in DFS
// order of a stable topological ordering. Candidates must dominate every
// already-assigned predecessor.
std::vector<std::vector<Element>> enumerate_images(const FiniteLattice& l, const TPoset& tp,
                                                   const std::vector<int>& triple_subset,
                                                   std::size_t cap) {
    const int t = int(triple_subset.size());
    std::vector<int> topo;
    {
        std::vector<char> placed(t, 0);
        for (int step = 0; step < t; ++step) {
            int pick = -1;
            for (int i = 0; i < t && pick < 0; ++i) {
                if (placed[i]) continue;
                bool ready = true;
                for (int j = 0; j < t && ready; ++j)
                    if (!placed[j] && tp.less(triple_subset[j], triple_subset[i])) ready = false;
                if (ready) pick = i;
            }
            placed[pick] = 1;
            topo.push_back(pick);
        }
    }
    // Predecessors of each topo position among earlier positions.
    std::vector<std::vector<int>> preds(t);
    for (int a = 0; a < t; ++a)
        for (int b = 0; b < a; ++b)
            if (tp.less(triple_subset[topo[b]], triple_subset[topo[a]])) preds[a].push_back(b);

    std::vector<std::vector<Element>> out;
    std::vector<Element> chosen(t);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == t) {
            std::vector<Element> by_triple(t);
            for (int i = 0; i < t; ++i) by_triple[topo[i]] = chosen[i];
            out.push_back(std::move(by_triple));
            if (out.size() > cap)
                fail("TooManyMedians", "more than " + std::to_string(cap) + " medians");
            return;
        }
        for (Element c : tp.intervals[triple_subset[topo[pos]]]) {
            bool ok = true;
            for (int p : preds[pos])
                if (!l.leq(chosen[p], c)) {
                    ok = false;
                    break;
                }
            if (ok) {
                chosen[pos] = c;
                self(self, pos + 1);
            }
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

Median extend_to_median(const FiniteLattice& l, const TPoset& tp, std::span<const Element> images) {
    const int n = l.size();
    std::vector<Element> reduced(Median::reduced_size(n));
    std::unordered_map<int, Element> assigned; // reduced index of a listed triple -> image
    for (int i = 0; i < tp.count(); ++i) {
        const auto& tr = tp.triples[i];
        assigned[Median::reduced_index(tr[0], tr[1], tr[2])] = images[i];
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) {
                int idx = Median::reduced_index(i, j, k);
                if (i == j) {
                    reduced[idx] = i; // majority forces x on (x,x,y)
                } else if (j == k) {
                    reduced[idx] = j;
                } else if (auto it = assigned.find(idx); it != assigned.end()) {
                    reduced[idx] = it->second;
                } else {
                    reduced[idx] = l.median_lower(i, j, k); // trivial interval, m = M
                }
            }
    Median f(n, std::move(reduced));
    MedianCheck check = check_median_invariants(l, f);
    if (!check.ok)
        fail("MedianInvariantViolated",
             "extension of a permitted homomorphism violates " + check.violated);
    return f;
}

// Plain concatenation can collide once element names have several characters
// ("a"+"bc" vs "ab"+"c"); fall back to a separator in that case.
std::vector<std::string> join_names(const FiniteLattice& l,
                                    const std::vector<std::vector<Element>>& image_vectors) {
    std::vector<std::string> names(image_vectors.size());
    for (size_t i = 0; i < image_vectors.size(); ++i) {
        std::string name;
        for (Element e : image_vectors[i]) name += l.name(e);
        names[i] = name.empty() ? "m" : name;
    }
    std::set<std::string> distinct(names.begin(), names.end());
    if (distinct.size() != names.size()) {
        for (size_t i = 0; i < image_vectors.size(); ++i) {
            std::string name;
            for (Element e : image_vectors[i]) {
                if (!name.empty()) name += "|";
                name += l.name(e);
            }
            names[i] = name.empty() ? "m" : name;
        }
    }
    return names;
}

std::vector<std::string> median_names(const FiniteLattice& l, const MedianEnumeration& e) {
    return join_names(l, e.images);
}

} // namespace

std::vector<Element> permitted_interval(const FiniteLattice& l, std::array<Element, 3> triple) {
    Element lo = l.median_lower(triple[0], triple[1], triple[2]);
    Element hi = l.median_upper(triple[0], triple[1], triple[2]);
    std::vector<Element> out;
    for (Element u = 0; u < l.size(); ++u)
        if (l.leq(lo, u) && l.leq(u, hi)) out.push_back(u);
    return out;
}

std::string triple_name(const FiniteLattice& l, const std::array<Element, 3>& triple) {
    return l.name(triple[0]) + l.name(triple[1]) + l.name(triple[2]);
}

TPoset t_poset(const FiniteLattice& l) {
    TPoset tp;
    const int n = l.size();
    for (Element x = 0; x < n; ++x)
        for (Element y = x + 1; y < n; ++y)
            for (Element z = y + 1; z < n; ++z) {
                if (l.median_lower(x, y, z) == l.median_upper(x, y, z)) continue;
                tp.triples.push_back({x, y, z});
                tp.intervals.push_back(permitted_interval(l, {x, y, z}));
            }
    const int t = tp.count();
    tp.leq.assign(size_t(t) * t, 0);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j)
            if (triple_dominated(l, tp.triples[i], tp.triples[j])) tp.leq[size_t(i) * t + j] = 1;
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j)
            if (tp.less(i, j) && tp.less(j, i))
                fail("OrderNotAntisymmetric",
                     "triples " + triple_name(l, tp.triples[i]) + " and " +
                         triple_name(l, tp.triples[j]) + " compare both ways");
    return tp;
}

MedianEnumeration enumerate_outer_medians(const FiniteLattice& l, std::size_t cap) {
    MedianEnumeration e;
    e.tposet = t_poset(l);
    std::vector<int> all(e.tposet.count());
    std::iota(all.begin(), all.end(), 0);
    e.images = enumerate_images(l, e.tposet, all, cap);
    e.medians.reserve(e.images.size());
    for (const auto& img : e.images) e.medians.push_back(extend_to_median(l, e.tposet, img));
    return e;
}

std::string median_name(const FiniteLattice& l, const TPoset&, std::span<const Element> images) {
    if (images.empty()) return "m";
    std::string name;
    for (Element e : images) name += l.name(e);
    return name;
}

OuterMedianLattice outer_median_lattice(const FiniteLattice& l, std::size_t cap) {
    OuterMedianLattice om;
    om.enumeration = enumerate_outer_medians(l, cap);
    const auto& meds = om.enumeration.medians;
    om.names = median_names(l, om.enumeration);
    om.lattice = median_set_lattice(l, meds, om.names);

    // The pointwise meet/join of two medians must itself be an enumerated
    // median, and must match the order-theoretic tables.
    std::unordered_map<std::vector<Element>, int, TableHash> index;
    for (size_t i = 0; i < meds.size(); ++i) index.emplace(meds[i].reduced_table(), int(i));
    const int m = int(meds.size());
    std::vector<Element> scratch(meds.empty() ? 0 : meds[0].reduced_table().size());
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            const auto& ta = meds[a].reduced_table();
            const auto& tb = meds[b].reduced_table();
            for (size_t i = 0; i < scratch.size(); ++i) scratch[i] = l.meet(ta[i], tb[i]);
            auto it = index.find(scratch);
            if (it == index.end() || it->second != om.lattice.meet(a, b))
                fail("MedianInvariantViolated", "pointwise meet of two medians is not a median");
            for (size_t i = 0; i < scratch.size(); ++i) scratch[i] = l.join(ta[i], tb[i]);
            it = index.find(scratch);
            if (it == index.end() || it->second != om.lattice.join(a, b))
                fail("MedianInvariantViolated", "pointwise join of two medians is not a median");
        }
    return om;
}

FiniteLattice median_set_lattice(const FiniteLattice& carrier, const std::vector<Median>& medians,
                                 std::vector<std::string> names) {
    const int m = int(medians.size());
    if (names.empty()) {
        names.resize(m);
        for (int i = 0; i < m; ++i) names[i] = "f" + std::to_string(i);
    }
    std::vector<uint8_t> leq(size_t(m) * m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            const auto& ta = medians[a].reduced_table();
            const auto& tb = medians[b].reduced_table();
            bool le = true;
            for (size_t i = 0; i < ta.size() && le; ++i)
                if (!carrier.leq(ta[i], tb[i])) le = false;
            leq[size_t(a) * m + b] = le ? 1 : 0;
        }
    return FiniteLattice::from_order(std::move(names), leq);
}

std::vector<TernaryOp> ternary_clone(const FiniteLattice& l, std::size_t cap) {
    if (cap < 3) fail("CloneCapExceeded", "clone cap must allow the three projections");
    std::vector<TernaryOp> members;
    std::unordered_map<std::vector<Element>, int, TableHash> index;
    std::vector<int> work;
    auto add = [&](TernaryOp op) {
        auto it = index.find(op.table);
        if (it != index.end()) return;
        if (members.size() >= cap)
            fail("CloneCapExceeded", "clone exceeds " + std::to_string(cap) + " operations");
        index.emplace(op.table, int(members.size()));
        work.push_back(int(members.size()));
        members.push_back(std::move(op));
    };
    for (int c = 0; c < 3; ++c) add(projection_op(l, c));
    while (!work.empty()) {
        int i = work.back();
        work.pop_back();
        const size_t snapshot = members.size();
        for (size_t j = 0; j < snapshot; ++j) {
            add(pointwise_meet(l, members[i], members[j]));
            add(pointwise_join(l, members[i], members[j]));
        }
    }
    return members;
}

MedianClassification inner_median_lattice(const FiniteLattice& l, std::size_t cap) {
    MedianClassification r;
    r.om = outer_median_lattice(l, cap);
    std::vector<TernaryOp> clone = ternary_clone(l, cap);
    r.clone_size = clone.size();
    std::unordered_map<std::vector<Element>, int, TableHash> clone_index;
    for (size_t i = 0; i < clone.size(); ++i) clone_index.emplace(clone[i].table, int(i));

    const auto& meds = r.om.enumeration.medians;
    r.inner.assign(meds.size(), false);
    std::vector<Median> inner_meds;
    std::vector<std::string> inner_names;
    for (size_t i = 0; i < meds.size(); ++i) {
        if (clone_index.count(meds[i].full_table().table)) {
            r.inner[i] = true;
            r.im_to_om.push_back(int(i));
            inner_meds.push_back(meds[i]);
            inner_names.push_back(r.om.names[i]);
        }
    }
    r.im = median_set_lattice(l, inner_meds, inner_names);
    return r;
}

std::vector<Median> inner_medians_via_clone(const FiniteLattice& l, std::size_t cap) {
    std::vector<Median> out;
    for (const TernaryOp& op : ternary_clone(l, cap))
        if (is_median(l, op).ok) out.push_back(median_from_op(l, op));
    std::sort(out.begin(), out.end());
    return out;
}

TwoOuterReport two_outer_median_characterization(const FiniteLattice& l, std::size_t cap) {
    TwoOuterReport r;
    MedianEnumeration e = enumerate_outer_medians(l, cap);
    r.om_le_2 = e.medians.size() <= 2;

    std::vector<Median> inner = inner_medians_via_clone(l, cap);
    std::vector<Median> sorted_om = e.medians;
    std::sort(sorted_om.begin(), sorted_om.end());
    r.om_eq_im = sorted_om == inner;
    if (!std::includes(sorted_om.begin(), sorted_om.end(), inner.begin(), inner.end()))
        fail("EquivalenceViolated", "inner medians are not a subset of the medians");

    int nondistributive = 0;
    bool all_n5 = true;
    for (const GeneratedSublattice& g : three_generated_sublattices(l)) {
        if (is_distributive(g.sub.lattice)) continue;
        ++nondistributive;
        // The pentagon is the only 5-element nonmodular lattice.
        bool pentagon = g.sub.lattice.size() == 5 && !is_modular(g.sub.lattice);
        if (!pentagon) all_n5 = false;
    }
    r.n5_only = nondistributive == 0 || (nondistributive == 1 && all_n5);

    if (r.om_le_2 != r.om_eq_im || r.om_eq_im != r.n5_only)
        fail("EquivalenceViolated", "two-outer-medians conditions disagree");
    return r;
}

bool cut_relates(const FiniteLattice& l, const Term& s, const Term& t) {
    for (const Term* term : {&s, &t}) {
        if (term->arity() > 3) fail("ArityTooLarge", "cut is defined for ternary terms");
        TernaryOp base = term_op(l, *term);
        for (const auto& p : kPerms3) {
            std::array<int, 3> sigma = {p[0] + 1, p[1] + 1, p[2] + 1};
            if (!(term_op(l, term->permuted(sigma)) == base))
                fail("NotSymmetric", "term " + term->render() + " does not induce a symmetric function");
        }
    }
    return holds_identity(l, s, t).holds;
}

std::optional<OmDecomposition> om_product_decomposition(const FiniteLattice& l, std::size_t cap) {
    TPoset tp = t_poset(l);
    const int t = tp.count();
    if (t == 0) return std::nullopt;

    // Two comparable triples constrain each other only when the constraint can
    // actually bite: for T < T' with M(T) <= m(T') every choice pair is
    // monotone, so the assignments decouple. Components of the remaining
    // constraint graph factor OM as a direct product (a linear sum decouples
    // this way even though its T-poset is connected as an order).
    auto vacuous = [&](int lo, int hi) {
        return l.leq(tp.intervals[lo].back(), tp.intervals[hi].front());
    };
    std::vector<int> comp(t, -1);
    int ncomp = 0;
    for (int i = 0; i < t; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<int> stack{i};
        comp[i] = ncomp;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y = 0; y < t; ++y) {
                if (comp[y] >= 0) continue;
                bool constrained = (tp.less(x, y) && !vacuous(x, y)) ||
                                   (tp.less(y, x) && !vacuous(y, x));
                if (constrained) {
                    comp[y] = ncomp;
                    stack.push_back(y);
                }
            }
        }
        ++ncomp;
    }
    if (ncomp <= 1) return std::nullopt;

    OmDecomposition d;
    d.tposet = tp;
    for (int c = 0; c < ncomp; ++c) {
        OmFactor factor;
        for (int i = 0; i < t; ++i)
            if (comp[i] == c) factor.triple_indices.push_back(i);
        auto images = enumerate_images(l, tp, factor.triple_indices, cap);
        factor.median_count = images.size();
        std::vector<std::string> names = join_names(l, images);
        const int m = int(images.size());
        std::vector<uint8_t> leq(size_t(m) * m, 0);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                bool le = true;
                for (size_t i = 0; i < images[a].size() && le; ++i)
                    if (!l.leq(images[a][i], images[b][i])) le = false;
                leq[size_t(a) * m + b] = le ? 1 : 0;
            }
        factor.om = FiniteLattice::from_order(std::move(names), leq);
        d.total *= factor.median_count;
        d.factors.push_back(std::move(factor));
    }
    return d;
}

} // namespace medianlab
