#include "medianlab/lattice.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <unordered_set>

#include "medianlab/error.hpp"

namespace medianlab {

namespace {

// Row-major bit rows; rows_[x] spans `words` uint64 entries.
struct BitRows {
    int n = 0;
    int words = 0;
    std::vector<uint64_t> data;

    explicit BitRows(int n_) : n(n_), words((n_ + 63) / 64), data(size_t(n_) * ((n_ + 63) / 64), 0) {}
    uint64_t* row(int x) { return data.data() + size_t(x) * words; }
    const uint64_t* row(int x) const { return data.data() + size_t(x) * words; }
    void set(int x, int y) { row(x)[y >> 6] |= uint64_t(1) << (y & 63); }
    bool test(int x, int y) const { return (row(x)[y >> 6] >> (y & 63)) & 1; }
    void or_into(int dst, int src) {
        uint64_t* d = row(dst);
        const uint64_t* s = row(src);
        for (int w = 0; w < words; ++w) d[w] |= s[w];
    }
    bool row_subset(int x, int y) const { // row(x) subset of row(y)
        const uint64_t *a = row(x), *b = row(y);
        for (int w = 0; w < words; ++w)
            if (a[w] & ~b[w]) return false;
        return true;
    }
};

int highest_bit(const uint64_t* w, int words) {
    for (int i = words - 1; i >= 0; --i)
        if (w[i]) return i * 64 + 63 - std::countl_zero(w[i]);
    return -1;
}

int lowest_bit(const uint64_t* w, int words) {
    for (int i = 0; i < words; ++i)
        if (w[i]) return i * 64 + std::countr_zero(w[i]);
    return -1;
}

void check_names(const std::vector<std::string>& names) {
    if (names.empty()) fail("NotALattice", "element set is empty");
    std::unordered_set<std::string> seen;
    for (const auto& nm : names) {
        if (nm.empty()) fail("InvalidName", "element names must be nonempty");
        if (!seen.insert(nm).second) fail("DuplicateElement", "duplicate element '" + nm + "'");
    }
}

// Stable topological order: repeatedly places the smallest-index element
// whose strict lower set is already placed. Identity whenever the input
// order is already a linear extension.
std::vector<int> stable_linear_extension(int n, const BitRows& down) {
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> placed(n, 0);
    BitRows placed_bits(n);
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int x = 0; x < n && pick < 0; ++x) {
            if (placed[x]) continue;
            const uint64_t* d = down.row(x);
            const uint64_t* p = placed_bits.row(0);
            bool ready = true;
            for (int w = 0; w < down.words && ready; ++w) {
                uint64_t need = d[w];
                if (w == (x >> 6)) need &= ~(uint64_t(1) << (x & 63));
                if (need & ~p[w]) ready = false;
            }
            if (ready) pick = x;
        }
        if (pick < 0) fail("CyclicCovers", "cover relation contains a cycle");
        placed[pick] = 1;
        placed_bits.set(0, pick);
        order.push_back(pick);
    }
    return order;
}

} // namespace

// Shared tail of construction: given names and down-sets expressed in final
// element order (already a linear extension), fills tables and covers.
struct LatticeBuilder {
    static FiniteLattice finish(std::vector<std::string> names, const BitRows& down);
};

FiniteLattice LatticeBuilder::finish(std::vector<std::string> names, const BitRows& down) {
    const int n = down.n;
    const int words = down.words;

    BitRows up(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (down.test(y, x)) up.set(x, y);

    FiniteLattice lat;
    lat.n_ = n;
    lat.names_ = std::move(names);
    lat.leq_.assign(size_t(n) * n, 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            lat.leq_[size_t(x) * n + y] = down.test(y, x) ? 1 : 0;

    lat.meet_.assign(size_t(n) * n, 0);
    lat.join_.assign(size_t(n) * n, 0);
    std::vector<uint64_t> scratch(words);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y <= x; ++y) {
            const uint64_t *dx = down.row(x), *dy = down.row(y);
            for (int w = 0; w < words; ++w) scratch[w] = dx[w] & dy[w];
            int g = highest_bit(scratch.data(), words);
            bool ok = g >= 0;
            if (ok) {
                const uint64_t* dg = down.row(g);
                for (int w = 0; w < words && ok; ++w)
                    if (scratch[w] & ~dg[w]) ok = false;
            }
            if (!ok)
                fail("NotALattice", "elements '" + lat.names_[x] + "' and '" + lat.names_[y] +
                                        "' have no unique greatest lower bound");
            lat.meet_[size_t(x) * n + y] = lat.meet_[size_t(y) * n + x] = g;

            const uint64_t *ux = up.row(x), *uy = up.row(y);
            for (int w = 0; w < words; ++w) scratch[w] = ux[w] & uy[w];
            int j = lowest_bit(scratch.data(), words);
            ok = j >= 0;
            if (ok) {
                const uint64_t* uj = up.row(j);
                for (int w = 0; w < words && ok; ++w)
                    if (scratch[w] & ~uj[w]) ok = false;
            }
            if (!ok)
                fail("NotALattice", "elements '" + lat.names_[x] + "' and '" + lat.names_[y] +
                                        "' have no unique least upper bound");
            lat.join_[size_t(x) * n + y] = lat.join_[size_t(y) * n + x] = j;
        }
    }

    // Transitive reduction: x is a lower cover of y iff nothing sits strictly
    // between them.
    lat.lower_adj_.assign(n, {});
    lat.upper_adj_.assign(n, {});
    for (int y = 0; y < n; ++y) {
        for (int w = 0; w < words; ++w) scratch[w] = down.row(y)[w];
        scratch[y >> 6] &= ~(uint64_t(1) << (y & 63));
        for (int x = 0; x < y; ++x) {
            if (!(scratch[x >> 6] >> (x & 63) & 1)) continue;
            const uint64_t* ux = up.row(x);
            bool cover = true;
            for (int w = 0; w < words && cover; ++w) {
                uint64_t between = ux[w] & scratch[w];
                if (w == (x >> 6)) between &= ~(uint64_t(1) << (x & 63));
                if (between) cover = false;
            }
            if (cover) {
                lat.covers_.emplace_back(x, y);
                lat.lower_adj_[y].push_back(x);
                lat.upper_adj_[x].push_back(y);
            }
        }
    }
    std::sort(lat.covers_.begin(), lat.covers_.end());
    for (auto& v : lat.lower_adj_) std::sort(v.begin(), v.end());
    for (auto& v : lat.upper_adj_) std::sort(v.begin(), v.end());
    return lat;
}

FiniteLattice FiniteLattice::from_covers(std::vector<std::string> names,
                                         std::vector<std::pair<int, int>> covers,
                                         bool require_reduced) {
    check_names(names);
    const int n = int(names.size());

    std::set<std::pair<int, int>> seen;
    for (auto [x, y] : covers) {
        if (x < 0 || x >= n || y < 0 || y >= n)
            fail("UnknownElement", "cover pair references an element out of range");
        if (x == y) fail("CyclicCovers", "cover pair ('" + names[x] + "', '" + names[y] + "') is a self-loop");
        if (!seen.insert({x, y}).second) {
            if (require_reduced)
                fail("RedundantCover", "duplicate cover ('" + names[x] + "', '" + names[y] + "')");
        }
    }
    covers.assign(seen.begin(), seen.end());

    // Topological order over the raw cover relation (input index ties first).
    std::vector<std::vector<int>> up_adj(n);
    std::vector<int> indeg(n, 0);
    for (auto [x, y] : covers) {
        up_adj[x].push_back(y);
        ++indeg[y];
    }
    std::set<int> ready;
    for (int x = 0; x < n; ++x)
        if (indeg[x] == 0) ready.insert(x);
    std::vector<int> pos(n, -1); // input index -> new index
    std::vector<int> order;
    order.reserve(n);
    while (!ready.empty()) {
        int x = *ready.begin();
        ready.erase(ready.begin());
        pos[x] = int(order.size());
        order.push_back(x);
        for (int y : up_adj[x])
            if (--indeg[y] == 0) ready.insert(y);
    }
    if (int(order.size()) != n) fail("CyclicCovers", "cover relation contains a cycle");

    std::vector<std::string> new_names(n);
    for (int i = 0; i < n; ++i) new_names[i] = std::move(names[order[i]]);

    BitRows down(n);
    for (int i = 0; i < n; ++i) down.set(i, i);
    // Covers relabeled point upward in the new order; closing in index order
    // yields the reflexive-transitive closure.
    std::vector<std::vector<int>> lower(n);
    for (auto [x, y] : covers) lower[pos[y]].push_back(pos[x]);
    for (int i = 0; i < n; ++i)
        for (int x : lower[i]) down.or_into(i, x);

    if (require_reduced) {
        BitRows up(n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (down.test(y, x)) up.set(x, y);
        std::vector<uint64_t> mid(down.words);
        for (auto [ix, iy] : covers) {
            int x = pos[ix], y = pos[iy];
            for (int w = 0; w < down.words; ++w) mid[w] = up.row(x)[w] & down.row(y)[w];
            mid[x >> 6] &= ~(uint64_t(1) << (x & 63));
            mid[y >> 6] &= ~(uint64_t(1) << (y & 63));
            for (int w = 0; w < down.words; ++w)
                if (mid[w])
                    fail("RedundantCover", "cover ('" + new_names[x] + "', '" + new_names[y] +
                                               "') is implied by other covers");
        }
    }

    return LatticeBuilder::finish(std::move(new_names), down);
}

std::pair<FiniteLattice, std::vector<int>>
FiniteLattice::from_order_mapped(std::vector<std::string> names, const std::vector<uint8_t>& leq) {
    check_names(names);
    const int n = int(names.size());
    if (leq.size() != size_t(n) * n) fail("NotALattice", "order relation has the wrong size");

    BitRows down(n);
    for (int x = 0; x < n; ++x) {
        if (!leq[size_t(x) * n + x]) fail("NotALattice", "order relation is not reflexive");
        for (int y = 0; y < n; ++y) {
            if (leq[size_t(x) * n + y]) {
                if (x != y && leq[size_t(y) * n + x])
                    fail("NotALattice", "order relation is not antisymmetric");
                down.set(y, x);
            }
        }
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (y != x && down.test(x, y) && !down.row_subset(y, x))
                fail("NotALattice", "order relation is not transitive");

    std::vector<int> order = stable_linear_extension(n, down);
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;

    std::vector<std::string> new_names(n);
    for (int i = 0; i < n; ++i) new_names[i] = std::move(names[order[i]]);
    BitRows new_down(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (down.test(x, y)) new_down.set(pos[x], pos[y]);

    return {LatticeBuilder::finish(std::move(new_names), new_down), std::move(pos)};
}

FiniteLattice FiniteLattice::from_order(std::vector<std::string> names,
                                        const std::vector<uint8_t>& leq) {
    return from_order_mapped(std::move(names), leq).first;
}

FiniteLattice dual(const FiniteLattice& l) {
    const int n = l.size();
    std::vector<std::string> names(n);
    std::vector<uint8_t> leq(size_t(n) * n, 0);
    auto o = [n](int i) { return n - 1 - i; };
    for (int i = 0; i < n; ++i) {
        names[i] = l.name(o(i));
        for (int j = 0; j < n; ++j)
            leq[size_t(i) * n + j] = l.leq(o(j), o(i)) ? 1 : 0;
    }
    return FiniteLattice::from_order(std::move(names), leq);
}

FiniteLattice direct_product(const FiniteLattice& l1, const FiniteLattice& l2) {
    const int n1 = l1.size(), n2 = l2.size(), n = n1 * n2;
    std::vector<std::string> names(n);
    std::vector<uint8_t> leq(size_t(n) * n, 0);
    for (int x1 = 0; x1 < n1; ++x1)
        for (int x2 = 0; x2 < n2; ++x2) {
            int x = x1 * n2 + x2;
            names[x] = "(" + l1.name(x1) + "," + l2.name(x2) + ")";
            for (int y1 = 0; y1 < n1; ++y1)
                for (int y2 = 0; y2 < n2; ++y2)
                    if (l1.leq(x1, y1) && l2.leq(x2, y2)) leq[size_t(x) * n + y1 * n2 + y2] = 1;
        }
    return FiniteLattice::from_order(std::move(names), leq);
}

namespace {

std::vector<std::string> disjoint_names(const FiniteLattice& l1, const FiniteLattice& l2,
                                        bool drop_l2_bottom) {
    std::vector<std::string> names(l1.names());
    std::unordered_set<std::string> used(names.begin(), names.end());
    for (int x = drop_l2_bottom ? 1 : 0; x < l2.size(); ++x) {
        std::string nm = l2.name(x);
        while (used.count(nm)) nm += "'";
        used.insert(nm);
        names.push_back(std::move(nm));
    }
    return names;
}

} // namespace

FiniteLattice linear_sum(const FiniteLattice& l1, const FiniteLattice& l2) {
    const int n1 = l1.size(), n2 = l2.size(), n = n1 + n2;
    std::vector<uint8_t> leq(size_t(n) * n, 0);
    for (int x = 0; x < n1; ++x)
        for (int y = 0; y < n1; ++y)
            if (l1.leq(x, y)) leq[size_t(x) * n + y] = 1;
    for (int x = 0; x < n2; ++x)
        for (int y = 0; y < n2; ++y)
            if (l2.leq(x, y)) leq[size_t(n1 + x) * n + n1 + y] = 1;
    for (int x = 0; x < n1; ++x)
        for (int y = 0; y < n2; ++y) leq[size_t(x) * n + n1 + y] = 1;
    return FiniteLattice::from_order(disjoint_names(l1, l2, false), leq);
}

FiniteLattice glue(const FiniteLattice& l1, const FiniteLattice& l2) {
    const int n1 = l1.size(), n = n1 + l2.size() - 1;
    // Element n1-1 (the top of l1) doubles as the bottom of the l2 part.
    auto map2 = [n1](int e) { return e == 0 ? n1 - 1 : n1 - 1 + e; };
    std::vector<uint8_t> leq(size_t(n) * n, 0);
    for (int x = 0; x < n1; ++x)
        for (int y = 0; y < n1; ++y)
            if (l1.leq(x, y)) leq[size_t(x) * n + y] = 1;
    for (int x = 0; x < l2.size(); ++x)
        for (int y = 0; y < l2.size(); ++y)
            if (l2.leq(x, y)) leq[size_t(map2(x)) * n + map2(y)] = 1;
    for (int x = 0; x < n1; ++x)
        for (int y = n1; y < n; ++y) leq[size_t(x) * n + y] = 1;
    return FiniteLattice::from_order(disjoint_names(l1, l2, true), leq);
}

std::vector<Element> closure_carrier(const FiniteLattice& l, std::vector<Element> generators) {
    if (generators.empty()) fail("NotALattice", "closure of an empty generator set");
    std::vector<char> in(l.size(), 0);
    std::vector<Element> work;
    for (Element g : generators) {
        if (g < 0 || g >= l.size()) fail("UnknownElement", "generator out of range");
        if (!in[g]) {
            in[g] = 1;
            work.push_back(g);
        }
    }
    std::vector<Element> members = work;
    while (!work.empty()) {
        Element x = work.back();
        work.pop_back();
        for (size_t i = 0; i < members.size(); ++i) {
            for (Element v : {l.meet(x, members[i]), l.join(x, members[i])}) {
                if (!in[v]) {
                    in[v] = 1;
                    members.push_back(v);
                    work.push_back(v);
                }
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

Sublattice sublattice_closure(const FiniteLattice& l, const std::vector<Element>& generators) {
    std::vector<Element> carrier = closure_carrier(l, generators);
    const int m = int(carrier.size());
    std::vector<std::string> names(m);
    std::vector<uint8_t> leq(size_t(m) * m, 0);
    for (int i = 0; i < m; ++i) {
        names[i] = l.name(carrier[i]);
        for (int j = 0; j < m; ++j)
            if (l.leq(carrier[i], carrier[j])) leq[size_t(i) * m + j] = 1;
    }
    return Sublattice{FiniteLattice::from_order(std::move(names), leq), std::move(carrier)};
}

std::vector<GeneratedSublattice> three_generated_sublattices(const FiniteLattice& l) {
    std::vector<GeneratedSublattice> out;
    std::set<std::vector<Element>> carriers;
    const int n = l.size();
    for (Element x = 0; x < n; ++x)
        for (Element y = x; y < n; ++y)
            for (Element z = y; z < n; ++z) {
                std::vector<Element> carrier = closure_carrier(l, {x, y, z});
                if (!carriers.insert(carrier).second) continue;
                out.push_back({sublattice_closure(l, carrier), {x, y, z}});
            }
    std::sort(out.begin(), out.end(), [](const GeneratedSublattice& a, const GeneratedSublattice& b) {
        return a.sub.embedding < b.sub.embedding;
    });
    return out;
}

bool is_distributive(const FiniteLattice& l) {
    const int n = l.size();
    for (Element x = 0; x < n; ++x)
        for (Element y = x; y < n; ++y)
            for (Element z = y; z < n; ++z)
                if (l.median_lower(x, y, z) != l.median_upper(x, y, z)) return false;
    return true;
}

bool is_modular(const FiniteLattice& l) {
    const int n = l.size();
    for (Element x = 0; x < n; ++x)
        for (Element z = 0; z < n; ++z) {
            if (!l.leq(x, z)) continue;
            for (Element y = 0; y < n; ++y)
                if (l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z)) return false;
        }
    return true;
}

std::optional<std::vector<Element>> find_sublattice_copy(const FiniteLattice& l, Pattern pattern) {
    const int n = l.size();
    if (n < 5) return std::nullopt;
    // Every N5 or M3 copy is the closure of a triple. Among the five
    // 5-element lattices, the number of incomparable pairs is a complete
    // invariant: chain 0, the two diamond variants 1, N5 2, M3 3.
    const int want = pattern == Pattern::N5 ? 2 : 3;
    for (Element x = 0; x < n; ++x)
        for (Element y = x + 1; y < n; ++y)
            for (Element z = y + 1; z < n; ++z) {
                std::vector<Element> carrier = closure_carrier(l, {x, y, z});
                if (carrier.size() != 5) continue;
                int incomparable = 0;
                for (int i = 0; i < 5; ++i)
                    for (int j = i + 1; j < 5; ++j)
                        if (!l.leq(carrier[i], carrier[j]) && !l.leq(carrier[j], carrier[i]))
                            ++incomparable;
                if (incomparable == want) return carrier;
            }
    return std::nullopt;
}

namespace {

// Joint color refinement for two lattices: colors are comparable across both.
struct Colors {
    std::vector<int> a, b;
    bool compatible = false;
};

Colors refine(const FiniteLattice& A, const FiniteLattice& B) {
    auto heights = [](const FiniteLattice& l, bool up) {
        std::vector<int> h(l.size(), 0);
        for (int i = 0; i < l.size(); ++i) {
            int x = up ? l.size() - 1 - i : i;
            for (Element c : up ? l.upper_covers(x) : l.lower_covers(x))
                h[x] = std::max(h[x], h[c] + 1);
        }
        return h;
    };
    std::vector<int> ha = heights(A, false), da = heights(A, true);
    std::vector<int> hb = heights(B, false), db = heights(B, true);

    using Key = std::array<int, 4>;
    std::map<Key, int> key_ids;
    auto initial = [&](const FiniteLattice& l, const std::vector<int>& h, const std::vector<int>& d) {
        std::vector<Key> keys(l.size());
        for (int x = 0; x < l.size(); ++x)
            keys[x] = {h[x], d[x], int(l.lower_covers(x).size()), int(l.upper_covers(x).size())};
        return keys;
    };
    auto ka = initial(A, ha, da);
    auto kb = initial(B, hb, db);
    for (const auto& k : ka) key_ids.emplace(k, 0);
    for (const auto& k : kb) key_ids.emplace(k, 0);
    int next = 0;
    for (auto& [k, id] : key_ids) id = next++;

    Colors c;
    c.a.resize(A.size());
    c.b.resize(B.size());
    for (int x = 0; x < A.size(); ++x) c.a[x] = key_ids.at(ka[x]);
    for (int x = 0; x < B.size(); ++x) c.b[x] = key_ids.at(kb[x]);

    int classes = next;
    while (true) {
        using RKey = std::tuple<int, std::vector<int>, std::vector<int>>;
        auto round_keys = [](const FiniteLattice& l, const std::vector<int>& col) {
            std::vector<RKey> keys(l.size());
            for (int x = 0; x < l.size(); ++x) {
                std::vector<int> lo, hi;
                for (Element e : l.lower_covers(x)) lo.push_back(col[e]);
                for (Element e : l.upper_covers(x)) hi.push_back(col[e]);
                std::sort(lo.begin(), lo.end());
                std::sort(hi.begin(), hi.end());
                keys[x] = {col[x], std::move(lo), std::move(hi)};
            }
            return keys;
        };
        auto ra = round_keys(A, c.a);
        auto rb = round_keys(B, c.b);
        std::map<RKey, int> ids;
        for (const auto& k : ra) ids.emplace(k, 0);
        for (const auto& k : rb) ids.emplace(k, 0);
        int count = 0;
        for (auto& [k, id] : ids) id = count++;
        if (count == classes) break;
        classes = count;
        for (int x = 0; x < A.size(); ++x) c.a[x] = ids.at(ra[x]);
        for (int x = 0; x < B.size(); ++x) c.b[x] = ids.at(rb[x]);
    }

    std::vector<int> sa = c.a, sb = c.b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    c.compatible = (sa == sb);
    return c;
}

// Lexicographic backtracking over color-compatible maps. Collects all
// isomorphisms when `all`, otherwise stops at the first.
void iso_search(const FiniteLattice& A, const FiniteLattice& B, const Colors& colors, bool all,
                std::vector<std::vector<int>>& out) {
    const int n = A.size();
    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);

    auto rec = [&](auto&& self, int x) -> bool {
        if (x == n) {
            out.push_back(map);
            return !all;
        }
        for (int y = 0; y < n; ++y) {
            if (used[y] || colors.a[x] != colors.b[y]) continue;
            bool ok = true;
            for (int x2 = 0; x2 < x && ok; ++x2) {
                int y2 = map[x2];
                if (A.leq(x, x2) != B.leq(y, y2) || A.leq(x2, x) != B.leq(y2, y)) ok = false;
            }
            if (!ok) continue;
            map[x] = y;
            used[y] = 1;
            if (self(self, x + 1)) return true;
            used[y] = 0;
            map[x] = -1;
        }
        return false;
    };
    rec(rec, 0);
}

} // namespace

std::vector<std::vector<int>> automorphisms(const FiniteLattice& l) {
    Colors colors = refine(l, l);
    std::vector<std::vector<int>> out;
    iso_search(l, l, colors, true, out);
    std::sort(out.begin(), out.end());
    return out;
}

IsoResult is_isomorphic(const FiniteLattice& l1, const FiniteLattice& l2, int size_limit) {
    if (l1.size() > size_limit || l2.size() > size_limit)
        fail("SizeLimitExceeded", "isomorphism test beyond " + std::to_string(size_limit) +
                                      " elements; raise the limit explicitly");
    if (l1.size() != l2.size()) return {};
    Colors colors = refine(l1, l2);
    if (!colors.compatible) return {};
    std::vector<std::vector<int>> out;
    iso_search(l1, l2, colors, false, out);
    if (out.empty()) return {};
    return {true, std::move(out.front())};
}

} // namespace medianlab
