#include "medianlab/congruence.hpp"

#include <algorithm>
#include <numeric>

#include "medianlab/error.hpp"

namespace medianlab {

namespace {

std::pair<std::vector<int>, int> canonicalize(const std::vector<int>& labels) {
    std::vector<int> remap(labels.size(), -1);
    std::vector<int> out(labels.size());
    int next = 0;
    for (size_t x = 0; x < labels.size(); ++x) {
        int& id = remap[labels[x]];
        if (id < 0) id = next++;
        out[x] = id;
    }
    return {out, next};
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int x, int y) {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        if (x > y) std::swap(x, y); // keep the smaller index as root
        parent[y] = x;
        return true;
    }
};

} // namespace

Congruence Congruence::from_partition(const FiniteLattice& carrier, const std::vector<int>& block_of) {
    if (int(block_of.size()) != carrier.size())
        fail("NotACongruence", "partition size does not match the carrier");
    if (!is_congruence(carrier, block_of))
        fail("NotACongruence", "partition is not compatible with meet and join");
    auto [canon, count] = canonicalize(block_of);
    return Congruence(std::move(canon), count);
}

std::vector<std::vector<Element>> Congruence::blocks() const {
    std::vector<std::vector<Element>> out(block_count_);
    for (Element x = 0; x < int(block_of_.size()); ++x) out[block_of_[x]].push_back(x);
    return out;
}

bool is_congruence(const FiniteLattice& l, const std::vector<int>& block_of) {
    const int n = l.size();
    if (int(block_of.size()) != n) return false;
    for (Element x = 0; x < n; ++x)
        for (Element y = x + 1; y < n; ++y) {
            if (block_of[x] != block_of[y]) continue;
            for (Element z = 0; z < n; ++z) {
                if (block_of[l.meet(x, z)] != block_of[l.meet(y, z)]) return false;
                if (block_of[l.join(x, z)] != block_of[l.join(y, z)]) return false;
            }
        }
    return true;
}

Congruence congruence_generated(const FiniteLattice& l,
                                const std::vector<std::pair<Element, Element>>& pairs) {
    const int n = l.size();
    UnionFind uf(n);
    std::vector<std::pair<Element, Element>> work;
    auto merge = [&](Element x, Element y) {
        if (uf.unite(x, y)) work.emplace_back(x, y);
    };
    for (auto [x, y] : pairs) {
        if (x < 0 || x >= n || y < 0 || y >= n) fail("UnknownElement", "pair element out of range");
        merge(x, y);
    }
    // Closing each merged pair against all z suffices: any two elements of a
    // block are linked by a chain of processed pairs.
    while (!work.empty()) {
        auto [x, y] = work.back();
        work.pop_back();
        for (Element z = 0; z < n; ++z) {
            merge(l.meet(x, z), l.meet(y, z));
            merge(l.join(x, z), l.join(y, z));
        }
    }
    std::vector<int> labels(n);
    for (Element x = 0; x < n; ++x) labels[x] = uf.find(x);
    auto [canon, count] = canonicalize(labels);
    return Congruence(std::move(canon), count);
}

Congruence theta_d(const FiniteLattice& l) {
    std::vector<std::pair<Element, Element>> pairs;
    const int n = l.size();
    for (Element x = 0; x < n; ++x)
        for (Element y = x + 1; y < n; ++y)
            for (Element z = y + 1; z < n; ++z) {
                Element lo = l.median_lower(x, y, z), hi = l.median_upper(x, y, z);
                if (lo != hi) pairs.emplace_back(lo, hi);
            }
    Congruence theta = congruence_generated(l, pairs);
    if (!is_distributive(quotient(l, theta).lattice))
        fail("InternalInvariantViolated", "quotient by theta^d is not distributive");
    return theta;
}

Quotient quotient(const FiniteLattice& l, const Congruence& theta) {
    if (theta.carrier_size() != l.size())
        fail("NotACongruence", "congruence belongs to a different carrier");
    if (!is_congruence(l, theta.partition()))
        fail("NotACongruence", "partition is not compatible with meet and join");

    const int m = theta.block_count();
    std::vector<std::vector<Element>> blocks = theta.blocks();
    std::vector<std::string> names(m);
    for (int b = 0; b < m; ++b) {
        std::string nm = "{";
        for (size_t i = 0; i < blocks[b].size(); ++i) {
            if (i) nm += ",";
            nm += l.name(blocks[b][i]);
        }
        names[b] = nm + "}";
    }
    std::vector<uint8_t> leq(size_t(m) * m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            bool le = false;
            for (Element x : blocks[a]) {
                for (Element y : blocks[b])
                    if (l.leq(x, y)) {
                        le = true;
                        break;
                    }
                if (le) break;
            }
            leq[size_t(a) * m + b] = le ? 1 : 0;
        }
    auto [lattice, pos] = FiniteLattice::from_order_mapped(std::move(names), leq);
    std::vector<int> projection(l.size());
    for (Element x = 0; x < l.size(); ++x) projection[x] = pos[theta.block_of(x)];
    return {std::move(lattice), std::move(projection)};
}

} // namespace medianlab
