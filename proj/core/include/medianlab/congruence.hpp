#pragma once

#include <utility>
#include <vector>

#include "medianlab/lattice.hpp"

namespace medianlab {

/// A meet/join-compatible partition of a lattice's element set. Blocks are
/// numbered canonically by their smallest element.
class Congruence {
public:
    /// Validates compatibility against `carrier`; throws NotACongruence.
    static Congruence from_partition(const FiniteLattice& carrier, const std::vector<int>& block_of);

    int carrier_size() const { return int(block_of_.size()); }
    int block_count() const { return block_count_; }
    int block_of(Element x) const { return block_of_[x]; }
    bool same(Element x, Element y) const { return block_of_[x] == block_of_[y]; }
    const std::vector<int>& partition() const { return block_of_; }

    /// Blocks as element lists, in block order.
    std::vector<std::vector<Element>> blocks() const;

    bool operator==(const Congruence& other) const { return block_of_ == other.block_of_; }

private:
    friend Congruence congruence_generated(const FiniteLattice&,
                                           const std::vector<std::pair<Element, Element>>&);
    Congruence(std::vector<int> block_of, int count)
        : block_of_(std::move(block_of)), block_count_(count) {}

    std::vector<int> block_of_;
    int block_count_ = 0;
};

/// True iff the labeling is an equivalence compatible with meet and join.
bool is_congruence(const FiniteLattice& l, const std::vector<int>& block_of);

/// Least congruence containing the given pairs: union-find closed under
/// x ~ y  =>  x^z ~ y^z and xvz ~ yvz via a worklist of merged pairs.
Congruence congruence_generated(const FiniteLattice& l,
                                const std::vector<std::pair<Element, Element>>& pairs);

/// The congruence generated by all pairs (lower median, upper median) over
/// element triples; its quotient is the largest distributive image.
Congruence theta_d(const FiniteLattice& l);

struct Quotient {
    FiniteLattice lattice;
    std::vector<int> projection; // element -> quotient element
};

/// Factor lattice: blocks ordered by x/θ <= y/θ iff some representatives
/// compare. Throws NotACongruence if θ is not compatible with l.
Quotient quotient(const FiniteLattice& l, const Congruence& theta);

} // namespace medianlab
