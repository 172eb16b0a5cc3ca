#pragma once

#include <string>

#include "json.hpp"
#include "medianlab/lattice.hpp"
#include "medianlab/median.hpp"

namespace medianlab {

/// Lattice file schema: {"elements": ["0","a",...], "covers": [["0","a"],...]}.
/// Names must be unique nonempty strings; covers must be a transitive
/// reduction (RedundantCover otherwise).
FiniteLattice lattice_from_json(const nlohmann::json& j);
nlohmann::json lattice_to_json(const FiniteLattice& l);

/// Reads and validates a lattice file. Throws BadLatticeFile on IO or JSON
/// syntax problems, otherwise the validation errors of from_covers.
FiniteLattice load_lattice_file(const std::string& path);

/// Hasse diagram: one node per element labeled by name, one edge per cover,
/// drawn bottom to top.
std::string lattice_to_dot(const FiniteLattice& l);

nlohmann::json t_poset_to_json(const FiniteLattice& l, const TPoset& tp);
nlohmann::json om_to_json(const OuterMedianLattice& om);
nlohmann::json im_to_json(const MedianClassification& mc);
nlohmann::json classification_to_json(const MedianClassification& mc);

} // namespace medianlab
