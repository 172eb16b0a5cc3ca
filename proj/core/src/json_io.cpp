#include "medianlab/json_io.hpp"

#include <fstream>
#include <unordered_map>

#include "medianlab/error.hpp"

namespace medianlab {

using nlohmann::json;

FiniteLattice lattice_from_json(const json& j) {
    if (!j.is_object() || !j.contains("elements") || !j.contains("covers"))
        fail("BadLatticeFile", "expected an object with 'elements' and 'covers'");
    if (!j["elements"].is_array() || !j["covers"].is_array())
        fail("BadLatticeFile", "'elements' and 'covers' must be arrays");

    std::vector<std::string> names;
    std::unordered_map<std::string, int> index;
    for (const auto& e : j["elements"]) {
        if (!e.is_string()) fail("BadLatticeFile", "element names must be strings");
        std::string nm = e.get<std::string>();
        if (nm.empty()) fail("InvalidName", "element names must be nonempty");
        if (!index.emplace(nm, int(names.size())).second)
            fail("DuplicateElement", "duplicate element '" + nm + "'");
        names.push_back(std::move(nm));
    }
    std::vector<std::pair<int, int>> covers;
    for (const auto& c : j["covers"]) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string())
            fail("BadLatticeFile", "covers must be pairs of element names");
        auto lo = index.find(c[0].get<std::string>());
        auto hi = index.find(c[1].get<std::string>());
        if (lo == index.end()) fail("UnknownElement", "cover references unknown element '" + c[0].get<std::string>() + "'");
        if (hi == index.end()) fail("UnknownElement", "cover references unknown element '" + c[1].get<std::string>() + "'");
        covers.emplace_back(lo->second, hi->second);
    }
    return FiniteLattice::from_covers(std::move(names), std::move(covers), true);
}

json lattice_to_json(const FiniteLattice& l) {
    json j;
    j["elements"] = json::array();
    for (Element x = 0; x < l.size(); ++x) j["elements"].push_back(l.name(x));
    j["covers"] = json::array();
    for (auto [x, y] : l.covers()) j["covers"].push_back(json::array({l.name(x), l.name(y)}));
    return j;
}

FiniteLattice load_lattice_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("BadLatticeFile", "cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        fail("BadLatticeFile", "JSON error in '" + path + "': " + e.what());
    }
    return lattice_from_json(j);
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::string lattice_to_dot(const FiniteLattice& l) {
    std::string dot = "graph lattice {\n  rankdir=BT;\n  node [shape=circle];\n";
    for (Element x = 0; x < l.size(); ++x)
        dot += "  n" + std::to_string(x) + " [label=\"" + dot_escape(l.name(x)) + "\"];\n";
    for (auto [x, y] : l.covers())
        dot += "  n" + std::to_string(x) + " -- n" + std::to_string(y) + ";\n";
    dot += "}\n";
    return dot;
}

json t_poset_to_json(const FiniteLattice& l, const TPoset& tp) {
    json j;
    j["triples"] = json::array();
    j["names"] = json::array();
    j["intervals"] = json::array();
    for (int i = 0; i < tp.count(); ++i) {
        const auto& t = tp.triples[i];
        j["triples"].push_back(json::array({l.name(t[0]), l.name(t[1]), l.name(t[2])}));
        j["names"].push_back(triple_name(l, t));
        json interval = json::array();
        for (Element u : tp.intervals[i]) interval.push_back(l.name(u));
        j["intervals"].push_back(std::move(interval));
    }
    j["order"] = json::array();
    for (int i = 0; i < tp.count(); ++i)
        for (int k = 0; k < tp.count(); ++k)
            if (tp.less(i, k)) j["order"].push_back(json::array({i, k}));
    return j;
}

json om_to_json(const OuterMedianLattice& om) {
    json j;
    j["size"] = om.lattice.size();
    j["names"] = om.names;
    j["covers"] = json::array();
    for (auto [x, y] : om.lattice.covers()) j["covers"].push_back(json::array({x, y}));
    return j;
}

json im_to_json(const MedianClassification& mc) {
    json j;
    j["size"] = mc.im.size();
    json names = json::array();
    for (int om_elem : mc.im_to_om) names.push_back(mc.om.names[om_elem]);
    j["member_names"] = std::move(names);
    return j;
}

json classification_to_json(const MedianClassification& mc) {
    json j = json::array();
    for (size_t i = 0; i < mc.inner.size(); ++i)
        j.push_back(json{{"name", mc.om.names[i]}, {"kind", mc.inner[i] ? "inner" : "outer"}});
    return j;
}

} // namespace medianlab
