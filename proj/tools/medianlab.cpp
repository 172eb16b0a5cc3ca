// medianlab: finite-lattice medians from the command line.
//
// Subcommands: lattice, medians, term, check, catalog, table1. Stdout carries
// machine-readable JSON only; diagnostics go to stderr. Exit codes: 0 success,
// 1 domain error, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "medianlab/catalog.hpp"
#include "medianlab/congruence.hpp"
#include "medianlab/error.hpp"
#include "medianlab/json_io.hpp"
#include "medianlab/median.hpp"
#include "medianlab/term.hpp"

using nlohmann::json;
using namespace medianlab;

namespace {

std::size_t default_cap() {
    if (const char* env = std::getenv("MEDIANLAB_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return std::size_t(v);
        fail("BadCap", "MEDIANLAB_CAP must be a positive integer");
    }
    return kDefaultCap;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) fail("BadOutputFile", "cannot write '" + path + "'");
    out << content;
}

int run_lattice(const std::string& file, const std::string& dot_path) {
    FiniteLattice l = load_lattice_file(file);
    if (!dot_path.empty()) write_file(dot_path, lattice_to_dot(l));
    json j;
    j["size"] = l.size();
    j["distributive"] = is_distributive(l);
    j["modular"] = is_modular(l);
    j["automorphism_count"] = automorphisms(l).size();
    j["theta_d_blocks"] = theta_d(l).block_count();
    emit(j);
    return 0;
}

int run_medians(const std::string& file, bool tposet, bool outer, bool inner,
                const std::string& dot_dir, std::size_t cap) {
    FiniteLattice l = load_lattice_file(file);
    if (!tposet && !outer && !inner) tposet = outer = inner = true;
    json j;
    if (tposet && !inner && !outer) {
        j["t_poset"] = t_poset_to_json(l, t_poset(l));
        emit(j);
        return 0;
    }
    if (inner) {
        MedianClassification mc = inner_median_lattice(l, cap);
        if (tposet) j["t_poset"] = t_poset_to_json(l, mc.om.enumeration.tposet);
        if (outer) j["om"] = om_to_json(mc.om);
        j["im"] = im_to_json(mc);
        j["classification"] = classification_to_json(mc);
        if (!dot_dir.empty()) {
            std::filesystem::create_directories(dot_dir);
            write_file(dot_dir + "/om.dot", lattice_to_dot(mc.om.lattice));
            write_file(dot_dir + "/im.dot", lattice_to_dot(mc.im));
        }
    } else {
        OuterMedianLattice om = outer_median_lattice(l, cap);
        if (tposet) j["t_poset"] = t_poset_to_json(l, om.enumeration.tposet);
        j["om"] = om_to_json(om);
        if (!dot_dir.empty()) {
            std::filesystem::create_directories(dot_dir);
            write_file(dot_dir + "/om.dot", lattice_to_dot(om.lattice));
        }
    }
    emit(j);
    return 0;
}

json check_one(const std::string& id, const FiniteLattice& l, const std::string& what,
               std::size_t cap, bool& all_pass) {
    json r;
    r["lattice"] = id;
    bool pass = false;
    if (what == "modularity-symmetric") {
        bool direct = is_modular(l);
        bool symmetric = modular_by_symmetric_identity(l);
        pass = direct == symmetric;
        r["modular"] = direct;
        r["symmetric_criterion"] = symmetric;
    } else if (what == "two-outer-theorem") {
        TwoOuterReport rep = two_outer_median_characterization(l, cap);
        pass = true; // reaching here means the three conditions agree
        r["om_le_2"] = rep.om_le_2;
        r["om_eq_im"] = rep.om_eq_im;
        r["n5_only"] = rep.n5_only;
    } else if (what == "theta-d") {
        Congruence theta = theta_d(l);
        Quotient q = quotient(l, theta);
        pass = is_distributive(q.lattice);
        r["blocks"] = theta.block_count();
        r["quotient_distributive"] = pass;
    }
    r["pass"] = pass;
    all_pass = all_pass && pass;
    return r;
}

int run_check(const std::string& file, int size, const std::string& what, std::size_t cap) {
    json results = json::array();
    bool all_pass = true;
    if (what == "gluing-prop") {
        if (size <= 0) fail("BadCheck", "gluing-prop requires --size");
        std::vector<FiniteLattice> pool;
        std::vector<std::string> ids;
        for (int n = 1; n <= size - 1; ++n) {
            auto ls = enumerate_lattices(n);
            for (size_t i = 0; i < ls.size(); ++i) {
                ids.push_back("n" + std::to_string(n) + "_" + std::to_string(i));
                pool.push_back(std::move(ls[i]));
            }
        }
        for (size_t i = 0; i < pool.size(); ++i)
            for (size_t k = 0; k < pool.size(); ++k) {
                FiniteLattice expected = direct_product(
                    outer_median_lattice(pool[i], cap).lattice,
                    outer_median_lattice(pool[k], cap).lattice);
                bool sum_ok = is_isomorphic(
                                  outer_median_lattice(linear_sum(pool[i], pool[k]), cap).lattice,
                                  expected)
                                  .isomorphic;
                bool glue_ok = is_isomorphic(
                                   outer_median_lattice(glue(pool[i], pool[k]), cap).lattice,
                                   expected)
                                   .isomorphic;
                json r;
                r["pair"] = json::array({ids[i], ids[k]});
                r["linear_sum"] = sum_ok;
                r["glue"] = glue_ok;
                r["pass"] = sum_ok && glue_ok;
                all_pass = all_pass && sum_ok && glue_ok;
                results.push_back(std::move(r));
            }
    } else if (!file.empty()) {
        results.push_back(check_one(file, load_lattice_file(file), what, cap, all_pass));
    } else {
        std::vector<FiniteLattice> ls = enumerate_lattices(size);
        for (size_t i = 0; i < ls.size(); ++i)
            results.push_back(check_one("n" + std::to_string(size) + "_" + std::to_string(i),
                                        ls[i], what, cap, all_pass));
    }
    json j;
    j["check"] = what;
    j["results"] = std::move(results);
    j["pass"] = all_pass;
    emit(j);
    return all_pass ? 0 : 1;
}

int run_catalog(const std::string& named, int size, int e_param) {
    if (!named.empty()) {
        emit(lattice_to_json(build_named(named)));
        return 0;
    }
    if (e_param > 0) {
        emit(lattice_to_json(build_E(e_param)));
        return 0;
    }
    json arr = json::array();
    for (const FiniteLattice& l : enumerate_lattices(size)) arr.push_back(lattice_to_json(l));
    emit(arr);
    return 0;
}

std::string table1_markdown(const std::vector<Table1Row>& rows) {
    std::string md = "| Name | OM expected | OM computed | IM expected | IM computed | |OM| | |IM| | Match |\n";
    md += "|---|---|---|---|---|---|---|---|\n";
    for (const Table1Row& r : rows) {
        md += "| " + r.name + " | " + r.expected_om + " | " + r.computed_om + " | " + r.expected_im +
              " | " + r.computed_im + " | " + std::to_string(r.om_size) + " | " +
              std::to_string(r.im_size) + " | " + (r.match ? "yes" : "NO") + " |\n";
    }
    return md;
}

int run_table1(bool force_full_m4, const std::string& inject, const std::string& markdown_path) {
    std::vector<Table1Row> rows = reproduce_table1(force_full_m4, inject);
    json arr = json::array();
    bool all = true;
    for (const Table1Row& r : rows) {
        json row;
        row["name"] = r.name;
        row["expected_om"] = r.expected_om;
        row["expected_im"] = r.expected_im;
        row["computed_om"] = r.computed_om;
        row["computed_im"] = r.computed_im;
        row["om_size"] = r.om_size;
        row["im_size"] = r.im_size;
        row["match"] = r.match;
        if (!r.note.empty()) row["note"] = r.note;
        arr.push_back(std::move(row));
        all = all && r.match;
    }
    if (!markdown_path.empty()) write_file(markdown_path, table1_markdown(rows));
    json j;
    j["rows"] = std::move(arr);
    j["all_match"] = all;
    emit(j);
    return all ? 0 : 1;
}

std::vector<Element> parse_assignment(const FiniteLattice& l, const std::string& text) {
    std::vector<Element> out;
    std::string current;
    auto push = [&]() {
        for (Element x = 0; x < l.size(); ++x)
            if (l.name(x) == current) {
                out.push_back(x);
                current.clear();
                return;
            }
        fail("UnknownElement", "no element named '" + current + "'");
    };
    for (char c : text) {
        if (c == ',') push();
        else current += c;
    }
    if (!current.empty()) push();
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-lattice medians: T-posets, outer/inner median lattices, clones"};
    app.require_subcommand(1);

    std::string file, dot_path, dot_dir, named, inject, markdown_path;
    std::string term_text, term_s, term_t, assign_text;
    bool flag_tposet = false, flag_outer = false, flag_inner = false;
    bool force_full_m4 = false;
    int size = 0, e_param = 0;
    std::size_t cap = 0;

    auto* c_lattice = app.add_subcommand("lattice", "validate a lattice file and report structure");
    c_lattice->add_option("file", file)->required();
    c_lattice->add_option("--dot", dot_path, "write a Hasse diagram DOT file");

    auto* c_medians = app.add_subcommand("medians", "T-poset and outer/inner median lattices");
    c_medians->add_option("file", file)->required();
    c_medians->add_flag("--tposet", flag_tposet);
    c_medians->add_flag("--outer", flag_outer);
    c_medians->add_flag("--inner", flag_inner);
    c_medians->add_option("--dot", dot_dir, "directory for om.dot / im.dot");
    c_medians->add_option("--cap", cap, "bound on median and clone set sizes");

    auto* c_term = app.add_subcommand("term", "parse, evaluate and compare lattice terms");
    auto* t_parse = c_term->add_subcommand("parse", "canonical form of a term");
    t_parse->add_option("term", term_text)->required();
    auto* t_eval = c_term->add_subcommand("eval", "evaluate at an assignment");
    t_eval->add_option("term", term_text)->required();
    t_eval->add_option("--lattice", file)->required();
    t_eval->add_option("--at", assign_text, "comma-separated element names")->required();
    auto* t_id = c_term->add_subcommand("identity", "check s = t on a lattice");
    t_id->add_option("s", term_s)->required();
    t_id->add_option("t", term_t)->required();
    t_id->add_option("--lattice", file)->required();
    auto* t_le = c_term->add_subcommand("inequality", "check s <= t on a lattice");
    t_le->add_option("s", term_s)->required();
    t_le->add_option("t", term_t)->required();
    t_le->add_option("--lattice", file)->required();
    c_term->require_subcommand(1);

    auto* c_check = app.add_subcommand("check", "verify structural properties");
    std::string what;
    c_check->add_option("what", what, "one of modularity-symmetric | two-outer-theorem | gluing-prop | theta-d")
        ->required()
        ->check(CLI::IsMember({"modularity-symmetric", "two-outer-theorem", "gluing-prop", "theta-d"}));
    c_check->add_option("--file", file, "lattice file to check");
    c_check->add_option("--size", size, "check all lattices of this size");
    c_check->add_option("--cap", cap);

    auto* c_catalog = app.add_subcommand("catalog", "emit named or enumerated lattices");
    c_catalog->add_option("--named", named, "a named lattice (M3, N5, ..., chain(n), grid(a,b), E(n))");
    c_catalog->add_option("--size", size, "all lattices of this size, up to isomorphism");
    c_catalog->add_option("--E", e_param, "the E(n) family member");

    auto* c_table1 = app.add_subcommand("table1", "reproduce the small-lattice median table");
    c_table1->add_flag("--force-full-m4", force_full_m4, "materialize the 1296-element OM of M4");
    c_table1->add_option("--inject-mismatch", inject, "force one row to mismatch (testing)");
    c_table1->add_option("--markdown", markdown_path, "also write a markdown report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cerr << app.help() << std::flush;
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (cap == 0) cap = default_cap();
        if (c_lattice->parsed()) return run_lattice(file, dot_path);
        if (c_medians->parsed()) return run_medians(file, flag_tposet, flag_outer, flag_inner, dot_dir, cap);
        if (c_term->parsed()) {
            json j;
            if (t_parse->parsed()) {
                Term t = parse_term(term_text);
                j["canonical"] = t.render();
                j["arity"] = t.arity();
            } else if (t_eval->parsed()) {
                FiniteLattice l = load_lattice_file(file);
                Term t = parse_term(term_text);
                std::vector<Element> a = parse_assignment(l, assign_text);
                j["value"] = l.name(t.evaluate(l, a));
            } else {
                FiniteLattice l = load_lattice_file(file);
                Term s = parse_term(term_s), t = parse_term(term_t);
                CheckResult r = t_id->parsed() ? holds_identity(l, s, t) : holds_inequality(l, s, t);
                j["holds"] = r.holds;
                if (r.counterexample) {
                    json w = json::array();
                    for (Element x : *r.counterexample) w.push_back(l.name(x));
                    j["counterexample"] = std::move(w);
                } else {
                    j["counterexample"] = nullptr;
                }
            }
            emit(j);
            return 0;
        }
        if (c_check->parsed()) {
            if (file.empty() && size == 0) fail("BadCheck", "check needs --file or --size");
            return run_check(file, size, what, cap);
        }
        if (c_catalog->parsed()) {
            if (named.empty() && size == 0 && e_param == 0)
                fail("BadCheck", "catalog needs --named, --size or --E");
            return run_catalog(named, size, e_param);
        }
        if (c_table1->parsed()) return run_table1(force_full_m4, inject, markdown_path);
    } catch (const Error& e) {
        json j;
        j["error"] = json{{"code", e.code()}, {"message", e.what()}};
        emit(j);
        std::cerr << e.code() << ": " << e.what() << "\n";
        return 1;
    }
    return 2;
}
