// Command-line front end: chamber calculus, complexes, homology and spectral sequences.
// stdout carries JSON only; diagnostics and --pretty renderings go to stderr.

#include <tropgc/json_io.hpp>
#include <tropgc/tropgc.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace tropgc;

namespace {

struct Common {
    int g = 1;
    std::string weights;
    bool pretty = false;
    bool no_cache = false;
};

EnumerationOptions enumeration_options(const Common& c)
{
    EnumerationOptions o;
    if (!c.no_cache)
        o.cache_dir = default_cache_dir();
    return o;
}

WeightDatum datum(int g, const std::string& text, Json& warnings)
{
    WeightDatum a(g, parse_rational_list(text));
    if (a.below_intro_bound()) {
        std::string msg = "2g-2+sum(a) = " + to_string(2 * g - 2 + a.total()) +
                          " is positive but not above 1 (" + to_string(a) + ")";
        std::cerr << "warning: " << msg << "\n";
        warnings.push_back(msg);
    }
    return a;
}

void emit(const Json& j, bool pretty)
{
    std::cout << j.dump(2) << "\n";
    if (pretty)
        std::cerr << j.dump(2) << "\n";
}

void pretty_homology(const HomologyReport& h)
{
    std::cerr << "kind " << to_string(h.kind) << ", g=" << h.g << ", n=" << h.n << "\n";
    std::cerr << "degree  dim  betti  top-weight label\n";
    for (const auto& [k, b] : h.betti) {
        std::cerr << "  " << k << "\t" << h.dims.at(k) << "\t" << b;
        if (h.kind != ChainKind::Relative)
            std::cerr << "\tGr^W_" << h.top_weight() << " H^" << h.cohomological_degree(k);
        std::cerr << "\n";
    }
}

int run_signature(const Common& c)
{
    Json warnings = Json::array();
    const auto a = datum(c.g, c.weights, warnings);
    const auto s = signature(a);
    Json out;
    out["g"] = c.g;
    out["n"] = a.size();
    out["weights"] = to_json(a.entries());
    out["signature"] = to_json(s);
    out["warnings"] = warnings;
    if (c.pretty)
        std::cerr << "signature " << s.compact() << "\n";
    emit(out, false);
    return 0;
}

int run_compare(const Common& c, const std::string& a_text, const std::string& b_text, bool no_prune)
{
    Json warnings = Json::array();
    const auto a = datum(c.g, a_text, warnings);
    const auto b = datum(c.g, b_text, warnings);
    auto out = to_json(compare_up_to_symmetry(a, b, {!no_prune}));
    out["warnings"] = warnings;
    if (c.pretty)
        std::cerr << to_string(a) << " vs " << to_string(b) << ": " << out["relation"].get<std::string>() << "\n";
    emit(out, false);
    return 0;
}

int run_enumerate(const Common& c, std::size_t n, bool orbits)
{
    const auto e = enumerate_chambers(c.g, n);
    Json out;
    out["g"] = c.g;
    out["n"] = n;
    Json walls = Json::array();
    for (auto s : wall_set(c.g, n).subsets)
        walls.push_back(subset_string(s));
    out["walls"] = walls;
    out["chambers"] = e.chambers.size();
    if (orbits)
        out["orbits"] = e.orbit_count();
    Json list = Json::array();
    for (std::size_t i = 0; i < e.chambers.size(); ++i) {
        Json ch;
        ch["index"] = i;
        ch["signs"] = e.chambers[i].compact();
        if (orbits)
            ch["orbit"] = e.orbit_rep[i];
        list.push_back(ch);
    }
    out["signatures"] = list;
    if (orbits) {
        Json part = Json::array();
        for (std::size_t r = 0; r < e.chambers.size(); ++r) {
            if (e.orbit_rep[r] != r)
                continue;
            Json members = Json::array();
            for (std::size_t i = 0; i < e.chambers.size(); ++i)
                if (e.orbit_rep[i] == r)
                    members.push_back(i);
            part.push_back(members);
        }
        out["orbit_partition"] = part;
    }
    if (c.pretty)
        for (std::size_t i = 0; i < e.chambers.size(); ++i)
            std::cerr << i << "  " << e.chambers[i].compact() << "  orbit " << e.orbit_rep[i] << "\n";
    emit(out, false);
    return 0;
}

ChainComplex build(const Common& c, const std::string& kind, const std::string& lower_text, Json& warnings)
{
    const auto a = datum(c.g, c.weights, warnings);
    BuildOptions opts;
    opts.enumeration = enumeration_options(c);
    if (kind == "graph")
        return build_graph_complex(a, opts);
    if (kind == "cellular")
        return build_cellular_complex(a, opts);
    if (kind == "a-part")
        return split_AB(build_cellular_complex(a, opts)).first;
    if (kind == "b-part")
        return split_AB(build_cellular_complex(a, opts)).second;
    if (lower_text.empty())
        throw parse_error("--kind relative needs --lower");
    return build_relative_complex(a, datum(c.g, lower_text, warnings), opts);
}

int run_homology(const Common& c, const std::string& kind, const std::string& lower)
{
    Json warnings = Json::array();
    const auto h = homology(build(c, kind, lower, warnings));
    auto out = to_json(h);
    out["warnings"] = warnings;
    if (c.pretty)
        pretty_homology(h);
    emit(out, false);
    return 0;
}

int run_complex(const Common& c, const std::string& kind, const std::string& lower)
{
    Json warnings = Json::array();
    auto out = to_json(build(c, kind, lower, warnings));
    out["warnings"] = warnings;
    emit(out, c.pretty);
    return 0;
}

int run_graphs(const Common& c, std::size_t m, bool all)
{
    Json warnings = Json::array();
    const auto a = datum(c.g, c.weights, warnings);
    const auto set = enumerate_stable_graphs(a, m, !all, enumeration_options(c));
    Json out;
    out["g"] = set.g;
    out["n"] = set.n;
    out["edges"] = set.m;
    out["pure_only"] = set.pure_only;
    Json classes = Json::array();
    for (const auto& cl : set.classes) {
        Json j;
        j["encoding"] = cl.encoding;
        j["zero"] = cl.has_odd_edge_automorphism;
        classes.push_back(j);
    }
    out["classes"] = classes;
    out["warnings"] = warnings;
    emit(out, c.pretty);
    return 0;
}

int run_spectral(const Common& c, const std::string& input, int page, bool all_pages)
{
    std::ifstream in(input);
    if (!in)
        throw parse_error("cannot read " + input);
    std::stringstream buf;
    buf << in.rdbuf();
    const auto fi = parse_filtration(buf.str());
    const auto aligned = align_chain(fi.chain);
    BuildOptions opts;
    opts.enumeration = enumeration_options(c);
    const FilteredComplex f(aligned.data, opts);
    const int n_steps = f.length();

    Json out;
    out["g"] = fi.g;
    out["n"] = fi.chain.front().size();
    out["N"] = n_steps;
    Json chain = Json::array();
    for (const auto& a : aligned.data)
        chain.push_back(to_json(a.entries()));
    out["chain"] = chain;
    out["permutations"] = aligned.permutations;

    Json pages = Json::object();
    if (page >= 0 && !all_pages) {
        pages[std::to_string(page)] = to_json(f.page_table(page));
    } else {
        for (int r = 0; r <= n_steps; ++r)
            pages[std::to_string(r)] = to_json(f.page_table(r));
    }
    out["pages"] = pages;
    out["einfinity"] = to_json(f.infinity_table());

    const auto h = homology(f.base());
    out["betti"] = degree_map(h.betti);
    const auto rep = decomposition_report(f);
    out["decomposition_ok"] = rep.ok;
    out["within_hypotheses"] = rep.within_hypotheses;
    out["e1_relative"] = e1_relative_check(f, opts);
    out["weight"] = h.top_weight();
    Json tw = Json::array();
    for (auto it = rep.rows.rbegin(); it != rep.rows.rend(); ++it)
        tw.push_back(Json{{"degree", it->cohomological_degree}, {"dim", it->einfinity_sum}});
    out["topweight"] = tw;
    Json lb = Json::array();
    for (const auto& b : rep.lower_bounds)
        lb.push_back(Json{{"degree", b.cohomological_degree}, {"p", b.p}, {"q", b.q}, {"at_least", b.dim}});
    out["lower_bounds"] = lb;
    if (!rep.within_hypotheses)
        std::cerr << "note: g = 0 or n < 2 lies outside the hypotheses of the decomposition theorem\n";
    if (c.pretty) {
        for (const auto& row : rep.rows)
            std::cerr << "k=" << row.degree << "  sum E^inf = " << row.einfinity_sum << "  betti = " << row.betti
                      << "  (Gr^W_" << h.top_weight() << " H^" << row.cohomological_degree << ")\n";
        for (const auto& b : rep.lower_bounds)
            std::cerr << "dim H^" << b.cohomological_degree << " >= " << b.dim << "  (E^inf_{" << b.p << ","
                      << b.q << "})\n";
    }
    emit(out, false);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Graph complexes, chambers and spectral sequences for moduli of weighted curves"};
    app.require_subcommand(1);
    Common common;
    app.add_flag("--pretty", common.pretty, "Also render a human-readable summary on stderr");
    app.add_flag("--no-cache", common.no_cache, "Do not read or write the enumeration cache");

    auto* chambers = app.add_subcommand("chambers", "Chamber signatures, comparison and enumeration");
    chambers->require_subcommand(1);
    auto* sig = chambers->add_subcommand("signature", "Signs of all walls for a weight datum");
    sig->add_option("--g", common.g, "Genus")->required();
    sig->add_option("--weights", common.weights, "Weight datum, e.g. 1/3,1/3,33/100")->required();

    std::string a_text, b_text;
    bool no_prune = false;
    auto* cmp = chambers->add_subcommand("compare", "Compare two weight data up to symmetry");
    cmp->add_option("--g", common.g, "Genus")->required();
    cmp->add_option("--a", a_text, "First weight datum")->required();
    cmp->add_option("--b", b_text, "Second weight datum")->required();
    cmp->add_flag("--no-prune", no_prune, "Visit every permutation");

    std::size_t n = 0;
    bool orbits = false;
    auto* en = chambers->add_subcommand("enumerate", "All nonempty chambers for small n");
    en->add_option("--g", common.g, "Genus")->required();
    en->add_option("--n", n, "Number of markings")->required();
    en->add_flag("--orbits", orbits, "Group chambers into S_n orbits");

    std::string kind = "graph", lower;
    auto* hom = app.add_subcommand("homology", "Betti numbers and top-weight labels");
    hom->add_option("--g", common.g, "Genus")->required();
    hom->add_option("--weights", common.weights, "Weight datum")->required();
    hom->add_option("--kind", kind, "graph|cellular|a-part|b-part|relative")
        ->check(CLI::IsMember({"graph", "cellular", "a-part", "b-part", "relative"}));
    hom->add_option("--lower", lower, "Lower weight datum for --kind relative");

    auto* cx = app.add_subcommand("complex", "Export a chain complex as JSON");
    cx->add_option("--g", common.g, "Genus")->required();
    cx->add_option("--weights", common.weights, "Weight datum")->required();
    cx->add_option("--kind", kind, "graph|cellular|a-part|b-part|relative")
        ->check(CLI::IsMember({"graph", "cellular", "a-part", "b-part", "relative"}));
    cx->add_option("--lower", lower, "Lower weight datum for --kind relative");

    std::size_t edges = 0;
    bool all_graphs = false;
    auto* gr = app.add_subcommand("graphs", "List stable graph classes with a given edge count");
    gr->add_option("--g", common.g, "Genus")->required();
    gr->add_option("--weights", common.weights, "Weight datum")->required();
    gr->add_option("--edges", edges, "Edge count")->required();
    gr->add_flag("--all", all_graphs, "Include graphs with positive vertex weights");

    std::string input;
    int page = -1;
    bool all_pages = false;
    auto* sp = app.add_subcommand("spectral", "Spectral sequence of a chamber filtration");
    sp->add_option("--input", input, "Filtration JSON file")->required();
    sp->add_option("--page", page, "Emit only page r")->check(CLI::NonNegativeNumber);
    sp->add_flag("--all-pages", all_pages, "Emit pages 0..N");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e, std::cerr, std::cerr);
        app.exit(e, std::cerr, std::cerr);
        return 2;
    }

    try {
        if (*sig)
            return run_signature(common);
        if (*cmp)
            return run_compare(common, a_text, b_text, no_prune);
        if (*en)
            return run_enumerate(common, n, orbits);
        if (*hom)
            return run_homology(common, kind, lower);
        if (*cx)
            return run_complex(common, kind, lower);
        if (*gr)
            return run_graphs(common, edges, all_graphs);
        if (*sp)
            return run_spectral(common, input, page, all_pages);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
