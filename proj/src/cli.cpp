#include "chromhopf/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "chromhopf/csf.hpp"
#include "chromhopf/error.hpp"
#include "chromhopf/io.hpp"
#include "chromhopf/kromatic.hpp"
#include "chromhopf/morphism.hpp"

namespace chromhopf::cli {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string_view::npos ? std::string() : std::string(s.substr(b, e - b + 1));
}

std::vector<int> parse_int_list(std::string_view text, std::string_view what)
{
    std::vector<int> out;
    std::string cleaned;
    for (char ch : text) {
        if (ch != '{' && ch != '}' && ch != '(' && ch != ')' && ch != '[' && ch != ']') {
            cleaned.push_back(ch);
        }
    }
    if (trim(cleaned).empty()) {
        return out;
    }
    std::stringstream ss(cleaned);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (t.empty() || used != t.size()) {
            throw InvalidInput(std::string(what) + ": '" + t + "' is not an integer");
        }
        out.push_back(value);
    }
    return out;
}

Partition parse_partition(std::string_view text)
{
    return Partition(parse_int_list(text, "partition"));
}

// global flags, shared by every verb
struct Globals {
    bool json = false;
    int threads = 1;
};

void emit(std::ostream& out, const Globals& g, const Json& j, const std::string& text)
{
    if (g.json) {
        out << j.dump(2) << "\n";
    } else {
        out << text << "\n";
    }
}

std::string graph_text(const WeightedGraph& g)
{
    std::string s = "vertices:";
    for (const auto& v : g.vertices()) {
        s += " " + v.id + ":" + std::to_string(v.weight);
    }
    s += "\nedges:";
    for (const auto& [i, j] : g.edges()) {
        s += " " + g.vertex(i).id + "-" + g.vertex(j).id;
    }
    return s;
}

Basis basis_arg(const std::string& name)
{
    const auto b = parse_basis(name);
    if (!b) {
        throw InvalidInput("unknown basis '" + name + "' (expected p, m, m_tilde or e)");
    }
    return *b;
}

Algebra algebra_arg(const std::string& name)
{
    const auto a = parse_algebra(name);
    if (!a) {
        throw InvalidInput("unknown algebra '" + name + "' (expected Lambda or LambdaTilde)");
    }
    return *a;
}

std::string phase_vector_text(const std::vector<std::optional<PhaseScalar>>& a)
{
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += (i ? ", " : "") + (a[i] ? a[i]->to_string() : std::string("free"));
    }
    return s + ")";
}

// ---------------------------------------------------------------------------------------------
// Verbs

int do_csf(const Globals& g, const std::string& path, const std::string& basis, const std::string& algebra,
           std::ostream& out)
{
    const WeightedGraph graph = parse_graph_file(path);
    const Series x = csf(graph, basis_arg(basis), algebra_arg(algebra));
    emit(out, g, to_json(x), x.to_string());
    return ok;
}

int do_ksf(const Globals& g, const std::string& path, const std::string& basis, int degree, std::ostream& out)
{
    const WeightedGraph graph = parse_graph_file(path);
    const KBasis b = parse_kbasis(basis);
    KSeries x(b);
    if (b == KBasis::m_tilde_bar) {
        x = ksf_mbar(graph);
    } else if (b == KBasis::omega_p_bar_prime) {
        x = ksf_omega_p(graph, {}, degree);
    } else if (graph.vertex_count() <= 5) {
        x = ksf_oracle(graph, degree);
    } else {
        x = mbar_to_monomial(ksf_mbar(graph), degree);
    }
    emit(out, g, to_json(x), x.to_string());
    return ok;
}

int do_convert(const Globals& g, const std::string& path, const std::string& target, std::ostream& out)
{
    const Series f = series_from_json(read_json_file(path), path);
    const Series h = convert(f, basis_arg(target));
    emit(out, g, to_json(h), h.to_string());
    return ok;
}

int do_complement(const Globals& g, const std::string& path, std::ostream& out)
{
    const WeightedGraph h = complement(parse_graph_file(path));
    emit(out, g, to_json(h), graph_text(h));
    return ok;
}

int do_solve(const Globals& g, const std::string& path, std::uint64_t budget, std::ostream& out)
{
    const WeightedGraph graph = parse_graph_file(path);
    SolveOptions options;
    options.branch_budget = budget;
    const SolveResult r = solve_for_graph(graph, options);
    std::ostringstream text;
    text << "status: " << to_string(r.status) << "\n";
    text << "equations:\n";
    for (const auto& eq : r.equations) {
        text << "  " << eq.to_string() << "\n";
    }
    for (const auto& s : r.solutions) {
        text << "solution: a = " << phase_vector_text(s.a) << "\n";
    }
    if (r.witness) {
        text << "witness: " << r.witness->to_string() << "\n";
        text << "  " << r.witness_detail << "\n";
    }
    for (const auto& eq : r.residual) {
        text << "residual: " << eq.to_string() << "\n";
    }
    text << "branches: " << r.branches;
    emit(out, g, to_json(r), text.str());
    return r.status == SolveStatus::solutions ? ok : verified_false;
}

int do_verify_map(const Globals& g, const std::string& path, const std::string& spec_name,
                  const std::string& classes_path, const std::string& a_list, std::ostream& out)
{
    const WeightedGraph graph = parse_graph_file(path);
    const int N = std::max(graph.total_weight(), 1);
    const int chosen = (spec_name.empty() ? 0 : 1) + (classes_path.empty() ? 0 : 1) + (a_list.empty() ? 0 : 1);
    if (chosen != 1) {
        throw InvalidInput("verify-map needs exactly one of --spec, --classes, --a");
    }
    MorphismSpec spec;
    if (!spec_name.empty()) {
        if (spec_name == "triangle-free") {
            spec = triangle_free_spec(N);
        } else if (spec_name == "all-cliques") {
            spec = all_cliques_spec(N);
        } else if (spec_name == "identity") {
            spec = clique_spec(std::vector<int>(static_cast<std::size_t>(N), 1));
        } else {
            throw InvalidInput("unknown spec '" + spec_name + "' (expected triangle-free, all-cliques, identity)");
        }
    } else if (!classes_path.empty()) {
        spec = spec_from_classes(parse_class_config_file(classes_path), N);
    } else {
        std::vector<Rational> values;
        std::stringstream ss(a_list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            values.push_back(Rational::parse(trim(item)));
        }
        spec = MorphismSpec::from_rationals(values);
    }
    const MapReport r = verify_complement_map(spec, graph);
    Json j = to_json(r);
    j["spec"] = spec.label;
    emit(out, g, j, "phi(X_G) vs X_co(G): " + r.describe());
    return r.equal ? ok : verified_false;
}

int do_verify_diagram(const Globals& g, const std::string& path, const std::string& V, const std::string& E,
                      const std::string& C, std::ostream& out)
{
    const WeightedGraph graph = parse_graph_file(path);
    DiagramConfig cfg;
    cfg.V = parse_int_set(V);
    cfg.E = parse_int_set(E);
    if (C.empty() || C == "rest") {
        cfg.c_is_rest = true;
    } else {
        cfg.C = parse_int_set(C);
    }
    const MapReport r = verify_commuting_diagram(cfg, graph);
    emit(out, g, to_json(r), "phi(X_G) vs theta(X_co(G)): " + r.describe());
    return r.equal ? ok : verified_false;
}

int do_family(const Globals& g, int binary_n, const std::string& blocks, const std::vector<std::string>& files,
              bool verify, std::ostream& out)
{
    std::vector<WeightedGraph> family;
    if (binary_n > 0) {
        if (!files.empty()) {
            throw InvalidInput("family takes either --binary-clique or --graphs");
        }
        const auto B = parse_blocks(blocks.empty() ? "{}" : blocks);
        validate_binary_blocks(B, false);
        for (int n = 1; n <= binary_n; ++n) {
            family.push_back(binary_clique_graph(n, B));
        }
    } else {
        if (files.empty()) {
            throw InvalidInput("family needs --binary-clique N or --graphs FILE...");
        }
        for (const auto& f : files) {
            family.push_back(parse_graph_file(f));
        }
    }
    Json j;
    std::ostringstream text;
    const WeightedGraph& last = family.back();
    if (binary_n > 0) {
        j["graph"] = to_json(last);
        text << "G_" << binary_n << ":\n" << graph_text(last);
    } else {
        j["members"] = family.size();
        text << family.size() << " family members";
    }
    int code = ok;
    if (verify) {
        const FamilyReport closure = family_closure_check(family);
        const ClassConfig cfg = classes_from_family(family);
        int N = 1;
        for (const auto& member : family) {
            N = std::max(N, member.total_weight());
        }
        const MorphismSpec spec = spec_from_classes(cfg, N);
        j["closed"] = closure.ok;
        j["violations"] = closure.violations;
        j["classes"] = to_json(cfg);
        Json maps = Json::array();
        text << "\nclosure: " << (closure.ok ? "closed" : "NOT closed");
        for (const auto& v : closure.violations) {
            text << "\n  " << v;
        }
        bool all_equal = true;
        for (const auto& member : family) {
            const MapReport r = verify_complement_map(spec, member);
            all_equal = all_equal && r.equal;
            Json m = to_json(r);
            m["weight"] = member.total_weight();
            maps.push_back(m);
            text << "\nweight " << member.total_weight() << ": phi(X_G) vs X_co(G): " << r.describe();
        }
        j["maps"] = maps;
        code = closure.ok && all_equal ? ok : verified_false;
    }
    emit(out, g, j, text.str());
    return code;
}

int do_hopf_check(const Globals& g, const std::string& path, const std::string& element, const std::string& basis,
                  const std::string& algebra, std::ostream& out)
{
    if (path.empty() == element.empty()) {
        throw InvalidInput("hopf-check needs exactly one of --graph, --element");
    }
    const Algebra alg = algebra_arg(algebra);
    Series f;
    if (!path.empty()) {
        f = csf(parse_graph_file(path), basis_arg(basis), alg);
    } else {
        const auto colon = element.find(':');
        if (colon == std::string::npos) {
            throw InvalidInput("--element takes basis:parts, for example m_tilde:2,1");
        }
        f = Series::basis_element(basis_arg(element.substr(0, colon)), parse_partition(element.substr(colon + 1)), alg);
    }
    const HopfReport r = hopf_axiom_check(f);
    Json j{{"ok", r.ok}, {"first_violation", r.first_violation}, {"element", to_json(f)}};
    emit(out, g, j, r.ok ? "Hopf axioms hold" : "Hopf axiom violated: " + r.first_violation);
    return r.ok ? ok : verified_false;
}

int do_antipode(const Globals& g, const std::string& path, const std::string& formula, std::ostream& out)
{
    const WeightedGraph graph = parse_graph_file(path);
    if (formula != "schmitt" && formula != "humpert-martin" && formula != "both") {
        throw InvalidInput("unknown formula '" + formula + "' (expected schmitt, humpert-martin, both)");
    }
    const Series s_of_x = antipode(csf_p(graph));
    Json j;
    std::ostringstream text;
    bool agree = true;
    const auto run_one = [&](const char* name, const GraphSum& sum) {
        const auto cmp = compare(csf_of_graphsum(sum), s_of_x);
        agree = agree && cmp.equal;
        j[name] = to_json(sum);
        j[std::string(name) + "_matches_S(X_G)"] = cmp.equal;
        text << name << ": " << sum.to_string() << "\n  X of it vs S(X_G): " << cmp.describe() << "\n";
        return sum;
    };
    std::optional<GraphSum> a;
    std::optional<GraphSum> b;
    if (formula != "humpert-martin") {
        a = run_one("schmitt", antipode_schmitt(graph));
    }
    if (formula != "schmitt") {
        b = run_one("humpert_martin", antipode_humpert_martin(graph));
    }
    if (a && b) {
        const bool same = *a == *b;
        agree = agree && same;
        j["formulas_agree"] = same;
        text << "formulas agree: " << (same ? "yes" : "no") << "\n";
    }
    j["S(X_G)"] = to_json(s_of_x);
    text << "S(X_G) = " << s_of_x.to_string();
    emit(out, g, j, text.str());
    return agree ? ok : verified_false;
}

int do_oracle_check(const Globals& g, const std::string& path, int degree, std::ostream& out)
{
    const WeightedGraph graph = parse_graph_file(path);
    Json j;
    std::ostringstream text;
    bool all = true;
    const auto c1 = compare(csf_oracle(graph), csf_m_tilde(graph));
    const auto c2 = compare(csf_p(graph), csf_m_tilde(graph));
    all = c1.equal && c2.equal;
    j["csf_vs_coloring_oracle"] = c1.equal;
    j["orientation_vs_stable_route"] = c2.equal;
    text << "csf vs coloring oracle: " << c1.describe() << "\n";
    text << "orientation route vs stable-partition route: " << c2.describe();
    if (graph.vertex_count() <= 5 && degree >= graph.total_weight()) {
        const auto c3 = compare(mbar_to_monomial(ksf_mbar(graph), degree), ksf_oracle(graph, degree));
        all = all && c3.equal;
        j["ksf_vs_set_coloring_oracle"] = c3.equal;
        text << "\nksf covers vs set-coloring oracle: " << c3.describe();
    }
    j["ok"] = all;
    emit(out, g, j, text.str());
    return all ? ok : verified_false;
}

} // namespace

std::set<int> parse_int_set(std::string_view text)
{
    const auto values = parse_int_list(text, "integer set");
    return {values.begin(), values.end()};
}

std::vector<std::set<int>> parse_blocks(std::string_view text)
{
    std::vector<std::set<int>> out;
    std::size_t pos = 0;
    const std::string s(text);
    while ((pos = s.find('{', pos)) != std::string::npos) {
        const auto end = s.find('}', pos);
        if (end == std::string::npos) {
            throw InvalidInput("unbalanced braces in block list '" + s + "'");
        }
        const std::set<int> block = parse_int_set(s.substr(pos + 1, end - pos - 1));
        if (!block.empty()) {
            out.push_back(block);
        }
        pos = end + 1;
    }
    if (out.empty() && s.find_first_of("0123456789") != std::string::npos) {
        out.push_back(parse_int_set(s));
    }
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"chromatic and Kromatic symmetric functions of weighted graphs", "chromhopf"};
    app.require_subcommand(1);
    Globals globals;
    app.add_flag("--json", globals.json, "machine-readable output");
    app.add_option("--threads", globals.threads, "accepted for compatibility; computations run on one thread")
        ->check(CLI::PositiveNumber);

    std::string graph, basis = "p", algebra = "Lambda", kbasis = "mb", series, target, spec, classes, a_list;
    std::string V, E, C, blocks, element, formula = "both";
    std::vector<std::string> graphs;
    int degree = 8;
    int binary_n = 0;
    bool verify = false;
    std::uint64_t budget = 100000;

    auto* csf_cmd = app.add_subcommand("csf", "chromatic symmetric function of a graph");
    csf_cmd->add_option("--graph", graph, "graph file")->required();
    csf_cmd->add_option("--basis", basis, "p, m, m_tilde or e");
    csf_cmd->add_option("--algebra", algebra, "Lambda or LambdaTilde");

    auto* ksf_cmd = app.add_subcommand("ksf", "Kromatic symmetric function of a graph");
    ksf_cmd->add_option("--graph", graph, "graph file")->required();
    ksf_cmd->add_option("--basis", kbasis, "mb (m_tilde_bar), wp (omega_p_bar_prime) or m (m_truncated)");
    ksf_cmd->add_option("--degree", degree, "truncation degree")->check(CLI::NonNegativeNumber);

    auto* convert_cmd = app.add_subcommand("convert", "change the basis of a series file");
    convert_cmd->add_option("--series", series, "series file")->required();
    convert_cmd->add_option("--to", target, "target basis")->required();

    auto* complement_cmd = app.add_subcommand("complement", "complement graph");
    complement_cmd->add_option("--graph", graph, "graph file")->required();

    auto* solve_cmd = app.add_subcommand("solve-map", "solve for a_n with phi(X_G) = X_co(G)");
    solve_cmd->add_option("--graph", graph, "graph file")->required();
    solve_cmd->add_option("--budget", budget, "branch budget")->check(CLI::PositiveNumber);

    auto* verify_cmd = app.add_subcommand("verify-map", "check phi(X_G) = X_co(G) for a given spec");
    verify_cmd->add_option("--graph", graph, "graph file")->required();
    verify_cmd->add_option("--spec", spec, "triangle-free, all-cliques or identity");
    verify_cmd->add_option("--classes", classes, "class config file");
    verify_cmd->add_option("--a", a_list, "comma-separated a_1,a_2,...");

    auto* diagram_cmd = app.add_subcommand("verify-diagram", "check phi(X_G) = theta(X_co(G))");
    diagram_cmd->add_option("--graph", graph, "graph file")->required();
    diagram_cmd->add_option("--V", V, "vertex weights, e.g. {1}")->required();
    diagram_cmd->add_option("--E", E, "edge weights, e.g. {2}")->required();
    diagram_cmd->add_option("--C", C, "killed weights; omit or 'rest' for everything else");

    auto* family_cmd = app.add_subcommand("family", "graph families and their class-derived maps");
    family_cmd->add_option("--binary-clique", binary_n, "build binary-clique graphs G_1..G_N")->check(CLI::PositiveNumber);
    family_cmd->add_option("--B", blocks, "blocks of powers of two, e.g. {1,2,4}");
    family_cmd->add_option("--graphs", graphs, "family member files");
    family_cmd->add_flag("--verify", verify, "check closure and the complement map on every member");

    auto* hopf_cmd = app.add_subcommand("hopf-check", "Hopf axioms on one element");
    hopf_cmd->add_option("--graph", graph, "graph file (checks X_G)");
    hopf_cmd->add_option("--element", element, "basis element, e.g. m_tilde:2,1");
    hopf_cmd->add_option("--basis", basis, "basis for X_G");
    hopf_cmd->add_option("--algebra", algebra, "Lambda or LambdaTilde");

    auto* antipode_cmd = app.add_subcommand("antipode", "graph antipode formulas");
    antipode_cmd->add_option("--graph", graph, "graph file")->required();
    antipode_cmd->add_option("--formula", formula, "schmitt, humpert-martin or both");

    auto* oracle_cmd = app.add_subcommand("oracle-check", "compare every route against brute force");
    oracle_cmd->add_option("--graph", graph, "graph file")->required();
    oracle_cmd->add_option("--degree", degree, "truncation degree for the Kromatic check")->check(CLI::NonNegativeNumber);

    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return usage_error;
    }

    try {
        if (*csf_cmd) return do_csf(globals, graph, basis, algebra, out);
        if (*ksf_cmd) return do_ksf(globals, graph, kbasis, degree, out);
        if (*convert_cmd) return do_convert(globals, series, target, out);
        if (*complement_cmd) return do_complement(globals, graph, out);
        if (*solve_cmd) return do_solve(globals, graph, budget, out);
        if (*verify_cmd) return do_verify_map(globals, graph, spec, classes, a_list, out);
        if (*diagram_cmd) return do_verify_diagram(globals, graph, V, E, C, out);
        if (*family_cmd) return do_family(globals, binary_n, blocks, graphs, verify, out);
        if (*hopf_cmd) return do_hopf_check(globals, graph, element, basis, algebra, out);
        if (*antipode_cmd) return do_antipode(globals, graph, formula, out);
        if (*oracle_cmd) return do_oracle_check(globals, graph, degree, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }
    err << "error: no command\n";
    return usage_error;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv;
    argv.push_back("chromhopf");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace chromhopf::cli
