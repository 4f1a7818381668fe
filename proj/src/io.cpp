#include "chromhopf/io.hpp"

#include <fstream>
#include <sstream>

#include "chromhopf/error.hpp"

namespace chromhopf {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw InvalidInput(where + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key)) {
        fail(where, std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where)
{
    if (!j.is_object()) {
        fail(where, "expected an object");
    }
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (const char* key : keys) {
            known = known || k == key;
        }
        if (!known) {
            fail(where, "unknown field \"" + k + "\"");
        }
    }
}

std::set<int> int_set_from_json(const Json& j, const std::string& where)
{
    if (!j.is_array()) {
        fail(where, "expected an array of positive integers");
    }
    std::set<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer() || j[i].get<long long>() < 1) {
            fail(where + "[" + std::to_string(i) + "]", "expected a positive integer");
        }
        out.insert(j[i].get<int>());
    }
    return out;
}

} // namespace

Json to_json(const Partition& lambda)
{
    Json out = Json::array();
    for (int part : lambda.parts()) {
        out.push_back(part);
    }
    return out;
}

Json to_json(const Rational& r) { return r.to_string(); }

Json to_json(const PhaseScalar& x)
{
    return Json{{"mag", x.magnitude().to_string()}, {"phase", x.phase().to_string()}};
}

Json to_json(const WeightedGraph& g)
{
    Json vertices = Json::array();
    for (const auto& v : g.vertices()) {
        vertices.push_back(Json{{"id", v.id}, {"weight", v.weight}});
    }
    Json edges = Json::array();
    for (const auto& [i, j] : g.edges()) {
        edges.push_back(Json::array({g.vertex(i).id, g.vertex(j).id}));
    }
    return Json{{"vertices", vertices}, {"edges", edges}};
}

Json to_json(const Series& f)
{
    Json terms = Json::array();
    for (const auto& [lambda, c] : f.terms()) {
        terms.push_back(Json{{"lambda", to_json(lambda)}, {"coef", to_json(c)}});
    }
    return Json{{"basis", std::string(to_string(f.basis()))},
                {"algebra", std::string(to_string(f.algebra()))},
                {"cap", f.cap() ? Json(*f.cap()) : Json(nullptr)},
                {"terms", terms}};
}

Json to_json(const TensorSeries& f)
{
    Json terms = Json::array();
    for (const auto& [key, c] : f.terms()) {
        terms.push_back(Json{{"left", to_json(key.first)}, {"right", to_json(key.second)}, {"coef", to_json(c)}});
    }
    return Json{{"basis", std::string(to_string(f.basis()))},
                {"algebra", std::string(to_string(f.algebra()))},
                {"cap", f.cap() ? Json(*f.cap()) : Json(nullptr)},
                {"terms", terms}};
}

Json to_json(const KSeries& f)
{
    Json terms = Json::array();
    for (const auto& [lambda, c] : f.terms()) {
        terms.push_back(Json{{"lambda", to_json(lambda)}, {"coef", to_json(c)}});
    }
    return Json{{"basis", std::string(to_string(f.basis()))},
                {"cap", f.cap() ? Json(*f.cap()) : Json(nullptr)},
                {"terms", terms}};
}

Json to_json(const GraphSum& s)
{
    Json out = Json::array();
    for (const auto& [key, term] : s.terms()) {
        out.push_back(Json{{"graph", to_json(term.representative)}, {"coef", to_json(term.coef)}});
    }
    return out;
}

Json to_json(const ClassConfig& cfg)
{
    Json classes = Json::object();
    for (const auto& [k, s] : cfg.classes) {
        classes[std::to_string(k)] = Json(std::vector<int>(s.begin(), s.end()));
    }
    Json def = to_json(cfg.default_value);
    if (const auto r = cfg.default_value.to_rational()) {
        def = r->to_string();
    }
    return Json{{"C_star", std::vector<int>(cfg.c_star.begin(), cfg.c_star.end())}, {"classes", classes}, {"default", def}};
}

Json to_json(const MapEquation& eq)
{
    return Json{{"lambda", to_json(eq.lambda)}, {"c", to_json(eq.c)}, {"d", to_json(eq.d)}};
}

Json to_json(const SolveResult& r)
{
    Json equations = Json::array();
    for (const auto& eq : r.equations) {
        equations.push_back(to_json(eq));
    }
    Json solutions = Json::array();
    for (const auto& s : r.solutions) {
        Json a = Json::array();
        for (const auto& x : s.a) {
            a.push_back(x ? to_json(*x) : Json(nullptr));
        }
        solutions.push_back(Json{{"a", a}, {"free", s.free_unknowns}});
    }
    Json residual = Json::array();
    for (const auto& eq : r.residual) {
        residual.push_back(to_json(eq));
    }
    return Json{{"status", std::string(to_string(r.status))},
                {"equations", equations},
                {"solutions", solutions},
                {"witness", r.witness ? to_json(*r.witness) : Json(nullptr)},
                {"witness_detail", r.witness_detail},
                {"residual", residual},
                {"branches", r.branches}};
}

Json to_json(const MapReport& r)
{
    return Json{{"equal", r.equal},
                {"first_difference", r.first_difference ? to_json(*r.first_difference) : Json(nullptr)},
                {"lhs", r.lhs},
                {"rhs", r.rhs}};
}

Json to_json(const HeapWord& h, const WeightedGraph& g)
{
    Json word = Json::array();
    for (std::size_t v : h.word) {
        word.push_back(g.vertex(v).id);
    }
    return Json{{"word", word}, {"size", h.size()}};
}

Partition partition_from_json(const Json& j, const std::string& where)
{
    if (!j.is_array()) {
        fail(where, "expected an array of positive integers");
    }
    std::vector<int> parts;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer() || j[i].get<long long>() < 1) {
            fail(where + "[" + std::to_string(i) + "]", "expected a positive integer");
        }
        if (i > 0 && j[i].get<long long>() > j[i - 1].get<long long>()) {
            fail(where, "parts must be weakly decreasing");
        }
        parts.push_back(j[i].get<int>());
    }
    return Partition(std::move(parts));
}

Rational rational_from_json(const Json& j, const std::string& where)
{
    if (j.is_number_integer()) {
        return Rational(j.get<std::int64_t>());
    }
    if (!j.is_string()) {
        fail(where, "expected a \"p/q\" string");
    }
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const InvalidInput& e) {
        fail(where, e.what());
    }
}

PhaseScalar phase_scalar_from_json(const Json& j, const std::string& where)
{
    if (j.is_string() || j.is_number_integer()) {
        return PhaseScalar::from_rational(rational_from_json(j, where));
    }
    only_keys(j, {"mag", "phase"}, where);
    const Rational mag = rational_from_json(member(j, "mag", where), where + ".mag");
    const Rational phase = rational_from_json(member(j, "phase", where), where + ".phase");
    if (mag.sign() < 0) {
        fail(where + ".mag", "magnitude must be nonnegative");
    }
    return PhaseScalar(mag, phase);
}

WeightedGraph graph_from_json(const Json& j, const std::string& where)
{
    only_keys(j, {"vertices", "edges"}, where);
    const Json& vertices = member(j, "vertices", where);
    if (!vertices.is_array()) {
        fail(where + ".vertices", "expected an array");
    }
    WeightedGraph g;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const std::string at = where + ".vertices[" + std::to_string(i) + "]";
        const Json& v = vertices[i];
        only_keys(v, {"id", "weight"}, at);
        const Json& id = member(v, "id", at);
        if (!id.is_string() || id.get<std::string>().empty()) {
            fail(at + ".id", "expected a nonempty string");
        }
        int weight = 1;
        if (v.contains("weight")) {
            const Json& w = v.at("weight");
            if (!w.is_number_integer() || w.get<long long>() < 1 || w.get<long long>() > 1000000) {
                fail(at + ".weight", "weights are positive integers");
            }
            weight = w.get<int>();
        }
        try {
            g.add_vertex(id.get<std::string>(), weight);
        } catch (const Error& e) {
            fail(at, e.what());
        }
    }
    const Json& edges = j.contains("edges") ? j.at("edges") : Json::array();
    if (!edges.is_array()) {
        fail(where + ".edges", "expected an array");
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string at = where + ".edges[" + std::to_string(i) + "]";
        const Json& e = edges[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
            fail(at, "expected a pair of vertex ids");
        }
        try {
            g.add_edge(e[0].get<std::string>(), e[1].get<std::string>());
        } catch (const Error& err) {
            fail(at, err.what());
        }
    }
    return g;
}

Series series_from_json(const Json& j, const std::string& where)
{
    only_keys(j, {"basis", "algebra", "cap", "terms"}, where);
    const Json& b = member(j, "basis", where);
    const auto basis = b.is_string() ? parse_basis(b.get<std::string>()) : std::nullopt;
    if (!basis) {
        fail(where + ".basis", "expected one of p, m, m_tilde, e");
    }
    Algebra algebra = Algebra::Lambda;
    if (j.contains("algebra")) {
        const Json& a = j.at("algebra");
        const auto parsed = a.is_string() ? parse_algebra(a.get<std::string>()) : std::nullopt;
        if (!parsed) {
            fail(where + ".algebra", "expected Lambda or LambdaTilde");
        }
        algebra = *parsed;
    }
    std::optional<int> cap;
    if (j.contains("cap") && !j.at("cap").is_null()) {
        if (!j.at("cap").is_number_integer() || j.at("cap").get<long long>() < 0) {
            fail(where + ".cap", "expected null or a nonnegative integer");
        }
        cap = j.at("cap").get<int>();
    }
    if (!basis_allowed(*basis, algebra)) {
        fail(where, "basis not allowed in this algebra");
    }
    Series out(*basis, algebra, cap);
    const Json& terms = member(j, "terms", where);
    if (!terms.is_array()) {
        fail(where + ".terms", "expected an array");
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string at = where + ".terms[" + std::to_string(i) + "]";
        only_keys(terms[i], {"lambda", "coef"}, at);
        out.add(partition_from_json(member(terms[i], "lambda", at), at + ".lambda"),
                rational_from_json(member(terms[i], "coef", at), at + ".coef"));
    }
    return out;
}

KSeries kseries_from_json(const Json& j, const std::string& where)
{
    only_keys(j, {"basis", "cap", "terms"}, where);
    const Json& b = member(j, "basis", where);
    if (!b.is_string()) {
        fail(where + ".basis", "expected a K basis name");
    }
    KBasis basis{};
    try {
        basis = parse_kbasis(b.get<std::string>());
    } catch (const InvalidInput& e) {
        fail(where + ".basis", e.what());
    }
    std::optional<int> cap;
    if (j.contains("cap") && !j.at("cap").is_null()) {
        if (!j.at("cap").is_number_integer() || j.at("cap").get<long long>() < 0) {
            fail(where + ".cap", "expected null or a nonnegative integer");
        }
        cap = j.at("cap").get<int>();
    }
    KSeries out(basis, cap);
    const Json& terms = member(j, "terms", where);
    if (!terms.is_array()) {
        fail(where + ".terms", "expected an array");
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string at = where + ".terms[" + std::to_string(i) + "]";
        only_keys(terms[i], {"lambda", "coef"}, at);
        out.add(partition_from_json(member(terms[i], "lambda", at), at + ".lambda"),
                rational_from_json(member(terms[i], "coef", at), at + ".coef"));
    }
    return out;
}

GraphSum graph_sum_from_json(const Json& j, const std::string& where)
{
    if (!j.is_array()) {
        fail(where, "expected an array of {graph, coef}");
    }
    GraphSum out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        only_keys(j[i], {"graph", "coef"}, at);
        out.add(graph_from_json(member(j[i], "graph", at), at + ".graph"),
                rational_from_json(member(j[i], "coef", at), at + ".coef"));
    }
    return out;
}

ClassConfig class_config_from_json(const Json& j, const std::string& where)
{
    only_keys(j, {"C_star", "classes", "default"}, where);
    ClassConfig cfg;
    if (j.contains("C_star")) {
        cfg.c_star = int_set_from_json(j.at("C_star"), where + ".C_star");
    }
    if (j.contains("classes")) {
        const Json& classes = j.at("classes");
        if (!classes.is_object()) {
            fail(where + ".classes", "expected an object keyed by k");
        }
        for (const auto& [key, value] : classes.items()) {
            int k = 0;
            try {
                std::size_t used = 0;
                k = std::stoi(key, &used);
                if (used != key.size()) {
                    k = 0;
                }
            } catch (const std::exception&) {
                k = 0;
            }
            if (k < 1) {
                fail(where + ".classes", "class key \"" + key + "\" must be an integer >= 1");
            }
            cfg.classes[k] = int_set_from_json(value, where + ".classes." + key);
        }
    }
    if (j.contains("default")) {
        cfg.default_value = phase_scalar_from_json(j.at("default"), where + ".default");
    }
    try {
        cfg.validate();
    } catch (const InvalidInput& e) {
        fail(where, e.what());
    }
    return cfg;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput(path + ": cannot open file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw InvalidInput(path + ":" + std::to_string(line) + ":" + std::to_string(column) + ": malformed JSON");
    }
}

WeightedGraph parse_graph_file(const std::string& path)
{
    return graph_from_json(read_json_file(path), path);
}

ClassConfig parse_class_config_file(const std::string& path)
{
    return class_config_from_json(read_json_file(path), path);
}

} // namespace chromhopf
