#include "chromhopf/morphism.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

#include "chromhopf/error.hpp"

namespace chromhopf {

namespace {

Rational clique_coefficient(int k)
{
    // (-1)^{k-1} / (k-1)!
    Rational c = factorial(static_cast<unsigned>(k - 1)).inverse();
    return k % 2 == 1 ? c : -c;
}

std::string set_text(const std::set<int>& s)
{
    std::string out = "{";
    for (int x : s) {
        out += (out.size() > 1 ? "," : "") + std::to_string(x);
    }
    return out + "}";
}

} // namespace

// ---------------------------------------------------------------------------------------------
// Specs

const PhaseScalar& MorphismSpec::at(int n) const
{
    if (n < 1 || n > degree()) {
        throw InvalidInput("part " + std::to_string(n) + " exceeds the morphism range 1.." + std::to_string(degree()));
    }
    return a[static_cast<std::size_t>(n - 1)];
}

bool MorphismSpec::is_real() const
{
    return std::all_of(a.begin(), a.end(), [](const PhaseScalar& x) { return x.is_real(); });
}

MorphismSpec MorphismSpec::from_rationals(const std::vector<Rational>& values, std::string label)
{
    MorphismSpec spec;
    spec.label = std::move(label);
    for (const auto& v : values) {
        spec.a.push_back(PhaseScalar::from_rational(v));
    }
    return spec;
}

MorphismSpec triangle_free_spec(int N)
{
    std::vector<Rational> values;
    for (int n = 1; n <= N; ++n) {
        values.push_back(n == 1 ? Rational(1) : n == 2 ? Rational(-1) : Rational(0));
    }
    return MorphismSpec::from_rationals(values, "triangle-free");
}

MorphismSpec clique_spec(const std::vector<int>& v)
{
    std::vector<Rational> values;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 1 || v[i] > static_cast<int>(i) + 1) {
            throw InvalidInput("clique_spec needs 1 <= v_n <= n");
        }
        values.push_back(clique_coefficient(v[i]));
    }
    return MorphismSpec::from_rationals(values, "clique-family");
}

MorphismSpec all_cliques_spec(int N)
{
    std::vector<int> v;
    for (int n = 1; n <= N; ++n) {
        v.push_back(n);
    }
    return clique_spec(v);
}

void ClassConfig::validate() const
{
    std::set<int> seen;
    const auto take = [&](const std::set<int>& s, const std::string& name) {
        for (int n : s) {
            if (n < 1) {
                throw InvalidInput("class " + name + " contains nonpositive " + std::to_string(n));
            }
            if (!seen.insert(n).second) {
                throw InvalidInput("classes overlap at " + std::to_string(n));
            }
        }
    };
    take(c_star, "C*");
    for (const auto& [k, s] : classes) {
        if (k < 1) {
            throw InvalidInput("class index must be >= 1, got " + std::to_string(k));
        }
        take(s, "C_" + std::to_string(k));
    }
}

std::optional<int> ClassConfig::class_of(int n) const
{
    if (c_star.count(n)) {
        return 0;
    }
    for (const auto& [k, s] : classes) {
        if (s.count(n)) {
            return k;
        }
    }
    return std::nullopt;
}

MorphismSpec spec_from_classes(const ClassConfig& cfg, int N)
{
    cfg.validate();
    if (N < 1) {
        throw InvalidInput("spec_from_classes needs N >= 1");
    }
    MorphismSpec spec;
    spec.label = "class-based";
    for (int n = 1; n <= N; ++n) {
        const auto k = cfg.class_of(n);
        if (!k) {
            spec.a.push_back(cfg.default_value);
        } else if (*k == 0) {
            spec.a.push_back(PhaseScalar());
        } else {
            spec.a.push_back(PhaseScalar::from_rational(clique_coefficient(*k)));
        }
    }
    return spec;
}

ClassConfig classes_from_family(const std::vector<WeightedGraph>& family)
{
    std::map<int, int> cls;
    for (const auto& g : family) {
        const VertexSet all = g.all();
        for (std::uint64_t s = 1; s <= all; ++s) {
            const auto mask = static_cast<VertexSet>(s);
            if ((mask & ~all) || !g.is_connected(mask)) {
                continue;
            }
            const int w = g.weight_of(mask);
            const int k = g.is_clique(mask) ? std::popcount(mask) : 0;
            const auto [it, inserted] = cls.emplace(w, k);
            if (!inserted && it->second != k) {
                throw InvalidInput("weight " + std::to_string(w) + " is both " +
                                   (it->second ? "a " + std::to_string(it->second) + "-clique" : "a non-clique") +
                                   " and " + (k ? "a " + std::to_string(k) + "-clique" : "a non-clique") + " weight");
            }
        }
    }
    ClassConfig cfg;
    for (const auto& [w, k] : cls) {
        if (k == 0) {
            cfg.c_star.insert(w);
        } else {
            cfg.classes[k].insert(w);
        }
    }
    return cfg;
}

// ---------------------------------------------------------------------------------------------
// Applying a spec

std::optional<Series> PhaseSeries::to_series() const
{
    Series out(Basis::m_tilde, Algebra::LambdaTilde);
    for (const auto& [lambda, c] : terms) {
        const auto r = c.to_rational();
        if (!r) {
            return std::nullopt;
        }
        out.add(lambda, *r);
    }
    return out;
}

std::string PhaseSeries::to_string() const
{
    if (const auto s = to_series()) {
        return s->to_string();
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [lambda, c] : terms) {
        os << (first ? "" : " + ") << "(" << c << ")*mt" << lambda;
        first = false;
    }
    return os.str();
}

PhaseSeries apply_phase(const MorphismSpec& spec, const Series& f)
{
    if (f.algebra() != Algebra::Lambda) {
        throw InvalidInput("morphisms act on Lambda series");
    }
    PhaseSeries out;
    const Series in_p = convert(f, Basis::p);
    for (const auto& [lambda, c] : in_p.terms()) {
        PhaseScalar value = PhaseScalar::from_rational(c);
        for (int part : lambda.parts()) {
            value *= spec.at(part);
        }
        if (!value.is_zero()) {
            out.terms.emplace(lambda, value);
        }
    }
    return out;
}

Series apply(const MorphismSpec& spec, const Series& f)
{
    if (!spec.is_real()) {
        throw InvalidInput("apply: spec has non-real entries; use apply_phase");
    }
    return *apply_phase(spec, f).to_series();
}

std::string MapReport::describe() const
{
    if (equal) {
        return "equal";
    }
    return "differ at " + first_difference->to_string() + ": " + lhs + " vs " + rhs;
}

namespace {

MapReport compare_phase(const PhaseSeries& lhs, const Series& rhs)
{
    MapReport report;
    std::set<Partition> keys;
    for (const auto& [lambda, c] : lhs.terms) keys.insert(lambda);
    for (const auto& [lambda, c] : rhs.terms()) keys.insert(lambda);
    for (const auto& lambda : keys) {
        const auto it = lhs.terms.find(lambda);
        const PhaseScalar a = it == lhs.terms.end() ? PhaseScalar() : it->second;
        const PhaseScalar b = PhaseScalar::from_rational(rhs.coefficient(lambda));
        if (a != b) {
            report.first_difference = lambda;
            report.lhs = a.to_string();
            report.rhs = b.to_string();
            return report;
        }
    }
    report.equal = true;
    return report;
}

} // namespace

MapReport verify_complement_map(const MorphismSpec& spec, const WeightedGraph& g)
{
    if (g.total_weight() > spec.degree()) {
        throw InvalidInput("graph weight " + std::to_string(g.total_weight()) + " exceeds the map degree " +
                           std::to_string(spec.degree()));
    }
    return compare_phase(apply_phase(spec, csf_p(g)), csf_m_tilde(complement(g), Algebra::LambdaTilde));
}

// ---------------------------------------------------------------------------------------------
// Characters

Rational character_eval(const CharacterValues& a, const Series& f)
{
    if (f.basis() != Basis::m_tilde) {
        throw InvalidInput("character_eval needs an m_tilde series");
    }
    Rational total;
    for (const auto& [lambda, c] : f.terms()) {
        Rational term = c;
        for (int part : lambda.parts()) {
            const auto it = a.find(part);
            if (it == a.end()) {
                throw InvalidInput("character value a_" + std::to_string(part) + " is undefined");
            }
            term *= it->second;
        }
        total += term;
    }
    return total;
}

Rational character_eval(const CharacterValues& a, const WeightedGraph& g)
{
    return character_eval(a, csf_m_tilde(g, Algebra::LambdaTilde));
}

CharacterValues character_convolve(const CharacterValues& a, const CharacterValues& b)
{
    CharacterValues out;
    if (a.size() != b.size()) {
        throw InvalidInput("character_convolve: domains differ");
    }
    for (const auto& [n, x] : a) {
        const auto it = b.find(n);
        if (it == b.end()) {
            throw InvalidInput("character_convolve: domains differ");
        }
        out[n] = x + it->second;
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Solver

std::string MapEquation::to_string() const
{
    std::ostringstream os;
    os << c << "*";
    bool first = true;
    for (const auto& [part, mult] : lambda.multiplicities()) {
        os << (first ? "" : "*") << "a" << part;
        if (mult > 1) {
            os << "^" << mult;
        }
        first = false;
    }
    os << " = " << d << "  [lambda=" << lambda << "]";
    return os.str();
}

std::string_view to_string(SolveStatus status)
{
    switch (status) {
    case SolveStatus::solutions: return "solutions";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::no_exact_root: return "no_exact_root";
    case SolveStatus::undetermined: return "undetermined";
    }
    return "?";
}

MorphismSpec MapSolution::spec() const
{
    MorphismSpec s;
    s.label = "solved";
    for (const auto& x : a) {
        s.a.push_back(x.value_or(PhaseScalar()));
    }
    return s;
}

std::vector<MapEquation> map_equations(const WeightedGraph& g)
{
    const Series x = csf_p(g);
    const Series y = csf_m_tilde(complement(g));
    std::vector<MapEquation> out;
    for (const auto& lambda : partitions_of(g.total_weight())) {
        const Rational c = x.coefficient(lambda);
        const Rational d = y.coefficient(lambda);
        if (!c.is_zero() || !d.is_zero()) {
            out.push_back({lambda, c, d});
        }
    }
    return out;
}

namespace {

using Assignment = std::vector<std::optional<PhaseScalar>>;

struct Evaluation {
    PhaseScalar known = PhaseScalar::one();
    /// (part, multiplicity) of the unknowns.
    std::vector<std::pair<int, int>> unknown;
};

Evaluation evaluate(const MapEquation& eq, const Assignment& a)
{
    Evaluation ev;
    for (const auto& [part, mult] : eq.lambda.multiplicities()) {
        const auto& x = a[static_cast<std::size_t>(part - 1)];
        if (x) {
            ev.known *= x->pow(static_cast<unsigned>(mult));
        } else {
            ev.unknown.emplace_back(part, mult);
        }
    }
    return ev;
}

class Solver {
public:
    Solver(std::vector<MapEquation> eqs, std::size_t n, std::uint64_t budget)
        : eqs_(std::move(eqs)), n_(n), budget_(budget)
    {
    }

    void run(SolveResult& result)
    {
        step(Assignment(n_));
        result.branches = branches_;
        for (const auto& s : solutions_) {
            result.solutions.push_back(s);
        }
        if (!result.solutions.empty()) {
            result.status = SolveStatus::solutions;
        } else if (no_root_) {
            result.status = SolveStatus::no_exact_root;
            result.witness = no_root_->first;
            result.witness_detail = no_root_->second;
        } else if (residual_) {
            result.status = SolveStatus::undetermined;
            result.residual = *residual_;
        } else {
            result.status = SolveStatus::infeasible;
            if (infeasible_) {
                result.witness = infeasible_->first;
                result.witness_detail = infeasible_->second;
            }
        }
    }

private:
    void fail_infeasible(const MapEquation& eq, std::string detail)
    {
        if (!infeasible_) {
            infeasible_.emplace(eq, std::move(detail));
        }
    }

    void step(Assignment a)
    {
        if (++branches_ > budget_) {
            throw BoundExceeded("solver branch budget of " + std::to_string(budget_) + " exceeded");
        }
        while (true) {
            std::vector<Evaluation> evs;
            for (const auto& eq : eqs_) {
                evs.push_back(evaluate(eq, a));
                const auto& ev = evs.back();
                if (ev.known.is_zero() && !eq.d.is_zero()) {
                    fail_infeasible(eq, "a zero factor forces the left side to 0 but the right side is " +
                                            eq.d.to_string());
                    return;
                }
                if (ev.unknown.empty()) {
                    const PhaseScalar lhs = ev.known * PhaseScalar::from_rational(eq.c);
                    if (lhs != PhaseScalar::from_rational(eq.d)) {
                        fail_infeasible(eq, "left side evaluates to " + lhs.to_string() + ", right side is " +
                                                eq.d.to_string());
                        return;
                    }
                }
            }
            // one unknown, nonzero right side: branch over the exact roots
            for (std::size_t i = 0; i < eqs_.size(); ++i) {
                const auto& eq = eqs_[i];
                const auto& ev = evs[i];
                if (eq.d.is_zero() || ev.unknown.size() != 1) {
                    continue;
                }
                const auto [part, mult] = ev.unknown.front();
                const PhaseScalar target = PhaseScalar::from_rational(eq.d / eq.c) / ev.known;
                std::vector<PhaseScalar> roots;
                try {
                    roots = target.kth_roots(static_cast<unsigned>(mult));
                } catch (const NoExactRoot& err) {
                    if (!no_root_) {
                        no_root_.emplace(eq, err.what());
                    }
                    return;
                }
                for (const auto& r : roots) {
                    Assignment next = a;
                    next[static_cast<std::size_t>(part - 1)] = r;
                    step(std::move(next));
                }
                return;
            }
            // zero right side with one unknown: that unknown is 0
            bool forced = false;
            for (std::size_t i = 0; i < eqs_.size() && !forced; ++i) {
                if (eqs_[i].d.is_zero() && !evs[i].known.is_zero() && evs[i].unknown.size() == 1) {
                    a[static_cast<std::size_t>(evs[i].unknown.front().first - 1)] = PhaseScalar();
                    forced = true;
                }
            }
            if (forced) {
                continue;
            }
            // zero right side with several unknowns: branch on which one vanishes
            for (std::size_t i = 0; i < eqs_.size(); ++i) {
                if (eqs_[i].d.is_zero() && !evs[i].known.is_zero() && evs[i].unknown.size() >= 2) {
                    for (const auto& [part, mult] : evs[i].unknown) {
                        Assignment next = a;
                        next[static_cast<std::size_t>(part - 1)] = PhaseScalar();
                        step(std::move(next));
                    }
                    return;
                }
            }
            std::vector<MapEquation> stalled;
            for (std::size_t i = 0; i < eqs_.size(); ++i) {
                if (!eqs_[i].d.is_zero() && evs[i].unknown.size() >= 2) {
                    stalled.push_back(eqs_[i]);
                }
            }
            if (!stalled.empty()) {
                if (!residual_) {
                    residual_ = std::move(stalled);
                }
                return;
            }
            MapSolution s;
            s.a = a;
            for (std::size_t k = 0; k < a.size(); ++k) {
                if (!a[k]) {
                    s.free_unknowns.push_back(static_cast<int>(k) + 1);
                }
            }
            const bool duplicate = std::any_of(solutions_.begin(), solutions_.end(),
                                               [&](const MapSolution& t) { return t.a == s.a; });
            if (!duplicate) {
                solutions_.push_back(std::move(s));
            }
            return;
        }
    }

    std::vector<MapEquation> eqs_;
    std::size_t n_;
    std::uint64_t budget_;
    std::uint64_t branches_ = 0;
    std::vector<MapSolution> solutions_;
    std::optional<std::pair<MapEquation, std::string>> infeasible_;
    std::optional<std::pair<MapEquation, std::string>> no_root_;
    std::optional<std::vector<MapEquation>> residual_;
};

} // namespace

SolveResult solve_for_graph(const WeightedGraph& g, const SolveOptions& options)
{
    SolveResult result;
    result.equations = map_equations(g);
    for (const auto& eq : result.equations) {
        if (eq.c.is_zero()) {
            result.status = SolveStatus::infeasible;
            result.witness = eq;
            result.witness_detail = "[p_lambda]X_G = 0 but [m~_lambda]X_co(G) = " + eq.d.to_string();
            return result;
        }
    }
    Solver solver(result.equations, static_cast<std::size_t>(g.total_weight()), options.branch_budget);
    solver.run(result);
    return result;
}

// ---------------------------------------------------------------------------------------------
// Families and the commuting diagram

FamilyReport family_closure_check(const std::vector<WeightedGraph>& family)
{
    std::map<int, std::size_t> by_weight;
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (!by_weight.emplace(family[i].total_weight(), i).second) {
            throw InvalidInput("family has two members of weight " + std::to_string(family[i].total_weight()));
        }
    }
    std::map<int, CanonicalKey> keys;
    for (const auto& [w, i] : by_weight) {
        keys[w] = canonical_form(family[i]);
    }
    FamilyReport report;
    for (const auto& [w, i] : by_weight) {
        const auto& g = family[i];
        const VertexSet all = g.all();
        for (std::uint64_t s = 1; s <= all; ++s) {
            const auto mask = static_cast<VertexSet>(s);
            if (!g.is_connected(mask)) {
                continue;
            }
            const WeightedGraph h = induced_subgraph(g, mask);
            const int hw = h.total_weight();
            const auto it = keys.find(hw);
            std::string where = "member of weight " + std::to_string(w) + ", subset {";
            for (std::size_t v = 0; v < g.vertex_count(); ++v) {
                if (mask >> v & 1U) {
                    where += (where.back() == '{' ? "" : ",") + g.vertex(v).id;
                }
            }
            where += "}";
            if (it == keys.end()) {
                report.ok = false;
                report.violations.push_back(where + ": no family member of weight " + std::to_string(hw));
            } else if (canonical_form(h) != it->second) {
                report.ok = false;
                report.violations.push_back(where + ": not isomorphic to the member of weight " + std::to_string(hw));
            }
        }
    }
    return report;
}

void DiagramConfig::validate() const
{
    for (int n : V) {
        if (n < 1 || E.count(n) || C.count(n)) {
            throw InvalidInput("V, E, C must be disjoint sets of positive integers (" + std::to_string(n) + ")");
        }
    }
    for (int n : E) {
        if (n < 1 || C.count(n)) {
            throw InvalidInput("V, E, C must be disjoint sets of positive integers (" + std::to_string(n) + ")");
        }
    }
    for (int n : C) {
        if (n < 1) {
            throw InvalidInput("V, E, C must be disjoint sets of positive integers (" + std::to_string(n) + ")");
        }
    }
}

std::optional<int> DiagramConfig::class_of(int n) const
{
    if (V.count(n)) return 1;
    if (E.count(n)) return 2;
    if (C.count(n) || c_is_rest) return 3;
    return std::nullopt;
}

namespace {

int diagram_class(const DiagramConfig& cfg, int n)
{
    const auto k = cfg.class_of(n);
    if (!k) {
        throw InvalidInput("part " + std::to_string(n) + " is in none of V=" + set_text(cfg.V) + ", E=" +
                           set_text(cfg.E) + ", C=" + set_text(cfg.C));
    }
    return *k;
}

} // namespace

Series theta(const DiagramConfig& cfg, const Series& f)
{
    cfg.validate();
    if (f.basis() != Basis::m_tilde) {
        throw InvalidInput("theta acts on m_tilde series");
    }
    Series out(Basis::m_tilde, Algebra::LambdaTilde, f.cap());
    for (const auto& [lambda, c] : f.terms()) {
        bool killed = false;
        for (int part : lambda.parts()) {
            killed = diagram_class(cfg, part) == 3 || killed;
        }
        if (!killed) {
            out.add(lambda, c);
        }
    }
    return out;
}

MorphismSpec diagram_spec(const DiagramConfig& cfg, int N)
{
    cfg.validate();
    std::vector<Rational> values;
    for (int n = 1; n <= N; ++n) {
        const int k = diagram_class(cfg, n);
        values.push_back(k == 1 ? Rational(1) : k == 2 ? Rational(-1) : Rational(0));
    }
    return MorphismSpec::from_rationals(values, "diagram");
}

MapReport verify_commuting_diagram(const DiagramConfig& cfg, const WeightedGraph& g)
{
    cfg.validate();
    // phi part by part, so unclassified parts that never occur are harmless
    Series lhs(Basis::m_tilde, Algebra::LambdaTilde);
    const Series x = csf_p(g);
    for (const auto& [lambda, c] : x.terms()) {
        Rational value = c;
        for (int part : lambda.parts()) {
            const int k = diagram_class(cfg, part);
            value *= k == 1 ? Rational(1) : k == 2 ? Rational(-1) : Rational(0);
        }
        lhs.add(lambda, value);
    }
    const Series rhs = theta(cfg, csf_m_tilde(complement(g), Algebra::LambdaTilde));
    MapReport report;
    const auto cmp = compare(lhs, rhs);
    report.equal = cmp.equal;
    if (!cmp.equal) {
        report.first_difference = cmp.first_difference;
        report.lhs = cmp.left.to_string();
        report.rhs = cmp.right.to_string();
    }
    return report;
}

bool admissible_triangle_free(const DiagramConfig& cfg, const WeightedGraph& g)
{
    if (!is_triangle_free(g)) {
        return false;
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (cfg.class_of(g.weight(v)) != 1) {
            return false;
        }
    }
    for (const auto& [i, j] : g.edges()) {
        if (cfg.class_of(g.weight(i) + g.weight(j)) != 2) {
            return false;
        }
    }
    const VertexSet all = g.all();
    for (std::uint64_t s = 1; s <= all; ++s) {
        const auto mask = static_cast<VertexSet>(s);
        if (std::popcount(mask) >= 3 && g.is_connected(mask) && cfg.class_of(g.weight_of(mask)) != 3) {
            return false;
        }
    }
    return true;
}

} // namespace chromhopf
