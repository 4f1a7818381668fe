#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chromhopf/csf.hpp"
#include "chromhopf/graph.hpp"
#include "chromhopf/phase_scalar.hpp"
#include "chromhopf/series.hpp"

namespace chromhopf {

/// The algebra map Lambda -> LambdaTilde with p_n -> a_n m~_n for n = 1..N.
struct MorphismSpec {
    /// a[n-1] = a_n.
    std::vector<PhaseScalar> a;
    std::string label = "custom";

    int degree() const { return static_cast<int>(a.size()); }
    /// Throws InvalidInput when n is outside 1..N.
    const PhaseScalar& at(int n) const;
    bool is_real() const;

    static MorphismSpec from_rationals(const std::vector<Rational>& values, std::string label = "custom");
};

/// a_n = 1 for n = 1, -1 for n = 2, 0 above.
MorphismSpec triangle_free_spec(int N);
/// a_n = (-1)^{v_n - 1} / (v_n - 1)!, with v given for n = 1..N.
MorphismSpec clique_spec(const std::vector<int>& v);
/// v_n = n.
MorphismSpec all_cliques_spec(int N);

/// Pairwise disjoint classes C*, C_1, C_2, ... of positive integers.
struct ClassConfig {
    std::set<int> c_star;
    std::map<int, std::set<int>> classes;
    PhaseScalar default_value;

    /// Throws InvalidInput on overlaps or class index < 1.
    void validate() const;
    /// 0 for C*, k for C_k, nullopt when n is unclassified.
    std::optional<int> class_of(int n) const;
};

MorphismSpec spec_from_classes(const ClassConfig& cfg, int N);

/// Reads C* and C_k off the connected induced subgraphs of the given graphs: a clique on k
/// vertices puts its weight in C_k, a non-clique puts it in C*. Throws InvalidInput when a
/// weight lands in two classes.
ClassConfig classes_from_family(const std::vector<WeightedGraph>& family);

/// m~-basis series over LambdaTilde whose coefficients are PhaseScalars.
struct PhaseSeries {
    std::map<Partition, PhaseScalar> terms;
    /// The Rational series, when every coefficient is real.
    std::optional<Series> to_series() const;
    std::string to_string() const;
    friend bool operator==(const PhaseSeries&, const PhaseSeries&) = default;
};

/// Coefficient of m~_lambda is [p_lambda]f * prod a_{lambda_i}. f must be a Lambda series.
PhaseSeries apply_phase(const MorphismSpec& spec, const Series& f);
/// Same for real specs, as an ordinary m~ series over LambdaTilde.
Series apply(const MorphismSpec& spec, const Series& f);

struct MapReport {
    bool equal = false;
    std::optional<Partition> first_difference;
    std::string lhs;
    std::string rhs;
    std::string describe() const;
};

/// phi(X_G) against X_{co(G)}.
MapReport verify_complement_map(const MorphismSpec& spec, const WeightedGraph& g);

/// Values a_n of a character of LambdaTilde, keyed by n.
using CharacterValues = std::map<int, Rational>;
/// sum_lambda |St_lambda(G)| prod a_{lambda_i}.
Rational character_eval(const CharacterValues& a, const WeightedGraph& g);
/// The same character on an m~ series.
Rational character_eval(const CharacterValues& a, const Series& f);
/// Pointwise sum. Throws InvalidInput when the domains differ.
CharacterValues character_convolve(const CharacterValues& a, const CharacterValues& b);

/// One equation c * prod_i a_{lambda_i} = d with c = [p_lambda]X_G and d = [m~_lambda]X_{co(G)}.
struct MapEquation {
    Partition lambda;
    Rational c;
    Rational d;
    std::string to_string() const;
};

enum class SolveStatus { solutions, infeasible, no_exact_root, undetermined };
std::string_view to_string(SolveStatus status);

struct MapSolution {
    /// a[n-1]; nullopt for unknowns no equation pins down.
    std::vector<std::optional<PhaseScalar>> a;
    std::vector<int> free_unknowns;
    /// The solution as a spec, free unknowns set to 0.
    MorphismSpec spec() const;
};

struct SolveResult {
    SolveStatus status = SolveStatus::infeasible;
    std::vector<MapEquation> equations;
    std::vector<MapSolution> solutions;
    /// The violated (or rootless) equation, for infeasible and no_exact_root.
    std::optional<MapEquation> witness;
    std::string witness_detail;
    /// Equations left with several unknowns when elimination stalls.
    std::vector<MapEquation> residual;
    std::uint64_t branches = 0;
};

struct SolveOptions {
    std::uint64_t branch_budget = 100000;
};

/// Every a_1..a_n (n = weight(G)) with phi(X_G) = X_{co(G)}, by multiplicative elimination.
SolveResult solve_for_graph(const WeightedGraph& g, const SolveOptions& options = {});
/// The equations alone.
std::vector<MapEquation> map_equations(const WeightedGraph& g);

struct FamilyReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Each family member is indexed by its total weight. Every connected induced subgraph of every
/// member must be isomorphic to the member of equal weight. Throws on duplicate weights.
FamilyReport family_closure_check(const std::vector<WeightedGraph>& family);

/// The sets V, E, C. When c_is_rest, C is everything outside V and E.
struct DiagramConfig {
    std::set<int> V;
    std::set<int> E;
    std::set<int> C;
    bool c_is_rest = false;

    void validate() const;
    /// 1, 2 or 3 for V, E, C; nullopt when unclassified.
    std::optional<int> class_of(int n) const;
};

/// theta: m~_lambda -> m~_lambda when every part is in V or E, 0 when a part is in C.
Series theta(const DiagramConfig& cfg, const Series& f);
/// phi with a_n = 1 on V, -1 on E, 0 on C, for n = 1..N.
MorphismSpec diagram_spec(const DiagramConfig& cfg, int N);

/// phi(X_G) against theta(X_{co(G)}).
MapReport verify_commuting_diagram(const DiagramConfig& cfg, const WeightedGraph& g);

/// Whether G satisfies the weighted triangle-free hypotheses for (V, E, C): triangle-free,
/// vertex weights in V, edge weights in E, connected subgraphs on >= 3 vertices weighing in C.
bool admissible_triangle_free(const DiagramConfig& cfg, const WeightedGraph& g);

} // namespace chromhopf
