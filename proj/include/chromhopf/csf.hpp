#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chromhopf/graph.hpp"
#include "chromhopf/series.hpp"

namespace chromhopf {

/// X_G in the m~ basis from stable-set partition counts.
Series csf_m_tilde(const WeightedGraph& g, Algebra algebra = Algebra::Lambda);

/// X_G in the p basis from source components of acyclic orientations, taken with respect to
/// `order` (empty: the graph's own vertex order).
Series csf_p(const WeightedGraph& g, std::span<const std::size_t> order = {});

/// X_G in any basis. p comes from the orientation route, everything else from the stable
/// partition route. LambdaTilde is accepted only with m_tilde.
Series csf(const WeightedGraph& g, Basis basis, Algebra algebra = Algebra::Lambda);

/// Brute force over proper colorings with |V(G)| colors, read off in the m basis.
Series csf_oracle(const WeightedGraph& g, std::size_t bound = 7);

/// One ordered split S |_| T = V(G) of the graph coproduct.
struct GraphSplit {
    WeightedGraph left;
    WeightedGraph right;
};
/// All 2^|V| ordered splits (G|_S, G|_T), S running over subsets in increasing mask order.
std::vector<GraphSplit> wgraphs_coproduct(const WeightedGraph& g);
/// Sum of X_{G|_S} (x) X_{G|_T} over the splits, in the given Lambda basis.
TensorSeries csf_of_splits(std::span<const GraphSplit> splits, Basis basis = Basis::p);

/// Formal Q-linear combination of isomorphism classes of weighted graphs.
class GraphSum {
public:
    struct Term {
        WeightedGraph representative;
        Rational coef;
    };

    explicit GraphSum(std::size_t bound = 10) : bound_(bound) {}

    void add(const WeightedGraph& g, const Rational& c);
    const std::map<CanonicalKey, Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coefficient(const WeightedGraph& g) const;

    GraphSum& operator+=(const GraphSum& rhs);
    /// Disjoint union on representatives, product of coefficients.
    friend GraphSum operator*(const GraphSum& a, const GraphSum& b);

    /// Equal keys with equal coefficients.
    friend bool operator==(const GraphSum& a, const GraphSum& b);

    std::string to_string() const;

private:
    std::size_t bound_;
    std::map<CanonicalKey, Term> terms_;
};

/// Sum over unordered set partitions of V(G) of (-1)^l l! times the union of the induced blocks.
GraphSum antipode_schmitt(const WeightedGraph& g, std::size_t bound = 7);
/// Sum over flats F of (-1)^{kappa(G_{V,F})} |AO(G/F)| G_{V,F}.
GraphSum antipode_humpert_martin(const WeightedGraph& g, std::size_t bound = 7);

/// Linear extension of G -> X_G.
Series csf_of_graphsum(const GraphSum& s, Basis basis = Basis::p);

struct ContractionDeletionReport {
    /// X_G = X_{G\e} - X_{G/e}
    bool deletion_ok = false;
    /// X_{co(G)} = X_{co(G\e)} + X_{co(G/e)} in the m~ basis, G/e the usual contraction
    bool kernel_ok = false;
    /// The same with G/e replaced by contract_edge_common(G, e)
    bool kernel_common_ok = false;
    std::string detail;
    bool ok() const { return deletion_ok && kernel_ok; }
};
ContractionDeletionReport contraction_deletion_check(const WeightedGraph& g, std::size_t i, std::size_t j);

/// Spanning subgraph keeping only the edges inside the given blocks.
WeightedGraph block_subgraph(const WeightedGraph& g, std::span<const VertexSet> blocks);
/// Quotient by the blocks: one vertex per block carrying the block weight, adjacent when some
/// edge of G joins the two blocks.
WeightedGraph block_quotient(const WeightedGraph& g, std::span<const VertexSet> blocks);

/// Rank of a rational matrix, by exact elimination.
std::size_t matrix_rank(std::vector<std::vector<Rational>> rows);

struct TriangularityReport {
    bool unitriangular = false;
    bool invertible = false;
    std::string detail;
};

/// family[n-1] is the graph G_n of weight n. For each lambda with 1 <= |lambda| <= max_degree the
/// row is X of complement(G_{lambda_1} |_| G_{lambda_2} |_| ...) in the m~ basis; the report says
/// whether each degree block is unitriangular in canonical order and of full rank.
TriangularityReport cochromatic_check(const std::vector<WeightedGraph>& family, int max_degree);

/// Whether the homogeneous m~ series lies in the span of the rows of its degree.
bool in_cochromatic_span(const std::vector<WeightedGraph>& family, const Series& target);

} // namespace chromhopf
