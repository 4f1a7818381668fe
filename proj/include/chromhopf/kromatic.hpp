#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chromhopf/csf.hpp"
#include "chromhopf/graph.hpp"
#include "chromhopf/partition.hpp"
#include "chromhopf/rational.hpp"
#include "chromhopf/series.hpp"

namespace chromhopf {

/// Bases of the completion. m_tilde_bar expansions of KSFs are finite; the other two are always
/// truncated at an explicit degree.
enum class KBasis { m_tilde_bar, omega_p_bar_prime, m_truncated };

std::string_view to_string(KBasis basis);
KBasis parse_kbasis(std::string_view name);

class KSeries {
public:
    using Terms = std::map<Partition, Rational>;

    explicit KSeries(KBasis basis, std::optional<int> cap = std::nullopt);

    KBasis basis() const { return basis_; }
    std::optional<int> cap() const { return cap_; }
    const Terms& terms() const { return terms_; }

    Rational coefficient(const Partition& lambda) const;
    /// Terms above the cap are dropped.
    void add(const Partition& lambda, const Rational& c);
    bool is_zero() const { return terms_.empty(); }
    int min_degree() const;
    KSeries homogeneous_component(int degree) const;
    KSeries truncated(int degree) const;

    KSeries& operator+=(const KSeries& rhs);

    /// As an ordinary m-basis Series over Lambda (m_truncated only).
    Series to_series() const;
    static KSeries from_series(const Series& f, int cap);

    /// "mb[1,1] + 2*mb[2,1]", "wp[2]", "m[1] + O(deg 4)".
    std::string to_string() const;

    friend bool operator==(const KSeries&, const KSeries&) = default;

private:
    KBasis basis_;
    std::optional<int> cap_;
    Terms terms_;
};

struct KComparison {
    bool equal = false;
    /// Common cap, when either side is capped.
    std::optional<int> up_to_degree;
    std::optional<Partition> first_difference;
    Rational left;
    Rational right;
    std::string describe() const;
};
/// Same basis required. Compares through the smaller cap only.
KComparison compare(const KSeries& f, const KSeries& g);

/// Sum over stable set covers C of mb_{lambda(C)}. |V| <= 6.
KSeries ksf_mbar(const WeightedGraph& g);

/// Monomial coefficients of the KSF through degree D, counted from set colorings: the coefficient
/// of m_mu is the number of colorings with color i used on vertices of total weight mu_i.
/// Requires D >= weight(G) and |V| <= 5.
KSeries ksf_oracle(const WeightedGraph& g, int D);

/// Replaces each mb_lambda by the KSF of the weighted clique K^lambda, through degree D. Terms with
/// |lambda| > D only reach degrees above D and are skipped.
KSeries mbar_to_monomial(const KSeries& f, int D);

/// mb_lambda (.) mb_mu = mb_{lambda u mu}, extended bilinearly.
KSeries mbar_odot(const KSeries& f, const KSeries& g);

/// Product of two truncated monomial series; the cap is the smaller of the two.
KSeries monomial_product(const KSeries& f, const KSeries& g);

/// A heap on G stored through its standard word (vertex indices).
struct HeapWord {
    std::vector<std::size_t> word;
    VertexSet support = 0;
    std::size_t size() const { return word.size(); }
    std::string to_string(const WeightedGraph& g) const;
    friend bool operator==(const HeapWord&, const HeapWord&) = default;
};

/// Rank of each vertex under `order` (empty: the graph's own order).
std::vector<std::size_t> order_ranks(const WeightedGraph& g, std::span<const std::size_t> order);

/// Lexicographically largest word equivalent to `word` under commuting distinct nonadjacent letters.
std::vector<std::size_t> standard_word(const WeightedGraph& g, std::span<const std::size_t> ranks,
                                       std::span<const std::size_t> word);
/// Exactly one minimal piece.
bool is_pyramid(const WeightedGraph& g, std::span<const std::size_t> word);
/// No equivalent word is a proper power.
bool is_aperiodic(const WeightedGraph& g, std::span<const std::size_t> ranks, std::span<const std::size_t> word);
/// Rotates the pyramid until the piece at `position` is its base; returns the new standard word.
/// Throws BoundExceeded after `step_budget` rounds.
std::vector<std::size_t> rotate_to_base(const WeightedGraph& g, std::span<const std::size_t> ranks,
                                        std::span<const std::size_t> word, std::size_t position,
                                        std::size_t step_budget = 1000);

/// Lyndon heaps of size s under the vertex order, sorted by standard word. s <= 8.
std::vector<HeapWord> lyndon_heaps(const WeightedGraph& g, std::span<const std::size_t> order, std::size_t s);

/// Coefficient of wp_lambda = number of sets of distinct Lyndon heaps of sizes lambda covering
/// V(G), for |lambda| <= D. Unweighted graphs, |V| <= 4, D <= 8.
KSeries ksf_omega_p(const WeightedGraph& g, std::span<const std::size_t> order, int D);

/// omega(p'bar_n) = sum_{k>=1} (-1)^{k(n+1)} m_{(n^k)}, through degree D.
KSeries omega_p_bar_prime_monomial(int n, int D);
/// Expands a wp series into monomials through degree D.
KSeries omega_p_to_monomial(const KSeries& f, int D);

/// Checks omega_p_bar_prime_monomial(n, D) against the product prod_{i<=vars}(1 - (-x_i)^n) - 1
/// expanded as a polynomial, for every n <= max_n. Returns a failure description, or nullopt.
std::optional<std::string> omega_closed_form_self_test(int max_n = 3, int vars = 8, int D = 8);

struct KMapReport {
    bool equal = false;
    int up_to_degree = 0;
    std::string detail;
};

/// wp_1 -> mb_1, wp_2 -> mb_2, wp_n -> 0 above, applied to ksf_omega_p(G) and routed to monomials,
/// against ksf_oracle(complement(G), D). Throws InvalidInput when G has a triangle or weights.
KMapReport verify_k_triangle_free(const WeightedGraph& g, int D);

/// Rows lambda (|lambda| <= max_degree) are the KSFs of the complements of the disjoint unions
/// G_{lambda_1} |_| ...; columns are mb_mu with |mu| <= max_degree in canonical order.
TriangularityReport cokromatic_check(const std::vector<WeightedGraph>& family, int max_degree);

} // namespace chromhopf
