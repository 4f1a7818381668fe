#include "chromhopf/csf.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

#include "chromhopf/error.hpp"

namespace chromhopf {

Series csf_m_tilde(const WeightedGraph& g, Algebra algebra)
{
    Series out(Basis::m_tilde, algebra);
    for (const auto& [lambda, count] : stable_partition_counts(g)) {
        out.add(lambda, Rational(mpz_class(std::to_string(count))));
    }
    return out;
}

Series csf_p(const WeightedGraph& g, std::span<const std::size_t> order)
{
    std::map<Partition, std::int64_t> signed_counts;
    const bool odd_vertices = g.vertex_count() % 2 == 1;
    for_each_acyclic_orientation(g, [&](const Orientation& gamma) {
        const Partition lambda = source_component_partition(g, gamma, order);
        const bool negative = odd_vertices != (lambda.length() % 2 == 1);
        signed_counts[lambda] += negative ? -1 : 1;
    });
    Series out(Basis::p);
    for (const auto& [lambda, c] : signed_counts) {
        out.add(lambda, Rational(c));
    }
    return out;
}

Series csf(const WeightedGraph& g, Basis basis, Algebra algebra)
{
    if (!basis_allowed(basis, algebra)) {
        throw InvalidInput("csf: basis not allowed in the requested algebra");
    }
    if (basis == Basis::p) {
        return csf_p(g);
    }
    return convert(csf_m_tilde(g, algebra), basis);
}

Series csf_oracle(const WeightedGraph& g, std::size_t bound)
{
    const std::size_t n = g.vertex_count();
    if (n > bound) {
        throw BoundExceeded("csf_oracle bound is " + std::to_string(bound) + " vertices");
    }
    std::vector<std::size_t> color(n, 0);
    std::vector<int> exponent(n, 0);
    std::map<Partition, std::int64_t> counts;
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (v == n) {
            // only weakly decreasing exponent vectors are the leading monomials of some m_lambda
            if (std::is_sorted(exponent.begin(), exponent.end(), std::greater<>())) {
                std::vector<int> parts;
                for (int x : exponent) {
                    if (x > 0) parts.push_back(x);
                }
                ++counts[Partition(std::move(parts))];
            }
            return;
        }
        for (std::size_t c = 0; c < n; ++c) {
            bool proper = true;
            for (std::size_t u = 0; u < v && proper; ++u) {
                proper = !(g.adjacent(u, v) && color[u] == c);
            }
            if (!proper) {
                continue;
            }
            color[v] = c;
            exponent[c] += g.weight(v);
            rec(v + 1);
            exponent[c] -= g.weight(v);
        }
    };
    rec(0);
    Series out(Basis::m);
    for (const auto& [lambda, c] : counts) {
        out.add(lambda, Rational(c));
    }
    return out;
}

std::vector<GraphSplit> wgraphs_coproduct(const WeightedGraph& g)
{
    std::vector<GraphSplit> out;
    const VertexSet all = g.all();
    for (std::uint64_t s = 0; s <= all; ++s) {
        const auto mask = static_cast<VertexSet>(s);
        out.push_back({induced_subgraph(g, mask), induced_subgraph(g, all & ~mask)});
    }
    return out;
}

TensorSeries csf_of_splits(std::span<const GraphSplit> splits, Basis basis)
{
    TensorSeries out(basis, Algebra::Lambda);
    for (const auto& split : splits) {
        const Series a = csf(split.left, basis);
        const Series b = csf(split.right, basis);
        for (const auto& [lambda, x] : a.terms()) {
            for (const auto& [mu, y] : b.terms()) {
                out.add(lambda, mu, x * y);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// GraphSum

void GraphSum::add(const WeightedGraph& g, const Rational& c)
{
    if (c.is_zero()) {
        return;
    }
    const CanonicalKey key = canonical_form(g, bound_);
    auto [it, inserted] = terms_.try_emplace(key, Term{g, c});
    if (!inserted) {
        it->second.coef += c;
        if (it->second.coef.is_zero()) {
            terms_.erase(it);
        }
    }
}

Rational GraphSum::coefficient(const WeightedGraph& g) const
{
    const auto it = terms_.find(canonical_form(g, bound_));
    return it == terms_.end() ? Rational(0) : it->second.coef;
}

GraphSum& GraphSum::operator+=(const GraphSum& rhs)
{
    for (const auto& [key, term] : rhs.terms_) {
        add(term.representative, term.coef);
    }
    return *this;
}

GraphSum operator*(const GraphSum& a, const GraphSum& b)
{
    GraphSum out(std::max(a.bound_, b.bound_));
    for (const auto& [ka, ta] : a.terms_) {
        for (const auto& [kb, tb] : b.terms_) {
            out.add(disjoint_union(ta.representative, tb.representative), ta.coef * tb.coef);
        }
    }
    return out;
}

bool operator==(const GraphSum& a, const GraphSum& b)
{
    if (a.terms_.size() != b.terms_.size()) {
        return false;
    }
    for (const auto& [key, term] : a.terms_) {
        const auto it = b.terms_.find(key);
        if (it == b.terms_.end() || it->second.coef != term.coef) {
            return false;
        }
    }
    return true;
}

std::string GraphSum::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, term] : terms_) {
        const auto& g = term.representative;
        std::string body = "G(";
        for (std::size_t i = 0; i < g.vertex_count(); ++i) {
            body += (i ? "," : "") + g.vertex(i).id + ":" + std::to_string(g.weight(i));
        }
        body += ";";
        bool first_edge = true;
        for (const auto& [i, j] : g.edges()) {
            body += (first_edge ? "" : ",") + g.vertex(i).id + "-" + g.vertex(j).id;
            first_edge = false;
        }
        body += ")";
        const bool negative = term.coef.sign() < 0;
        os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
        if (term.coef.abs() != Rational(1)) {
            os << term.coef.abs() << "*";
        }
        os << body;
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------------------------
// Antipodes

WeightedGraph block_subgraph(const WeightedGraph& g, std::span<const VertexSet> blocks)
{
    WeightedGraph out;
    for (const auto& v : g.vertices()) {
        out.add_vertex(v.id, v.weight);
    }
    for (const auto& [i, j] : g.edges()) {
        for (VertexSet b : blocks) {
            if ((b >> i & 1U) && (b >> j & 1U)) {
                out.add_edge(i, j);
                break;
            }
        }
    }
    return out;
}

WeightedGraph block_quotient(const WeightedGraph& g, std::span<const VertexSet> blocks)
{
    WeightedGraph out;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        out.add_vertex(default_vertex_id(b), g.weight_of(blocks[b]));
    }
    for (std::size_t a = 0; a < blocks.size(); ++a) {
        VertexSet around = 0;
        for (VertexSet s = blocks[a]; s; s &= s - 1) {
            around |= g.neighbors(static_cast<std::size_t>(std::countr_zero(s)));
        }
        for (std::size_t b = a + 1; b < blocks.size(); ++b) {
            if (around & blocks[b]) {
                out.add_edge(a, b);
            }
        }
    }
    return out;
}

GraphSum antipode_schmitt(const WeightedGraph& g, std::size_t bound)
{
    if (g.vertex_count() > bound) {
        throw BoundExceeded("antipode_schmitt bound is " + std::to_string(bound) + " vertices");
    }
    GraphSum out(std::max<std::size_t>(bound, 10));
    for_each_set_partition(g.vertex_count(), [&](std::span<const VertexSet> blocks) {
        const std::size_t l = blocks.size();
        Rational c = factorial(static_cast<unsigned>(l));
        if (l % 2 == 1) {
            c = -c;
        }
        out.add(block_subgraph(g, blocks), c);
    });
    return out;
}

GraphSum antipode_humpert_martin(const WeightedGraph& g, std::size_t bound)
{
    if (g.vertex_count() > bound) {
        throw BoundExceeded("antipode_humpert_martin bound is " + std::to_string(bound) + " vertices");
    }
    GraphSum out(std::max<std::size_t>(bound, 10));
    // A flat is the edge set of a set partition whose blocks induce connected subgraphs.
    for_each_set_partition(g.vertex_count(), [&](std::span<const VertexSet> blocks) {
        for (VertexSet b : blocks) {
            if (!g.is_connected(b)) {
                return;
            }
        }
        const std::uint64_t orientations = acyclic_orientation_count(block_quotient(g, blocks));
        Rational c(mpz_class(std::to_string(orientations)));
        if (blocks.size() % 2 == 1) {
            c = -c;
        }
        out.add(block_subgraph(g, blocks), c);
    });
    return out;
}

Series csf_of_graphsum(const GraphSum& s, Basis basis)
{
    Series out(basis);
    for (const auto& [key, term] : s.terms()) {
        out += csf(term.representative, basis) * term.coef;
    }
    return out;
}

ContractionDeletionReport contraction_deletion_check(const WeightedGraph& g, std::size_t i, std::size_t j)
{
    if (i >= g.vertex_count() || j >= g.vertex_count() || !g.adjacent(i, j)) {
        throw InvalidInput("contraction_deletion_check: not an edge");
    }
    ContractionDeletionReport report;
    const WeightedGraph deleted = delete_edge(g, i, j);
    const WeightedGraph contracted = contract_edge(g, i, j);

    const Series lhs = csf_p(g);
    const Series rhs = csf_p(deleted) - csf_p(contracted);
    const auto c1 = compare(lhs, rhs);
    report.deletion_ok = c1.equal;

    const Series co = csf_m_tilde(complement(g), Algebra::LambdaTilde);
    const Series co_sum =
        csf_m_tilde(complement(deleted), Algebra::LambdaTilde) + csf_m_tilde(complement(contracted), Algebra::LambdaTilde);
    const auto c2 = compare(co, co_sum);
    report.kernel_ok = c2.equal;

    const Series co_common = csf_m_tilde(complement(deleted), Algebra::LambdaTilde) +
                             csf_m_tilde(complement(contract_edge_common(g, i, j)), Algebra::LambdaTilde);
    const auto c3 = compare(co, co_common);
    report.kernel_common_ok = c3.equal;

    report.detail = "deletion-contraction: " + c1.describe() + "; complement kernel: " + c2.describe() +
                    "; common-neighbor kernel: " + c3.describe();
    return report;
}

} // namespace chromhopf

namespace chromhopf {

// ---------------------------------------------------------------------------------------------
// Cochromatic rows

std::size_t matrix_rank(std::vector<std::vector<Rational>> rows)
{
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c].is_zero()) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c].is_zero()) {
                continue;
            }
            const Rational f = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k) {
                rows[r][k] -= f * rows[rank][k];
            }
        }
        ++rank;
    }
    return rank;
}

namespace {

WeightedGraph family_product(const std::vector<WeightedGraph>& family, const Partition& lambda)
{
    WeightedGraph g;
    for (int part : lambda.parts()) {
        if (part > static_cast<int>(family.size())) {
            throw InvalidInput("family has no member of weight " + std::to_string(part));
        }
        const WeightedGraph& member = family[static_cast<std::size_t>(part - 1)];
        if (member.total_weight() != part) {
            throw InvalidInput("family member " + std::to_string(part) + " has weight " +
                               std::to_string(member.total_weight()));
        }
        g = disjoint_union(g, member);
    }
    return g;
}

std::vector<std::vector<Rational>> cochromatic_block(const std::vector<WeightedGraph>& family, int degree)
{
    const auto columns = partitions_of(degree);
    std::vector<std::vector<Rational>> rows;
    for (const auto& lambda : columns) {
        const Series x = csf_m_tilde(complement(family_product(family, lambda)));
        std::vector<Rational> row;
        for (const auto& mu : columns) {
            row.push_back(x.coefficient(mu));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

TriangularityReport cochromatic_check(const std::vector<WeightedGraph>& family, int max_degree)
{
    TriangularityReport report;
    report.unitriangular = true;
    report.invertible = true;
    for (int d = 1; d <= max_degree; ++d) {
        const auto columns = partitions_of(d);
        const auto rows = cochromatic_block(family, d);
        for (std::size_t i = 0; i < rows.size() && report.unitriangular; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                const Rational expected = i == j ? Rational(1) : Rational(0);
                if (rows[i][j] != expected) {
                    report.unitriangular = false;
                    report.detail = "row " + columns[i].to_string() + ", column " + columns[j].to_string() + ": " +
                                    rows[i][j].to_string();
                    break;
                }
            }
        }
        if (report.invertible && matrix_rank(rows) != rows.size()) {
            report.invertible = false;
            if (report.detail.empty()) {
                report.detail = "degree " + std::to_string(d) + " block is singular";
            }
        }
    }
    return report;
}

bool in_cochromatic_span(const std::vector<WeightedGraph>& family, const Series& target)
{
    if (target.basis() != Basis::m_tilde || target.is_zero()) {
        throw InvalidInput("in_cochromatic_span needs a nonzero m_tilde series");
    }
    const int d = target.max_degree();
    if (target.min_degree() != d) {
        throw InvalidInput("in_cochromatic_span needs a homogeneous series");
    }
    auto rows = cochromatic_block(family, d);
    const std::size_t base = matrix_rank(rows);
    std::vector<Rational> t;
    for (const auto& mu : partitions_of(d)) {
        t.push_back(target.coefficient(mu));
    }
    rows.push_back(std::move(t));
    return matrix_rank(std::move(rows)) == base;
}

} // namespace chromhopf
