#pragma once

// Independent reference computations for the tests. Nothing here calls the library's
// conversion, product or CSF code; series are checked by evaluating them as honest
// polynomials in finitely many variables.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "chromhopf/graph.hpp"
#include "chromhopf/partition.hpp"
#include "chromhopf/rational.hpp"
#include "chromhopf/series.hpp"

namespace oracle {

using chromhopf::Partition;
using chromhopf::Rational;
using chromhopf::WeightedGraph;

/// Polynomial in a fixed number of variables, exponent vector -> coefficient.
struct Poly {
    std::size_t vars = 0;
    std::map<std::vector<int>, Rational> terms;

    explicit Poly(std::size_t n = 0) : vars(n) {}
    static Poly constant(std::size_t n, const Rational& c)
    {
        Poly p(n);
        if (!c.is_zero()) p.terms[std::vector<int>(n, 0)] = c;
        return p;
    }
    void add(const std::vector<int>& e, const Rational& c)
    {
        auto& slot = terms[e];
        slot += c;
        if (slot.is_zero()) terms.erase(e);
    }
    Poly& operator+=(const Poly& o)
    {
        for (const auto& [e, c] : o.terms) add(e, c);
        return *this;
    }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        Poly out(a.vars);
        for (const auto& [x, c] : a.terms) {
            for (const auto& [y, d] : b.terms) {
                std::vector<int> e(a.vars);
                for (std::size_t i = 0; i < a.vars; ++i) e[i] = x[i] + y[i];
                out.add(e, c * d);
            }
        }
        return out;
    }
    Poly scaled(const Rational& c) const
    {
        Poly out(vars);
        for (const auto& [e, d] : terms) out.add(e, c * d);
        return out;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms == b.terms; }
};

/// Sum of x^alpha over the distinct rearrangements alpha of lambda padded to n variables,
/// restricted to variables in [lo, lo + width).
inline Poly monomial(const Partition& lambda, std::size_t n, std::size_t lo, std::size_t width)
{
    Poly out(n);
    if (lambda.length() > width) return out;
    std::vector<int> alpha(lambda.parts().begin(), lambda.parts().end());
    alpha.resize(width, 0);
    std::sort(alpha.begin(), alpha.end());
    do {
        std::vector<int> e(n, 0);
        for (std::size_t i = 0; i < width; ++i) e[lo + i] = alpha[i];
        out.add(e, Rational(1));
    } while (std::next_permutation(alpha.begin(), alpha.end()));
    return out;
}

inline Rational factorial(int n)
{
    Rational r(1);
    for (int i = 2; i <= n; ++i) r *= Rational(i);
    return r;
}

inline Rational multiplicity_factorial(const Partition& lambda)
{
    std::map<int, int> r;
    for (int x : lambda.parts()) ++r[x];
    Rational out(1);
    for (const auto& [part, k] : r) out *= factorial(k);
    return out;
}

/// Basis element as a polynomial in variables [lo, lo + width) of an n-variable ring.
inline Poly basis_poly(chromhopf::Basis basis, const Partition& lambda, std::size_t n, std::size_t lo,
                       std::size_t width)
{
    using chromhopf::Basis;
    switch (basis) {
    case Basis::m: return monomial(lambda, n, lo, width);
    case Basis::m_tilde: return monomial(lambda, n, lo, width).scaled(multiplicity_factorial(lambda));
    case Basis::p: {
        Poly out = Poly::constant(n, Rational(1));
        for (int part : lambda.parts()) out = out * monomial(Partition{part}, n, lo, width);
        return out;
    }
    case Basis::e: {
        Poly out = Poly::constant(n, Rational(1));
        for (int part : lambda.parts()) out = out * monomial(chromhopf::ones(part), n, lo, width);
        return out;
    }
    }
    return Poly(n);
}

/// A Lambda-series as a polynomial in `width` variables (only meaningful below the cap).
inline Poly series_poly(const chromhopf::Series& f, std::size_t width)
{
    Poly out(width);
    for (const auto& [lambda, c] : f.terms()) out += basis_poly(f.basis(), lambda, width, 0, width).scaled(c);
    return out;
}

/// A tensor as a polynomial in x_0..x_{w-1}, y_0..y_{w-1}.
inline Poly tensor_poly(const chromhopf::TensorSeries& t, std::size_t width)
{
    Poly out(2 * width);
    for (const auto& [key, c] : t.terms()) {
        out += (basis_poly(t.basis(), key.first, 2 * width, 0, width) *
                basis_poly(t.basis(), key.second, 2 * width, width, width))
                   .scaled(c);
    }
    return out;
}

/// f(x, y): the series evaluated on the doubled alphabet.
inline Poly doubled_poly(const chromhopf::Series& f, std::size_t width)
{
    Poly out(2 * width);
    for (const auto& [lambda, c] : f.terms()) out += basis_poly(f.basis(), lambda, 2 * width, 0, 2 * width).scaled(c);
    return out;
}

/// Every set partition of {0..n-1} as a list of blocks, by insertion into earlier blocks.
inline void set_partitions(std::size_t n, const std::function<void(const std::vector<std::vector<std::size_t>>&)>& f)
{
    std::vector<std::vector<std::size_t>> blocks;
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (v == n) {
            f(blocks);
            return;
        }
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            blocks[b].push_back(v);
            rec(v + 1);
            blocks[b].pop_back();
        }
        blocks.push_back({v});
        rec(v + 1);
        blocks.pop_back();
    };
    rec(0);
}

/// [m~_lambda]X_G by the definition: set partitions into stable blocks.
inline std::map<Partition, Rational> stable_partitions(const WeightedGraph& g)
{
    std::map<Partition, Rational> out;
    set_partitions(g.vertex_count(), [&](const std::vector<std::vector<std::size_t>>& blocks) {
        std::vector<int> parts;
        for (const auto& b : blocks) {
            int w = 0;
            for (std::size_t i = 0; i < b.size(); ++i) {
                w += g.weight(b[i]);
                for (std::size_t j = i + 1; j < b.size(); ++j) {
                    if (g.adjacent(b[i], b[j])) return;
                }
            }
            parts.push_back(w);
        }
        out[Partition(parts)] += Rational(1);
    });
    return out;
}

/// Power-sum expansion by the edge-subset formula: sum over S of (-1)^|S| p_{lambda(S)}, where
/// lambda(S) lists the weights of the connected components of (V, S).
inline std::map<Partition, Rational> edge_subset_p(const WeightedGraph& g)
{
    const auto edges = g.edges();
    const std::size_t n = g.vertex_count();
    std::map<Partition, Rational> out;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << edges.size()); ++s) {
        std::vector<std::size_t> parent(n);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            return parent[x] == x ? x : parent[x] = find(parent[x]);
        };
        int size = 0;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (s >> k & 1U) {
                parent[find(edges[k].first)] = find(edges[k].second);
                ++size;
            }
        }
        std::map<std::size_t, int> weight;
        for (std::size_t v = 0; v < n; ++v) weight[find(v)] += g.weight(v);
        std::vector<int> parts;
        for (const auto& [root, w] : weight) parts.push_back(w);
        out[Partition(parts)] += Rational(size % 2 == 0 ? 1 : -1);
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    }
    return out;
}

/// Non-induced 3-vertex paths and triangles, straight from the definitions.
inline std::pair<int, int> paths_and_triangles(const WeightedGraph& g)
{
    const std::size_t n = g.vertex_count();
    int paths = 0;
    int triangles = 0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            for (std::size_t c = b + 1; c < n; ++c) {
                const int e = g.adjacent(a, b) + g.adjacent(b, c) + g.adjacent(a, c);
                if (e == 3) {
                    ++triangles;
                    paths += 3;
                } else if (e == 2) {
                    ++paths;
                }
            }
        }
    }
    return {paths, triangles};
}

inline chromhopf::Series to_series(const std::map<Partition, Rational>& terms, chromhopf::Basis basis,
                                   chromhopf::Algebra algebra = chromhopf::Algebra::Lambda)
{
    chromhopf::Series out(basis, algebra);
    for (const auto& [lambda, c] : terms) out.add(lambda, c);
    return out;
}

} // namespace oracle
