#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "chromhopf/error.hpp"
#include "chromhopf/graph.hpp"
#include "support.hpp"

using namespace chromhopf;

namespace {

WeightedGraph path3() { return make_graph(3, {{0, 1}, {1, 2}}); }
WeightedGraph clique(std::size_t n) { return special_graph(SpecialKind::clique, ones(static_cast<int>(n))); }

// Smallest (weights, adjacency) encoding over all vertex permutations.
std::vector<int> brute_canonical(const WeightedGraph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<int> best;
    do {
        std::vector<int> code;
        for (std::size_t i = 0; i < n; ++i) code.push_back(g.weight(perm[i]));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) code.push_back(g.adjacent(perm[i], perm[j]));
        }
        if (best.empty() || code < best) best = code;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

WeightedGraph permuted(const WeightedGraph& g, const std::vector<std::size_t>& perm)
{
    WeightedGraph h;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) h.add_vertex(g.vertex(perm[i]).id, g.weight(perm[i]));
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        for (std::size_t j = i + 1; j < g.vertex_count(); ++j) {
            if (g.adjacent(perm[i], perm[j])) h.add_edge(i, j);
        }
    }
    return h;
}

bool acyclic_by_dfs(std::size_t n, const std::vector<std::vector<std::size_t>>& out)
{
    std::vector<int> state(n, 0);
    std::function<bool(std::size_t)> visit = [&](std::size_t v) {
        state[v] = 1;
        for (std::size_t w : out[v]) {
            if (state[w] == 1) return false;
            if (state[w] == 0 && !visit(w)) return false;
        }
        state[v] = 2;
        return true;
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (state[v] == 0 && !visit(v)) return false;
    }
    return true;
}

std::uint64_t brute_acyclic_count(const WeightedGraph& g)
{
    const auto edges = g.edges();
    std::uint64_t count = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << edges.size()); ++s) {
        std::vector<std::vector<std::size_t>> out(g.vertex_count());
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const auto [a, b] = edges[k];
            if (s >> k & 1U) {
                out[b].push_back(a);
            } else {
                out[a].push_back(b);
            }
        }
        count += acyclic_by_dfs(g.vertex_count(), out);
    }
    return count;
}

} // namespace

TEST(Graph, Construction)
{
    WeightedGraph g;
    g.add_vertex("a");
    g.add_vertex("b", 2);
    g.add_edge("a", "b");
    EXPECT_EQ(g.edge_count(), 1U);
    EXPECT_EQ(g.total_weight(), 3);
    EXPECT_FALSE(g.is_unweighted());
    EXPECT_THROW(g.add_edge("a", "b"), InvalidInput);
    EXPECT_THROW(g.add_edge("a", "a"), InvalidInput);
    EXPECT_THROW(g.add_edge("a", "zz"), InvalidInput);
    EXPECT_THROW(g.add_vertex("a"), InvalidInput);
    EXPECT_THROW(g.add_vertex("c", 0), InvalidInput);
    EXPECT_THROW(g.add_vertex(""), InvalidInput);
}

TEST(Graph, Complement)
{
    const auto c = complement(path3());
    EXPECT_EQ(c.edges(), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}}));
    EXPECT_EQ(complement(clique(4)).edge_count(), 0U);
    const auto edgeless = special_graph(SpecialKind::edgeless, {2, 1, 1});
    EXPECT_EQ(complement(edgeless), special_graph(SpecialKind::clique, {2, 1, 1}));
    EXPECT_EQ(complement(special_graph(SpecialKind::clique, {3, 2})), special_graph(SpecialKind::edgeless, {3, 2}));
}

TEST(Graph, UnionAndJoin)
{
    const auto k1 = clique(1);
    const auto u = disjoint_union(k1, k1);
    EXPECT_EQ(u.vertex_count(), 2U);
    EXPECT_EQ(u.edge_count(), 0U);
    EXPECT_TRUE(is_isomorphic(join(k1, k1), clique(2)));
    const auto k2 = clique(2);
    const auto lhs = complement(disjoint_union(k2, k2));
    const auto rhs = join(complement(k2), complement(k2));
    EXPECT_TRUE(is_isomorphic(lhs, rhs));
    EXPECT_TRUE(is_isomorphic(lhs, special_graph(SpecialKind::complete_multipartite, {2, 2})));
}

TEST(Graph, InducedSubgraph)
{
    const auto g = path3();
    EXPECT_EQ(induced_subgraph(g, g.all()), g);
    EXPECT_EQ(induced_subgraph(g, VertexSet{0}).vertex_count(), 0U);
    const auto ac = induced_subgraph(g, std::set<std::string>{"a", "c"});
    EXPECT_EQ(ac.vertex_count(), 2U);
    EXPECT_EQ(ac.edge_count(), 0U);
    EXPECT_THROW(induced_subgraph(g, std::set<std::string>{"q"}), InvalidInput);
}

TEST(Graph, Contraction)
{
    const auto k2 = contract_edge(clique(2), 0, 1);
    EXPECT_EQ(k2.vertex_count(), 1U);
    EXPECT_EQ(k2.weight(0), 2);

    const auto p = contract_edge(path3(), 1, 2);
    ASSERT_EQ(p.vertex_count(), 2U);
    EXPECT_EQ(p.edge_count(), 1U);
    std::multiset<int> w{p.weight(0), p.weight(1)};
    EXPECT_EQ(w, (std::multiset<int>{1, 2}));

    const auto t = contract_edge(clique(3), 0, 1);
    EXPECT_TRUE(is_isomorphic(t, special_graph(SpecialKind::clique, {2, 1})));
    EXPECT_THROW(contract_edge(path3(), 0, 2), InvalidInput);
    EXPECT_EQ(delete_edge(path3(), 0, 1).edge_count(), 1U);
    EXPECT_THROW(delete_edge(path3(), 0, 2), InvalidInput);
}

TEST(Graph, SpecialGraphs)
{
    const auto single = special_graph(SpecialKind::clique, {5});
    EXPECT_EQ(single.vertex_count(), 1U);
    EXPECT_EQ(single.weight(0), 5);
    EXPECT_TRUE(is_isomorphic(special_graph(SpecialKind::complete_multipartite, ones(4)), clique(4)));
    EXPECT_EQ(special_graph(SpecialKind::cycle, ones(4)).edge_count(), 4U);
    EXPECT_EQ(special_graph(SpecialKind::star, ones(4)).edge_count(), 3U);
    EXPECT_EQ(special_graph(SpecialKind::path, ones(4)).edge_count(), 3U);
    EXPECT_THROW(special_graph(SpecialKind::path, {2, 1}), InvalidInput);
}

TEST(Graph, StablePartitionCounts)
{
    EXPECT_EQ(stable_set_partition_count(path3(), {2, 1}), 1U);
    for (std::size_t n = 1; n <= 5; ++n) {
        EXPECT_EQ(stable_set_partition_count(clique(n), ones(static_cast<int>(n))), 1U);
        if (n >= 2) {
            EXPECT_EQ(stable_set_partition_count(clique(n), partition_union({2}, ones(static_cast<int>(n) - 2))), 0U);
        }
    }
    // against the set-partition oracle on every weighted class with <= 5 vertices
    for (const auto& g : graph_classes_up_to(5, 2)) {
        std::map<Partition, std::uint64_t> counts = stable_partition_counts(g);
        std::map<Partition, Rational> as_rational;
        for (const auto& [lambda, c] : counts) as_rational[lambda] = Rational(static_cast<std::int64_t>(c));
        EXPECT_EQ(as_rational, oracle::stable_partitions(g));
    }
}

TEST(Graph, StableSetCovers)
{
    EXPECT_EQ(stable_set_covers(clique(2)), (std::map<Partition, std::uint64_t>{{{1, 1}, 1}}));
    EXPECT_EQ(stable_set_covers(special_graph(SpecialKind::clique, {4})), (std::map<Partition, std::uint64_t>{{{4}, 1}}));
    const std::map<Partition, std::uint64_t> two{{{2}, 1}, {{1, 1}, 1}, {{2, 1}, 2}, {{2, 1, 1}, 1}};
    EXPECT_EQ(stable_set_covers(special_graph(SpecialKind::edgeless, {1, 1})), two);

    // subsets of the stable sets that cover V, by brute force
    for (const auto& g : graph_classes_up_to(4, 1)) {
        std::vector<VertexSet> stable;
        for (VertexSet s = 1; s <= g.all() && g.all() != 0; ++s) {
            if (g.is_stable(s)) stable.push_back(s);
        }
        std::map<Partition, std::uint64_t> expect;
        if (g.vertex_count() == 0) {
            expect[Partition()] = 1;
        } else {
            for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << stable.size()); ++pick) {
                VertexSet covered = 0;
                std::vector<int> parts;
                for (std::size_t k = 0; k < stable.size(); ++k) {
                    if (pick >> k & 1U) {
                        covered |= stable[k];
                        parts.push_back(g.weight_of(stable[k]));
                    }
                }
                if (covered == g.all()) ++expect[Partition(parts)];
            }
        }
        EXPECT_EQ(stable_set_covers(g), expect) << canonical_form(g);
    }
}

TEST(Graph, AcyclicOrientations)
{
    EXPECT_EQ(acyclic_orientation_count(clique(3)), 6U);
    EXPECT_EQ(acyclic_orientation_count(special_graph(SpecialKind::edgeless, {1, 1, 1})), 1U);
    EXPECT_EQ(acyclic_orientation_count(path3()), 4U);
    for (const auto& g : graph_classes_up_to(5, 1)) {
        EXPECT_EQ(acyclic_orientation_count(g), brute_acyclic_count(g));
        for (const auto& o : acyclic_orientations(g)) EXPECT_TRUE(is_acyclic(o));
    }
}

TEST(Graph, SourceComponents)
{
    const auto k3 = clique(3);
    Orientation o{{0b110, 0b100, 0}};
    const auto comps = source_components(k3, o);
    ASSERT_EQ(comps.size(), 1U);
    EXPECT_EQ(comps[0], k3.all());
    EXPECT_EQ(source_component_partition(k3, o), Partition({3}));

    const auto edgeless = special_graph(SpecialKind::edgeless, {3, 1, 2});
    const Orientation none{{0, 0, 0}};
    EXPECT_EQ(source_components(edgeless, none).size(), 3U);
    EXPECT_EQ(source_component_partition(edgeless, none), Partition({3, 2, 1}));

    int single = 0;
    for (const auto& orient : acyclic_orientations(k3)) single += source_component_partition(k3, orient) == Partition({3});
    EXPECT_EQ(single, 2);

    // components always partition V
    for (const auto& g : graph_classes(4, 2)) {
        for (const auto& orient : acyclic_orientations(g)) {
            VertexSet seen = 0;
            for (VertexSet c : source_components(g, orient)) {
                EXPECT_EQ(seen & c, 0U);
                seen |= c;
            }
            EXPECT_EQ(seen, g.all());
        }
    }
}

TEST(Graph, PathsAndTriangles)
{
    EXPECT_EQ(count_paths3_triangles(clique(3)), (PathTriangleCounts{3, 1}));
    EXPECT_EQ(count_paths3_triangles(path3()), (PathTriangleCounts{1, 0}));
    EXPECT_EQ(count_paths3_triangles(clique(4)), (PathTriangleCounts{12, 4}));
    for (const auto& g : graph_classes_up_to(6, 1)) {
        const auto [paths, triangles] = oracle::paths_and_triangles(g);
        const auto c = count_paths3_triangles(g);
        EXPECT_EQ(c.paths3, static_cast<std::uint64_t>(paths));
        EXPECT_EQ(c.triangles, static_cast<std::uint64_t>(triangles));
        EXPECT_EQ(is_triangle_free(g), triangles == 0);
    }
}

TEST(Graph, CanonicalForm)
{
    const auto k3 = clique(3);
    EXPECT_EQ(canonical_form(k3), canonical_form(permuted(k3, {2, 0, 1})));
    EXPECT_NE(canonical_form(k3), canonical_form(path3()));
    EXPECT_EQ(canonical_form(make_graph(2, {{0, 1}}, {1, 2})), canonical_form(make_graph(2, {{0, 1}}, {2, 1})));

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const auto g = random_graph(rng, n, 0.5, 2);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto h = permuted(g, perm);
        EXPECT_EQ(canonical_form(g), canonical_form(h));
        EXPECT_TRUE(is_isomorphic(canonical_graph(g), g));
        const auto other = random_graph(rng, n, 0.5, 2);
        EXPECT_EQ(canonical_form(g) == canonical_form(other), brute_canonical(g) == brute_canonical(other));
    }
}

TEST(Graph, ClassEnumeration)
{
    const std::vector<std::size_t> unweighted{1, 1, 2, 4, 11, 34};
    for (std::size_t n = 0; n < unweighted.size(); ++n) {
        std::set<std::vector<int>> codes;
        for (const auto& g : labeled_graphs(n)) codes.insert(brute_canonical(g));
        EXPECT_EQ(graph_classes(n).size(), codes.size());
        EXPECT_EQ(codes.size(), unweighted[n]);
    }
    EXPECT_EQ(graph_classes(6).size(), 156U);
    // weights in {1,2} on up to 4 vertices, against brute-force classes of labeled weightings
    for (std::size_t n = 1; n <= 4; ++n) {
        std::set<std::vector<int>> codes;
        for (const auto& g : labeled_graphs(n)) {
            for (unsigned wmask = 0; wmask < (1U << n); ++wmask) {
                std::vector<int> w(n);
                for (std::size_t i = 0; i < n; ++i) w[i] = 1 + static_cast<int>(wmask >> i & 1U);
                WeightedGraph h;
                for (std::size_t i = 0; i < n; ++i) h.add_vertex(default_vertex_id(i), w[i]);
                for (const auto& [a, b] : g.edges()) h.add_edge(a, b);
                codes.insert(brute_canonical(h));
            }
        }
        EXPECT_EQ(graph_classes(n, 2).size(), codes.size()) << n;
    }
}

TEST(Graph, BinaryCliqueGraphs)
{
    const std::vector<std::set<int>> b{{1, 2, 4}};
    EXPECT_TRUE(is_isomorphic(binary_clique_graph(7, b), special_graph(SpecialKind::clique, {4, 2, 1})));
    const auto g11 = binary_clique_graph(11, b);
    EXPECT_TRUE(is_isomorphic(g11, make_graph(3, {{0, 1}, {1, 2}}, {8, 2, 1})));
    EXPECT_TRUE(is_isomorphic(binary_clique_graph(6, b), make_graph(2, {{0, 1}}, {4, 2})));
    EXPECT_THROW(binary_clique_graph(7, {{1, 2}}), InvalidInput);
    EXPECT_THROW(binary_clique_graph(7, {{1, 2, 4}, {4, 8, 16}}), InvalidInput);
    EXPECT_NO_THROW(binary_clique_graph(7, {{1, 2, 4}, {4, 8, 16}}, true));
}
