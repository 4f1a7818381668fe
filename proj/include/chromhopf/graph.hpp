#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chromhopf/partition.hpp"

namespace chromhopf {

/// Bitmask over vertex indices of a WeightedGraph.
using VertexSet = std::uint32_t;

struct Vertex {
    std::string id;
    int weight = 1;
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Simple undirected graph with positive integer vertex weights.
///
/// The insertion order of vertices is the fixed vertex order used by orientation-based
/// algorithms (source components, heaps). Vertex sets are bitmasks over that order.
class WeightedGraph {
public:
    static constexpr std::size_t max_vertices = 31;

    WeightedGraph() = default;

    /// Appends a vertex; throws InvalidInput on empty/duplicate id or weight < 1.
    std::size_t add_vertex(std::string id, int weight = 1);
    /// Throws InvalidInput on self-loops, duplicate edges and unknown ids.
    void add_edge(std::string_view a, std::string_view b);
    void add_edge(std::size_t i, std::size_t j);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const;
    std::span<const Vertex> vertices() const { return vertices_; }
    const Vertex& vertex(std::size_t i) const { return vertices_[i]; }
    int weight(std::size_t i) const { return vertices_[i].weight; }
    std::optional<std::size_t> index_of(std::string_view id) const;

    bool adjacent(std::size_t i, std::size_t j) const { return (adjacency_[i] >> j) & 1U; }
    VertexSet neighbors(std::size_t i) const { return adjacency_[i]; }
    /// Edges as index pairs (i < j), sorted.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    VertexSet all() const { return vertices_.empty() ? 0 : (VertexSet{1} << vertices_.size()) - 1; }
    int total_weight() const;
    int weight_of(VertexSet set) const;
    bool is_unweighted() const;

    bool is_stable(VertexSet set) const;
    bool is_clique(VertexSet set) const;
    bool is_connected(VertexSet set) const;
    bool is_connected() const { return is_connected(all()); }

    /// Same vertex list (ids, weights, order) and same edges.
    friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

private:
    std::vector<Vertex> vertices_;
    std::vector<VertexSet> adjacency_;
};

/// Direction assignment for every edge of a host graph, stored as successor masks.
struct Orientation {
    std::vector<VertexSet> successors;
    friend bool operator==(const Orientation&, const Orientation&) = default;
};

/// a, b, ..., z, then v26, v27, ...
std::string default_vertex_id(std::size_t index);

/// Unweighted graph on n vertices with default ids and the given index-pair edges.
WeightedGraph make_graph(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> edges,
                         std::vector<int> weights = {});

WeightedGraph complement(const WeightedGraph& g);

/// Vertices of h whose ids collide with g's get "'" appended until unique.
WeightedGraph disjoint_union(const WeightedGraph& g, const WeightedGraph& h);
/// Disjoint union plus every edge between the two vertex sets.
WeightedGraph join(const WeightedGraph& g, const WeightedGraph& h);

WeightedGraph induced_subgraph(const WeightedGraph& g, VertexSet set);
WeightedGraph induced_subgraph(const WeightedGraph& g, const std::set<std::string>& ids);

WeightedGraph delete_edge(const WeightedGraph& g, std::size_t i, std::size_t j);
/// Merges j into i's position with weight w(i)+w(j) and id id(i)+id(j) (made unique with "'").
WeightedGraph contract_edge(const WeightedGraph& g, std::size_t i, std::size_t j);
/// As contract_edge, but the merged vertex keeps only the common neighbors of i and j.
WeightedGraph contract_edge_common(const WeightedGraph& g, std::size_t i, std::size_t j);

enum class SpecialKind { clique, edgeless, complete_multipartite, path, star, cycle };
std::optional<SpecialKind> parse_special_kind(std::string_view name);

/// clique/edgeless: one vertex per part with that weight. complete_multipartite: unweighted,
/// one block per part. path/star/cycle: unweighted on |lambda| vertices, lambda must be all ones.
WeightedGraph special_graph(SpecialKind kind, const Partition& lambda);

/// Every set partition of {0..n-1}, generated from restricted-growth strings.
void for_each_set_partition(std::size_t n, const std::function<void(std::span<const VertexSet>)>& visit);

/// |St_lambda(G)|: set partitions of V(G) into stable sets whose weights are the parts of lambda.
std::uint64_t stable_set_partition_count(const WeightedGraph& g, const Partition& lambda);
/// |St_lambda(G)| for every lambda at once.
std::map<Partition, std::uint64_t> stable_partition_counts(const WeightedGraph& g);

/// Multiset {lambda(C) : C a cover of V(G) by distinct nonempty stable sets}, as counts.
std::map<Partition, std::uint64_t> stable_set_covers(const WeightedGraph& g);
/// Streams each cover as its list of stable sets. Brute force; needs at most 24 stable sets.
void for_each_stable_set_cover(const WeightedGraph& g, const std::function<void(std::span<const VertexSet>)>& visit);

/// Counts sets of distinct items whose masks jointly cover `universe`, graded by the multiset of
/// item sizes. Items are (mask, size). Inclusion-exclusion over subsets of the universe.
/// With max_total, only covers whose sizes sum to at most max_total are counted.
std::map<Partition, std::uint64_t> count_distinct_covers(std::span<const std::pair<VertexSet, int>> items,
                                                         VertexSet universe,
                                                         std::optional<int> max_total = std::nullopt);

void for_each_acyclic_orientation(const WeightedGraph& g, const std::function<void(const Orientation&)>& visit);
std::vector<Orientation> acyclic_orientations(const WeightedGraph& g);
std::uint64_t acyclic_orientation_count(const WeightedGraph& g);

/// Vertices reachable from v by directed paths (v included).
VertexSet reachable_from(const Orientation& orientation, std::size_t v);
bool is_acyclic(const Orientation& orientation);

/// Source components in creation order. `order` is a permutation of vertex indices; empty means
/// the graph's own vertex order. Throws InvalidInput for cyclic orientations.
std::vector<VertexSet> source_components(const WeightedGraph& g, const Orientation& orientation,
                                         std::span<const std::size_t> order = {});
/// lambda(gamma): sorted weights of the source components.
Partition source_component_partition(const WeightedGraph& g, const Orientation& orientation,
                                     std::span<const std::size_t> order = {});

struct PathTriangleCounts {
    std::uint64_t paths3 = 0;
    std::uint64_t triangles = 0;
    friend bool operator==(const PathTriangleCounts&, const PathTriangleCounts&) = default;
};
/// Not necessarily induced 3-vertex paths and triangles.
PathTriangleCounts count_paths3_triangles(const WeightedGraph& g);
bool is_triangle_free(const WeightedGraph& g);

/// Opaque key, equal exactly for isomorphic weighted graphs.
using CanonicalKey = std::string;
CanonicalKey canonical_form(const WeightedGraph& g, std::size_t bound = 10);
/// Representative with vertices relabeled into canonical position order.
WeightedGraph canonical_graph(const WeightedGraph& g, std::size_t bound = 10);
bool is_isomorphic(const WeightedGraph& g, const WeightedGraph& h);

/// Binary-expansion graph of n: one vertex per power of two in n (descending), path edges between
/// consecutive terms, and clique edges between terms lying in a common block of `blocks`.
/// Blocks must hold >= 3 consecutive powers of two and be pairwise disjoint unless allow_overlap.
WeightedGraph binary_clique_graph(int n, const std::vector<std::set<int>>& blocks, bool allow_overlap = false);
void validate_binary_blocks(const std::vector<std::set<int>>& blocks, bool allow_overlap);

/// Every labeled unweighted graph on n vertices (2^(n choose 2) of them).
std::vector<WeightedGraph> labeled_graphs(std::size_t n);
/// One representative per isomorphism class of graphs on n vertices with weights in 1..max_weight.
std::vector<WeightedGraph> graph_classes(std::size_t n, int max_weight = 1);
/// Isomorph-reduced union of graph_classes(k, max_weight) for k = 0..n.
std::vector<WeightedGraph> graph_classes_up_to(std::size_t n, int max_weight = 1);
WeightedGraph random_graph(std::mt19937_64& rng, std::size_t n, double edge_probability, int max_weight = 1);

} // namespace chromhopf
