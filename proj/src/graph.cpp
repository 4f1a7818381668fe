#include "chromhopf/graph.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

#include "chromhopf/error.hpp"

namespace chromhopf {

namespace {

constexpr VertexSet bit(std::size_t i) { return VertexSet{1} << i; }

std::size_t popcount(VertexSet s) { return static_cast<std::size_t>(std::popcount(s)); }

std::size_t lowest(VertexSet s) { return static_cast<std::size_t>(std::countr_zero(s)); }

std::string unique_id(std::string id, const std::set<std::string>& taken)
{
    while (taken.count(id)) {
        id += '\'';
    }
    return id;
}

std::set<std::string> ids_of(const WeightedGraph& g)
{
    std::set<std::string> ids;
    for (const auto& v : g.vertices()) {
        ids.insert(v.id);
    }
    return ids;
}

/// stable[S] for every subset S of V(G).
std::vector<bool> stable_table(const WeightedGraph& g)
{
    const std::size_t n = g.vertex_count();
    if (n > 20) {
        throw BoundExceeded("stable-set tables support at most 20 vertices");
    }
    std::vector<bool> stable(std::size_t{1} << n, false);
    stable[0] = true;
    for (VertexSet s = 1; s < (VertexSet{1} << n); ++s) {
        const std::size_t v = lowest(s);
        const VertexSet rest = s & (s - 1);
        stable[s] = stable[rest] && (g.neighbors(v) & rest) == 0;
    }
    return stable;
}

} // namespace

// ---------------------------------------------------------------------------------------------
// WeightedGraph

std::size_t WeightedGraph::add_vertex(std::string id, int weight)
{
    if (id.empty()) {
        throw InvalidInput("vertex ids must be nonempty");
    }
    if (weight < 1) {
        throw InvalidInput("vertex '" + id + "' has weight " + std::to_string(weight) + "; weights must be >= 1");
    }
    if (index_of(id)) {
        throw InvalidInput("duplicate vertex id '" + id + "'");
    }
    if (vertices_.size() >= max_vertices) {
        throw BoundExceeded("graphs hold at most " + std::to_string(max_vertices) + " vertices");
    }
    vertices_.push_back({std::move(id), weight});
    adjacency_.push_back(0);
    return vertices_.size() - 1;
}

void WeightedGraph::add_edge(std::string_view a, std::string_view b)
{
    const auto i = index_of(a);
    const auto j = index_of(b);
    if (!i || !j) {
        throw InvalidInput("edge endpoint '" + std::string(!i ? a : b) + "' is not a vertex");
    }
    add_edge(*i, *j);
}

void WeightedGraph::add_edge(std::size_t i, std::size_t j)
{
    if (i >= vertices_.size() || j >= vertices_.size()) {
        throw InvalidInput("edge endpoint index out of range");
    }
    if (i == j) {
        throw InvalidInput("self-loop at '" + vertices_[i].id + "'");
    }
    if (adjacent(i, j)) {
        throw InvalidInput("duplicate edge {" + vertices_[i].id + "," + vertices_[j].id + "}");
    }
    adjacency_[i] |= bit(j);
    adjacency_[j] |= bit(i);
}

std::size_t WeightedGraph::edge_count() const
{
    std::size_t twice = 0;
    for (VertexSet a : adjacency_) {
        twice += popcount(a);
    }
    return twice / 2;
}

std::optional<std::size_t> WeightedGraph::index_of(std::string_view id) const
{
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i].id == id) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> WeightedGraph::edges() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
            if (adjacent(i, j)) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

int WeightedGraph::total_weight() const { return weight_of(all()); }

int WeightedGraph::weight_of(VertexSet set) const
{
    int total = 0;
    for (; set; set &= set - 1) {
        total += vertices_[lowest(set)].weight;
    }
    return total;
}

bool WeightedGraph::is_unweighted() const
{
    return std::all_of(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.weight == 1; });
}

bool WeightedGraph::is_stable(VertexSet set) const
{
    for (VertexSet s = set; s; s &= s - 1) {
        if (adjacency_[lowest(s)] & set) {
            return false;
        }
    }
    return true;
}

bool WeightedGraph::is_clique(VertexSet set) const
{
    for (VertexSet s = set; s; s &= s - 1) {
        const std::size_t v = lowest(s);
        if (((adjacency_[v] | bit(v)) & set) != set) {
            return false;
        }
    }
    return true;
}

bool WeightedGraph::is_connected(VertexSet set) const
{
    if (set == 0) {
        return true;
    }
    VertexSet seen = bit(lowest(set));
    VertexSet frontier = seen;
    while (frontier) {
        VertexSet next = 0;
        for (VertexSet f = frontier; f; f &= f - 1) {
            next |= adjacency_[lowest(f)];
        }
        next &= set & ~seen;
        seen |= next;
        frontier = next;
    }
    return seen == set;
}

// ---------------------------------------------------------------------------------------------
// Constructions

std::string default_vertex_id(std::size_t index)
{
    if (index < 26) {
        return std::string(1, static_cast<char>('a' + index));
    }
    return "v" + std::to_string(index);
}

WeightedGraph make_graph(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> edges,
                         std::vector<int> weights)
{
    WeightedGraph g;
    for (std::size_t i = 0; i < n; ++i) {
        g.add_vertex(default_vertex_id(i), weights.empty() ? 1 : weights.at(i));
    }
    for (const auto& [i, j] : edges) {
        g.add_edge(i, j);
    }
    return g;
}

WeightedGraph complement(const WeightedGraph& g)
{
    WeightedGraph out;
    for (const auto& v : g.vertices()) {
        out.add_vertex(v.id, v.weight);
    }
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        for (std::size_t j = i + 1; j < g.vertex_count(); ++j) {
            if (!g.adjacent(i, j)) {
                out.add_edge(i, j);
            }
        }
    }
    return out;
}

namespace {

WeightedGraph union_impl(const WeightedGraph& g, const WeightedGraph& h, bool connect)
{
    WeightedGraph out = g;
    auto taken = ids_of(g);
    for (const auto& v : h.vertices()) {
        std::string id = unique_id(v.id, taken);
        taken.insert(id);
        out.add_vertex(std::move(id), v.weight);
    }
    const std::size_t offset = g.vertex_count();
    for (const auto& [i, j] : h.edges()) {
        out.add_edge(offset + i, offset + j);
    }
    if (connect) {
        for (std::size_t i = 0; i < g.vertex_count(); ++i) {
            for (std::size_t j = 0; j < h.vertex_count(); ++j) {
                out.add_edge(i, offset + j);
            }
        }
    }
    return out;
}

} // namespace

WeightedGraph disjoint_union(const WeightedGraph& g, const WeightedGraph& h) { return union_impl(g, h, false); }

WeightedGraph join(const WeightedGraph& g, const WeightedGraph& h) { return union_impl(g, h, true); }

WeightedGraph induced_subgraph(const WeightedGraph& g, VertexSet set)
{
    if (set & ~g.all()) {
        throw InvalidInput("vertex set is not a subset of V(G)");
    }
    WeightedGraph out;
    std::vector<std::size_t> index(g.vertex_count(), 0);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        if (set & bit(i)) {
            index[i] = out.add_vertex(g.vertex(i).id, g.weight(i));
        }
    }
    for (const auto& [i, j] : g.edges()) {
        if ((set & bit(i)) && (set & bit(j))) {
            out.add_edge(index[i], index[j]);
        }
    }
    return out;
}

WeightedGraph induced_subgraph(const WeightedGraph& g, const std::set<std::string>& ids)
{
    VertexSet set = 0;
    for (const auto& id : ids) {
        const auto i = g.index_of(id);
        if (!i) {
            throw InvalidInput("unknown vertex id '" + id + "'");
        }
        set |= bit(*i);
    }
    return induced_subgraph(g, set);
}

WeightedGraph delete_edge(const WeightedGraph& g, std::size_t i, std::size_t j)
{
    if (i >= g.vertex_count() || j >= g.vertex_count() || !g.adjacent(i, j)) {
        throw InvalidInput("delete_edge: not an edge");
    }
    WeightedGraph out;
    for (const auto& v : g.vertices()) {
        out.add_vertex(v.id, v.weight);
    }
    for (const auto& [a, b] : g.edges()) {
        if (!((a == i && b == j) || (a == j && b == i))) {
            out.add_edge(a, b);
        }
    }
    return out;
}

WeightedGraph contract_edge(const WeightedGraph& g, std::size_t i, std::size_t j)
{
    if (i >= g.vertex_count() || j >= g.vertex_count() || !g.adjacent(i, j)) {
        throw InvalidInput("contract_edge: not an edge");
    }
    if (i > j) {
        std::swap(i, j);
    }
    std::set<std::string> taken;
    for (std::size_t k = 0; k < g.vertex_count(); ++k) {
        if (k != i && k != j) {
            taken.insert(g.vertex(k).id);
        }
    }
    WeightedGraph out;
    std::vector<std::size_t> index(g.vertex_count(), 0);
    for (std::size_t k = 0; k < g.vertex_count(); ++k) {
        if (k == j) {
            continue;
        }
        if (k == i) {
            index[k] = out.add_vertex(unique_id(g.vertex(i).id + g.vertex(j).id, taken), g.weight(i) + g.weight(j));
        } else {
            index[k] = out.add_vertex(g.vertex(k).id, g.weight(k));
        }
    }
    index[j] = index[i];
    for (const auto& [a, b] : g.edges()) {
        const std::size_t x = index[a];
        const std::size_t y = index[b];
        if (x != y && !out.adjacent(x, y)) {
            out.add_edge(x, y);
        }
    }
    return out;
}

WeightedGraph contract_edge_common(const WeightedGraph& g, std::size_t i, std::size_t j)
{
    WeightedGraph out = contract_edge(g, i, j);
    const std::size_t lo = std::min(i, j);
    const std::size_t hi = std::max(i, j);
    for (std::size_t k = 0; k < g.vertex_count(); ++k) {
        if (k == i || k == j) {
            continue;
        }
        const std::size_t w = k < hi ? k : k - 1;
        if (out.adjacent(lo, w) && !(g.adjacent(i, k) && g.adjacent(j, k))) {
            out = delete_edge(out, lo, w);
        }
    }
    return out;
}

std::optional<SpecialKind> parse_special_kind(std::string_view name)
{
    if (name == "clique") return SpecialKind::clique;
    if (name == "edgeless") return SpecialKind::edgeless;
    if (name == "complete_multipartite") return SpecialKind::complete_multipartite;
    if (name == "path") return SpecialKind::path;
    if (name == "star") return SpecialKind::star;
    if (name == "cycle") return SpecialKind::cycle;
    return std::nullopt;
}

WeightedGraph special_graph(SpecialKind kind, const Partition& lambda)
{
    WeightedGraph g;
    switch (kind) {
    case SpecialKind::clique:
    case SpecialKind::edgeless:
        for (std::size_t i = 0; i < lambda.length(); ++i) {
            g.add_vertex(default_vertex_id(i), lambda[i]);
        }
        if (kind == SpecialKind::clique) {
            for (std::size_t i = 0; i < lambda.length(); ++i) {
                for (std::size_t j = i + 1; j < lambda.length(); ++j) {
                    g.add_edge(i, j);
                }
            }
        }
        return g;
    case SpecialKind::complete_multipartite: {
        std::vector<std::size_t> block;
        for (std::size_t b = 0; b < lambda.length(); ++b) {
            for (int k = 0; k < lambda[b]; ++k) {
                g.add_vertex(default_vertex_id(block.size()));
                block.push_back(b);
            }
        }
        for (std::size_t i = 0; i < block.size(); ++i) {
            for (std::size_t j = i + 1; j < block.size(); ++j) {
                if (block[i] != block[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        return g;
    }
    case SpecialKind::path:
    case SpecialKind::star:
    case SpecialKind::cycle: {
        if (lambda.largest() > 1) {
            throw InvalidInput("path/star/cycle graphs are unweighted; lambda must be all ones");
        }
        const std::size_t n = lambda.length();
        if (kind == SpecialKind::cycle && n < 3) {
            throw InvalidInput("a cycle needs at least 3 vertices");
        }
        for (std::size_t i = 0; i < n; ++i) {
            g.add_vertex(default_vertex_id(i));
        }
        for (std::size_t i = 1; i < n; ++i) {
            g.add_edge(kind == SpecialKind::star ? 0 : i - 1, i);
        }
        if (kind == SpecialKind::cycle) {
            g.add_edge(n - 1, 0);
        }
        return g;
    }
    }
    throw InvalidInput("unknown special graph kind");
}

// ---------------------------------------------------------------------------------------------
// Set partitions, stable partitions and covers

void for_each_set_partition(std::size_t n, const std::function<void(std::span<const VertexSet>)>& visit)
{
    if (n > WeightedGraph::max_vertices) {
        throw BoundExceeded("set partitions of more than 31 elements");
    }
    std::vector<std::size_t> rgs(n, 0);
    std::vector<VertexSet> blocks;
    // rgs[i] <= 1 + max(rgs[0..i-1]); blocks rebuilt from the string on each visit
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t max_label) {
        if (i == n) {
            blocks.assign(n == 0 ? 0 : max_label + 1, 0);
            for (std::size_t k = 0; k < n; ++k) {
                blocks[rgs[k]] |= bit(k);
            }
            visit(blocks);
            return;
        }
        const std::size_t limit = i == 0 ? 0 : max_label + 1;
        for (std::size_t label = 0; label <= limit; ++label) {
            rgs[i] = label;
            rec(i + 1, std::max(max_label, label));
        }
    };
    rec(0, 0);
}

std::map<Partition, std::uint64_t> stable_partition_counts(const WeightedGraph& g)
{
    const auto stable = stable_table(g);
    std::map<Partition, std::uint64_t> counts;
    std::vector<int> weights;
    std::function<void(VertexSet)> rec = [&](VertexSet remaining) {
        if (remaining == 0) {
            ++counts[Partition(weights)];
            return;
        }
        const std::size_t v = lowest(remaining);
        const VertexSet candidates = remaining & ~bit(v) & ~g.neighbors(v);
        // every stable block containing v, drawn from the remaining vertices
        for (VertexSet sub = candidates;; sub = (sub - 1) & candidates) {
            const VertexSet block = sub | bit(v);
            if (stable[block]) {
                weights.push_back(g.weight_of(block));
                rec(remaining & ~block);
                weights.pop_back();
            }
            if (sub == 0) {
                break;
            }
        }
    };
    rec(g.all());
    return counts;
}

std::uint64_t stable_set_partition_count(const WeightedGraph& g, const Partition& lambda)
{
    if (lambda.size() != g.total_weight()) {
        return 0;
    }
    const auto counts = stable_partition_counts(g);
    const auto it = counts.find(lambda);
    return it == counts.end() ? 0 : it->second;
}

std::map<Partition, std::uint64_t> count_distinct_covers(std::span<const std::pair<VertexSet, int>> items,
                                                         VertexSet universe, std::optional<int> max_total)
{
    std::map<Partition, std::uint64_t> result;
    int max_size = 0;
    for (const auto& [mask, size] : items) {
        if (size < 1) {
            throw InvalidInput("cover items need positive sizes");
        }
        max_size = std::max(max_size, size);
    }
    if (universe == 0) {
        result[Partition()] = 1;
        return result;
    }

    // c(W)[k] = number of items of size k inside W, grouped by vector with the
    // inclusion-exclusion sign (-1)^{|universe \ W|} summed per group.
    std::map<std::vector<std::uint32_t>, std::int64_t> groups;
    const std::size_t universe_size = popcount(universe);
    for (VertexSet w = universe;; w = (w - 1) & universe) {
        std::vector<std::uint32_t> c(static_cast<std::size_t>(max_size) + 1, 0);
        for (const auto& [mask, size] : items) {
            if ((mask & ~w) == 0) {
                ++c[static_cast<std::size_t>(size)];
            }
        }
        const bool negative = (universe_size - popcount(w)) % 2 == 1;
        groups[c] += negative ? -1 : 1;
        if (w == 0) {
            break;
        }
    }
    std::vector<std::pair<std::vector<std::uint32_t>, std::int64_t>> group_list;
    for (auto& [c, sign] : groups) {
        if (sign != 0) {
            group_list.emplace_back(c, sign);
        }
    }

    std::vector<std::uint32_t> upper(static_cast<std::size_t>(max_size) + 1, 0);
    for (const auto& [mask, size] : items) {
        if ((mask & ~universe) == 0) {
            ++upper[static_cast<std::size_t>(size)];
        }
    }
    // C(a, b) with small b, exactly; 0 signals overflow to the caller
    auto choose = [](std::uint32_t a, std::uint32_t b) -> unsigned __int128 {
        if (b > a) {
            return 0;
        }
        unsigned __int128 r = 1;
        for (std::uint32_t i = 0; i < b; ++i) {
            if (r > static_cast<unsigned __int128>(-1) / (a - i)) {
                throw BoundExceeded("cover count overflow");
            }
            r = r * (a - i) / (i + 1);
        }
        return r;
    };

    std::vector<std::uint32_t> chosen(static_cast<std::size_t>(max_size) + 1, 0);
    std::function<void(int, int)> rec = [&](int k, int budget) {
        if (k == 0) {
            __int128 total = 0;
            for (const auto& [c, sign] : group_list) {
                unsigned __int128 product = 1;
                for (int s = 1; s <= max_size && product; ++s) {
                    const unsigned __int128 f = choose(c[s], chosen[s]);
                    if (f != 0 && product > static_cast<unsigned __int128>(-1) / f) {
                        throw BoundExceeded("cover count overflow");
                    }
                    product *= f;
                }
                total += static_cast<__int128>(product) * sign;
            }
            if (total < 0 || total > static_cast<__int128>(UINT64_MAX)) {
                throw BoundExceeded("cover count out of range");
            }
            if (total != 0) {
                std::vector<int> parts;
                for (int s = max_size; s >= 1; --s) {
                    parts.insert(parts.end(), chosen[s], s);
                }
                result[Partition(std::move(parts))] = static_cast<std::uint64_t>(total);
            }
            return;
        }
        for (std::uint32_t a = 0; a <= upper[k] && static_cast<std::int64_t>(a) * k <= budget; ++a) {
            chosen[k] = a;
            rec(k - 1, budget - static_cast<int>(a) * k);
        }
        chosen[k] = 0;
    };
    rec(max_size, max_total.value_or(std::numeric_limits<int>::max()));
    return result;
}

std::map<Partition, std::uint64_t> stable_set_covers(const WeightedGraph& g)
{
    const auto stable = stable_table(g);
    std::vector<std::pair<VertexSet, int>> items;
    for (VertexSet s = 1; s <= g.all() && g.all() != 0; ++s) {
        if (stable[s]) {
            items.emplace_back(s, g.weight_of(s));
        }
    }
    return count_distinct_covers(items, g.all());
}

void for_each_stable_set_cover(const WeightedGraph& g, const std::function<void(std::span<const VertexSet>)>& visit)
{
    const auto stable = stable_table(g);
    std::vector<VertexSet> sets;
    for (VertexSet s = 1; s <= g.all() && g.all() != 0; ++s) {
        if (stable[s]) {
            sets.push_back(s);
        }
    }
    if (sets.size() > 24) {
        throw BoundExceeded("cover streaming supports at most 24 stable sets");
    }
    std::vector<VertexSet> chosen;
    for (std::uint32_t pick = 0; pick < (std::uint32_t{1} << sets.size()); ++pick) {
        VertexSet covered = 0;
        chosen.clear();
        for (std::size_t k = 0; k < sets.size(); ++k) {
            if (pick & (std::uint32_t{1} << k)) {
                covered |= sets[k];
                chosen.push_back(sets[k]);
            }
        }
        if (covered == g.all()) {
            visit(chosen);
        }
    }
}

// ---------------------------------------------------------------------------------------------
// Orientations

VertexSet reachable_from(const Orientation& orientation, std::size_t v)
{
    VertexSet seen = bit(v);
    VertexSet frontier = seen;
    while (frontier) {
        VertexSet next = 0;
        for (VertexSet f = frontier; f; f &= f - 1) {
            next |= orientation.successors[lowest(f)];
        }
        next &= ~seen;
        seen |= next;
        frontier = next;
    }
    return seen;
}

bool is_acyclic(const Orientation& orientation)
{
    for (std::size_t v = 0; v < orientation.successors.size(); ++v) {
        VertexSet from_successors = 0;
        for (VertexSet s = orientation.successors[v]; s; s &= s - 1) {
            from_successors |= reachable_from(orientation, lowest(s));
        }
        if (from_successors & bit(v)) {
            return false;
        }
    }
    return true;
}

void for_each_acyclic_orientation(const WeightedGraph& g, const std::function<void(const Orientation&)>& visit)
{
    const auto edges = g.edges();
    Orientation current{std::vector<VertexSet>(g.vertex_count(), 0)};
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == edges.size()) {
            visit(current);
            return;
        }
        const auto [i, j] = edges[k];
        // i -> j closes a cycle iff j already reaches i
        if (!(reachable_from(current, j) & bit(i))) {
            current.successors[i] |= bit(j);
            rec(k + 1);
            current.successors[i] &= ~bit(j);
        }
        if (!(reachable_from(current, i) & bit(j))) {
            current.successors[j] |= bit(i);
            rec(k + 1);
            current.successors[j] &= ~bit(i);
        }
    };
    rec(0);
}

std::vector<Orientation> acyclic_orientations(const WeightedGraph& g)
{
    std::vector<Orientation> out;
    for_each_acyclic_orientation(g, [&](const Orientation& o) { out.push_back(o); });
    return out;
}

std::uint64_t acyclic_orientation_count(const WeightedGraph& g)
{
    std::uint64_t count = 0;
    for_each_acyclic_orientation(g, [&](const Orientation&) { ++count; });
    return count;
}

std::vector<VertexSet> source_components(const WeightedGraph& g, const Orientation& orientation,
                                         std::span<const std::size_t> order)
{
    if (orientation.successors.size() != g.vertex_count()) {
        throw InvalidInput("orientation does not match the graph");
    }
    if (!is_acyclic(orientation)) {
        throw InvalidInput("source components need an acyclic orientation");
    }
    std::vector<std::size_t> identity;
    if (order.empty()) {
        identity.resize(g.vertex_count());
        std::iota(identity.begin(), identity.end(), std::size_t{0});
        order = identity;
    }
    if (order.size() != g.vertex_count()) {
        throw InvalidInput("vertex order must list every vertex once");
    }
    std::vector<VertexSet> blocks;
    VertexSet unused = g.all();
    for (std::size_t v : order) {
        if (!(unused & bit(v))) {
            continue;
        }
        const VertexSet block = reachable_from(orientation, v) & unused;
        blocks.push_back(block);
        unused &= ~block;
    }
    if (unused != 0) {
        throw InvalidInput("vertex order must list every vertex once");
    }
    return blocks;
}

Partition source_component_partition(const WeightedGraph& g, const Orientation& orientation,
                                     std::span<const std::size_t> order)
{
    std::vector<int> weights;
    for (VertexSet block : source_components(g, orientation, order)) {
        weights.push_back(g.weight_of(block));
    }
    return Partition(std::move(weights));
}

PathTriangleCounts count_paths3_triangles(const WeightedGraph& g)
{
    PathTriangleCounts counts;
    const std::size_t n = g.vertex_count();
    for (std::size_t v = 0; v < n; ++v) {
        const std::uint64_t d = popcount(g.neighbors(v));
        counts.paths3 += d * (d - (d > 0 ? 1 : 0)) / 2;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (g.adjacent(i, j)) {
                counts.triangles += popcount(g.neighbors(i) & g.neighbors(j) & ~((bit(j + 1)) - 1));
            }
        }
    }
    return counts;
}

bool is_triangle_free(const WeightedGraph& g) { return count_paths3_triangles(g).triangles == 0; }

// ---------------------------------------------------------------------------------------------
// Canonical form

namespace {

std::vector<int> refine_colors(const WeightedGraph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<int> color(n);
    {
        std::vector<int> weights;
        for (const auto& v : g.vertices()) {
            weights.push_back(v.weight);
        }
        std::vector<int> distinct = weights;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (std::size_t i = 0; i < n; ++i) {
            color[i] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), weights[i]) - distinct.begin());
        }
    }
    std::size_t classes = 0;
    while (true) {
        std::vector<std::vector<int>> signature(n);
        for (std::size_t i = 0; i < n; ++i) {
            signature[i].push_back(color[i]);
            std::vector<int> around;
            for (VertexSet s = g.neighbors(i); s; s &= s - 1) {
                around.push_back(color[lowest(s)]);
            }
            std::sort(around.begin(), around.end());
            signature[i].insert(signature[i].end(), around.begin(), around.end());
        }
        auto distinct = signature;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (std::size_t i = 0; i < n; ++i) {
            color[i] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), signature[i]) - distinct.begin());
        }
        if (distinct.size() == classes) {
            break;
        }
        classes = distinct.size();
    }
    return color;
}

/// Minimal position order of the vertices, over all orders compatible with the refined coloring.
std::vector<std::size_t> canonical_order(const WeightedGraph& g)
{
    const std::size_t n = g.vertex_count();
    const auto color = refine_colors(g);
    const int num_colors = n == 0 ? 0 : *std::max_element(color.begin(), color.end()) + 1;

    // twin classes inside each color cell: swapping twins is an automorphism
    std::vector<int> twin(n, -1);
    int num_twins = 0;
    for (std::size_t u = 0; u < n; ++u) {
        if (twin[u] >= 0) {
            continue;
        }
        twin[u] = num_twins;
        for (std::size_t v = u + 1; v < n; ++v) {
            if (twin[v] < 0 && color[v] == color[u] &&
                (g.neighbors(u) & ~bit(v)) == (g.neighbors(v) & ~bit(u))) {
                twin[v] = num_twins;
            }
        }
        ++num_twins;
    }
    std::vector<std::vector<int>> cell_labels(static_cast<std::size_t>(num_colors));
    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(num_twins));
    for (std::size_t v = 0; v < n; ++v) {
        cell_labels[color[v]].push_back(twin[v]);
        members[twin[v]].push_back(v);
    }
    for (auto& labels : cell_labels) {
        std::sort(labels.begin(), labels.end());
    }

    std::vector<std::size_t> best;
    std::string best_code;
    std::vector<std::size_t> order(n);
    std::string code;
    std::function<void(std::size_t)> rec = [&](std::size_t cell) {
        if (cell == cell_labels.size()) {
            std::vector<std::size_t> next(static_cast<std::size_t>(num_twins), 0);
            std::size_t pos = 0;
            for (const auto& labels : cell_labels) {
                for (int label : labels) {
                    order[pos++] = members[label][next[label]++];
                }
            }
            code.clear();
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    code.push_back(g.adjacent(order[i], order[j]) ? '1' : '0');
                }
            }
            if (best.empty() || code < best_code) {
                best = order;
                best_code = code;
            }
            return;
        }
        auto& labels = cell_labels[cell];
        std::sort(labels.begin(), labels.end());
        do {
            rec(cell + 1);
        } while (std::next_permutation(labels.begin(), labels.end()));
    };
    rec(0);
    return best;
}

} // namespace

CanonicalKey canonical_form(const WeightedGraph& g, std::size_t bound)
{
    if (g.vertex_count() > bound) {
        throw BoundExceeded("canonical_form bound is " + std::to_string(bound) + " vertices");
    }
    const auto order = canonical_order(g);
    const std::size_t n = g.vertex_count();
    std::string key = std::to_string(n) + ":";
    for (std::size_t i = 0; i < n; ++i) {
        key += std::to_string(g.weight(order[i])) + ",";
    }
    key += "|";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            key.push_back(g.adjacent(order[i], order[j]) ? '1' : '0');
        }
    }
    return key;
}

WeightedGraph canonical_graph(const WeightedGraph& g, std::size_t bound)
{
    if (g.vertex_count() > bound) {
        throw BoundExceeded("canonical_graph bound is " + std::to_string(bound) + " vertices");
    }
    const auto order = canonical_order(g);
    WeightedGraph out;
    for (std::size_t v : order) {
        out.add_vertex(g.vertex(v).id, g.weight(v));
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            if (g.adjacent(order[i], order[j])) {
                out.add_edge(i, j);
            }
        }
    }
    return out;
}

bool is_isomorphic(const WeightedGraph& g, const WeightedGraph& h)
{
    const std::size_t bound = std::max<std::size_t>({g.vertex_count(), h.vertex_count(), 10});
    return canonical_form(g, bound) == canonical_form(h, bound);
}

// ---------------------------------------------------------------------------------------------
// Binary-clique family

void validate_binary_blocks(const std::vector<std::set<int>>& blocks, bool allow_overlap)
{
    if (blocks.empty()) {
        throw InvalidInput("binary-clique blocks: need at least one block");
    }
    std::set<int> seen;
    for (const auto& block : blocks) {
        if (block.size() < 3) {
            throw InvalidInput("binary-clique blocks need at least 3 elements");
        }
        int prev = 0;
        for (int x : block) {
            if (x < 1 || (x & (x - 1)) != 0) {
                throw InvalidInput("binary-clique block element " + std::to_string(x) + " is not a power of 2");
            }
            if (prev != 0 && x != 2 * prev) {
                throw InvalidInput("binary-clique blocks must be consecutive powers of 2");
            }
            prev = x;
            if (!allow_overlap && !seen.insert(x).second) {
                throw InvalidInput("binary-clique blocks must be pairwise disjoint");
            }
        }
    }
}

WeightedGraph binary_clique_graph(int n, const std::vector<std::set<int>>& blocks, bool allow_overlap)
{
    validate_binary_blocks(blocks, allow_overlap);
    const Partition terms = binary_partition(n);
    WeightedGraph g;
    for (int t : terms.parts()) {
        g.add_vertex(std::to_string(t), t);
    }
    for (std::size_t i = 0; i < terms.length(); ++i) {
        for (std::size_t j = i + 1; j < terms.length(); ++j) {
            bool edge = j == i + 1;
            for (const auto& block : blocks) {
                edge = edge || (block.count(terms[i]) && block.count(terms[j]));
            }
            if (edge) {
                g.add_edge(i, j);
            }
        }
    }
    return g;
}

// ---------------------------------------------------------------------------------------------
// Generators

std::vector<WeightedGraph> labeled_graphs(std::size_t n)
{
    if (n > 7) {
        throw BoundExceeded("labeled_graphs supports at most 7 vertices");
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    std::vector<WeightedGraph> out;
    out.reserve(std::size_t{1} << pairs.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        WeightedGraph g;
        for (std::size_t i = 0; i < n; ++i) {
            g.add_vertex(default_vertex_id(i));
        }
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            if (mask & (std::uint64_t{1} << k)) {
                g.add_edge(pairs[k].first, pairs[k].second);
            }
        }
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<WeightedGraph> graph_classes(std::size_t n, int max_weight)
{
    if (max_weight < 1) {
        throw InvalidInput("max_weight must be >= 1");
    }
    std::set<CanonicalKey> seen;
    std::vector<WeightedGraph> out;
    std::vector<int> weights(n, 1);
    for (const auto& base : labeled_graphs(n)) {
        std::fill(weights.begin(), weights.end(), 1);
        while (true) {
            WeightedGraph g;
            for (std::size_t i = 0; i < n; ++i) {
                g.add_vertex(default_vertex_id(i), weights[i]);
            }
            for (const auto& [i, j] : base.edges()) {
                g.add_edge(i, j);
            }
            if (seen.insert(canonical_form(g)).second) {
                out.push_back(std::move(g));
            }
            std::size_t k = 0;
            while (k < n && weights[k] == max_weight) {
                weights[k++] = 1;
            }
            if (k == n) {
                break;
            }
            ++weights[k];
        }
    }
    return out;
}

std::vector<WeightedGraph> graph_classes_up_to(std::size_t n, int max_weight)
{
    std::vector<WeightedGraph> out;
    for (std::size_t k = 0; k <= n; ++k) {
        auto level = graph_classes(k, max_weight);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

WeightedGraph random_graph(std::mt19937_64& rng, std::size_t n, double edge_probability, int max_weight)
{
    std::uniform_int_distribution<int> weight_dist(1, max_weight);
    std::bernoulli_distribution edge_dist(edge_probability);
    WeightedGraph g;
    for (std::size_t i = 0; i < n; ++i) {
        g.add_vertex(default_vertex_id(i), weight_dist(rng));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (edge_dist(rng)) {
                g.add_edge(i, j);
            }
        }
    }
    return g;
}

} // namespace chromhopf
