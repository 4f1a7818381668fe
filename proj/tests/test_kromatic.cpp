#include <gtest/gtest.h>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "chromhopf/error.hpp"
#include "chromhopf/kromatic.hpp"
#include "support.hpp"

using namespace chromhopf;

namespace {

using Word = std::vector<std::size_t>;

WeightedGraph clique(int n) { return special_graph(SpecialKind::clique, ones(n)); }
WeightedGraph path(int n) { return special_graph(SpecialKind::path, ones(n)); }

KSeries ks(KBasis b, std::initializer_list<std::pair<Partition, int>> terms, std::optional<int> cap = std::nullopt)
{
    KSeries f(b, cap);
    for (const auto& [lambda, c] : terms) f.add(lambda, Rational(c));
    return f;
}

// Proper set colorings with D colors, one nonempty color set per vertex, read off as monomial
// coefficients through degree D.
KSeries brute_ksf(const WeightedGraph& g, int D)
{
    const std::size_t n = g.vertex_count();
    const unsigned subsets = 1U << D;
    std::map<Partition, std::int64_t> counts;
    std::vector<unsigned> pick(n, 1);
    std::function<void(std::size_t, int)> rec = [&](std::size_t v, int degree) {
        if (v == n) {
            std::vector<int> e(static_cast<std::size_t>(D), 0);
            for (std::size_t u = 0; u < n; ++u) {
                for (int c = 0; c < D; ++c) {
                    if (pick[u] >> c & 1U) e[static_cast<std::size_t>(c)] += g.weight(u);
                }
            }
            // count each monomial only in its weakly decreasing arrangement
            if (!std::is_sorted(e.rbegin(), e.rend())) return;
            std::vector<int> parts;
            for (int x : e) {
                if (x > 0) parts.push_back(x);
            }
            ++counts[Partition(parts)];
            return;
        }
        for (unsigned s = 1; s < subsets; ++s) {
            const int d = degree + g.weight(v) * std::popcount(s);
            if (d > D) continue;
            bool ok = true;
            for (std::size_t u = 0; u < v && ok; ++u) ok = !(g.adjacent(u, v) && (pick[u] & s));
            if (!ok) continue;
            pick[v] = s;
            rec(v + 1, d);
        }
    };
    rec(0, 0);
    KSeries out(KBasis::m_truncated, D);
    for (const auto& [lambda, c] : counts) out.add(lambda, Rational(c));
    return out;
}

// Lyndon heaps from words: a heap is the class of a word under swaps of adjacent distinct
// nonadjacent letters, represented by its lexicographically largest word.
struct WordClasses {
    std::map<Word, Word> rep;
    std::map<Word, std::vector<Word>> members;
};

bool commute(const WeightedGraph& g, std::size_t a, std::size_t b) { return a != b && !g.adjacent(a, b); }

WordClasses word_classes(const WeightedGraph& g, std::size_t s)
{
    WordClasses out;
    const std::size_t n = g.vertex_count();
    Word w(s, 0);
    while (true) {
        if (!out.rep.count(w)) {
            std::set<Word> seen{w};
            std::deque<Word> todo{w};
            while (!todo.empty()) {
                Word x = todo.front();
                todo.pop_front();
                for (std::size_t i = 0; i + 1 < s; ++i) {
                    if (!commute(g, x[i], x[i + 1])) continue;
                    std::swap(x[i], x[i + 1]);
                    if (seen.insert(x).second) todo.push_back(x);
                    std::swap(x[i], x[i + 1]);
                }
            }
            const Word top = *seen.rbegin();
            for (const auto& x : seen) out.rep[x] = top;
            out.members[top] = {seen.begin(), seen.end()};
        }
        std::size_t i = 0;
        while (i < s && w[i] == n - 1) w[i++] = 0;
        if (i == s) break;
        ++w[i];
    }
    return out;
}

std::vector<Word> brute_lyndon(const WeightedGraph& g, std::size_t s)
{
    const auto classes = word_classes(g, s);
    const auto pyramid = [&](const Word& top) {
        const auto& ws = classes.members.at(top);
        return std::all_of(ws.begin(), ws.end(), [&](const Word& x) { return x[0] == ws[0][0]; });
    };
    std::vector<Word> out;
    for (const auto& [top, ws] : classes.members) {
        if (!pyramid(top)) continue;
        bool periodic = false;
        for (const auto& x : ws) {
            for (std::size_t k = 1; k < s && !periodic; ++k) {
                if (s % k != 0) continue;
                bool power = true;
                for (std::size_t i = k; i < s && power; ++i) power = x[i] == x[i - k];
                periodic = power;
            }
        }
        if (periodic) continue;
        // conjugacy of traces is the transitive closure of cyclic shifts
        std::set<Word> conj{top};
        std::deque<Word> todo{top};
        while (!todo.empty()) {
            const Word cur = todo.front();
            todo.pop_front();
            for (const auto& x : classes.members.at(cur)) {
                for (std::size_t k = 1; k < s; ++k) {
                    Word y(x.begin() + static_cast<std::ptrdiff_t>(k), x.end());
                    y.insert(y.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k));
                    const Word& other = classes.rep.at(y);
                    if (conj.insert(other).second) todo.push_back(other);
                }
            }
        }
        bool least = true;
        for (const auto& other : conj) {
            if (pyramid(other) && other < top) least = false;
        }
        if (least) out.push_back(top);
    }
    return out;
}

} // namespace

TEST(Kromatic, SeriesBasics)
{
    EXPECT_EQ(parse_kbasis("mb"), KBasis::m_tilde_bar);
    EXPECT_EQ(parse_kbasis("wp"), KBasis::omega_p_bar_prime);
    EXPECT_EQ(parse_kbasis("m"), KBasis::m_truncated);
    EXPECT_THROW(parse_kbasis("nope"), InvalidInput);
    const auto f = ks(KBasis::m_tilde_bar, {{{1, 1}, 1}, {{2, 1}, 2}});
    EXPECT_EQ(f.to_string(), "mb[1,1] + 2*mb[2,1]");
    const auto g = ks(KBasis::m_truncated, {{{1}, 1}, {{4}, 1}}, 3);
    EXPECT_EQ(g.to_string(), "m[1] + O(deg 4)");
    EXPECT_EQ(g.min_degree(), 1);
    const auto cmp = compare(g, ks(KBasis::m_truncated, {{{1}, 1}, {{5}, 3}}));
    EXPECT_TRUE(cmp.equal);
    EXPECT_EQ(cmp.up_to_degree, 3);
    EXPECT_THROW(compare(f, g), InvalidInput);
}

TEST(Kromatic, StableSetCoverExpansion)
{
    for (int n = 1; n <= 4; ++n) {
        EXPECT_EQ(ksf_mbar(special_graph(SpecialKind::clique, {n})), ks(KBasis::m_tilde_bar, {{{n}, 1}}));
    }
    EXPECT_EQ(ksf_mbar(clique(2)), ks(KBasis::m_tilde_bar, {{{1, 1}, 1}}));
    EXPECT_EQ(ksf_mbar(special_graph(SpecialKind::edgeless, {1, 1})),
              ks(KBasis::m_tilde_bar, {{{1, 1}, 1}, {{2}, 1}, {{2, 1}, 2}, {{2, 1, 1}, 1}}));
}

TEST(Kromatic, ColoringOracleAgainstBruteForce)
{
    EXPECT_EQ(ksf_oracle(clique(1), 3), ks(KBasis::m_truncated, {{{1}, 1}, {{1, 1}, 1}, {{1, 1, 1}, 1}}, 3));
    for (const auto& g : graph_classes_up_to(3, 2)) {
        const int D = std::max(g.total_weight(), 4);
        EXPECT_EQ(ksf_oracle(g, D), brute_ksf(g, D)) << canonical_form(g);
    }
    for (const auto& g : graph_classes(4, 1)) EXPECT_EQ(ksf_oracle(g, 4), brute_ksf(g, 4)) << canonical_form(g);
    EXPECT_THROW(ksf_oracle(clique(3), 2), InvalidInput);
}

TEST(Kromatic, LowestDegreeIsTheCsf)
{
    for (const auto& g : graph_classes_up_to(4, 2)) {
        if (g.vertex_count() == 0) continue;
        const int w = g.total_weight();
        const KSeries k = ksf_oracle(g, w);
        EXPECT_EQ(k.min_degree(), w);
        EXPECT_EQ(k.homogeneous_component(w), KSeries::from_series(csf_oracle(g), w).homogeneous_component(w));
    }
}

TEST(Kromatic, MbarToMonomials)
{
    EXPECT_EQ(mbar_to_monomial(ks(KBasis::m_tilde_bar, {{{1}, 1}}), 3),
              ks(KBasis::m_truncated, {{{1}, 1}, {{1, 1}, 1}, {{1, 1, 1}, 1}}, 3));
    EXPECT_EQ(mbar_to_monomial(ks(KBasis::m_tilde_bar, {{Partition(), 1}}), 3), ks(KBasis::m_truncated, {{Partition(), 1}}, 3));
    EXPECT_EQ(mbar_to_monomial(ks(KBasis::m_tilde_bar, {{{1, 1}, 1}}), 3), ksf_oracle(clique(2), 3));
    EXPECT_EQ(mbar_to_monomial(ksf_mbar(clique(2)), 4), ksf_oracle(clique(2), 4));
    for (const auto& g : graph_classes_up_to(3, 2)) {
        const int D = std::max(g.total_weight(), 5);
        EXPECT_EQ(mbar_to_monomial(ksf_mbar(g), D), brute_ksf(g, D)) << canonical_form(g);
    }
    EXPECT_THROW(mbar_to_monomial(ks(KBasis::m_truncated, {}), 3), InvalidInput);
}

TEST(Kromatic, Products)
{
    EXPECT_EQ(mbar_odot(ks(KBasis::m_tilde_bar, {{{2}, 1}}), ks(KBasis::m_tilde_bar, {{{1, 1}, 3}})),
              ks(KBasis::m_tilde_bar, {{{2, 1, 1}, 3}}));
    const auto m1 = ks(KBasis::m_truncated, {{{1}, 1}}, 3);
    EXPECT_EQ(monomial_product(m1, m1), ks(KBasis::m_truncated, {{{2}, 1}, {{1, 1}, 2}}, 3));
    // the KSF is multiplicative over disjoint unions
    const auto a = clique(2);
    const auto b = special_graph(SpecialKind::clique, {1});
    EXPECT_EQ(monomial_product(ksf_oracle(a, 5), ksf_oracle(b, 5)), ksf_oracle(disjoint_union(a, b), 5));
    // and mb multiplies over joins
    EXPECT_EQ(mbar_odot(ksf_mbar(path(3)), ksf_mbar(clique(2))), ksf_mbar(join(path(3), clique(2))));
}

TEST(Kromatic, HeapPrimitives)
{
    const auto p3 = path(3);
    const std::vector<std::size_t> ranks{0, 1, 2};
    // a and c commute
    EXPECT_EQ(standard_word(p3, ranks, Word{0, 2}), (Word{2, 0}));
    EXPECT_EQ(standard_word(p3, ranks, Word{0, 1}), (Word{0, 1}));
    EXPECT_TRUE(is_pyramid(p3, Word{0, 1}));
    EXPECT_FALSE(is_pyramid(p3, Word{0, 2}));
    EXPECT_FALSE(is_aperiodic(p3, ranks, Word{0, 1, 0, 1}));
    EXPECT_TRUE(is_aperiodic(p3, ranks, Word{0, 1, 1}));
    EXPECT_EQ(rotate_to_base(p3, ranks, Word{0, 1}, 1), (Word{1, 0}));
    EXPECT_THROW(rotate_to_base(p3, ranks, Word{0, 1}, 2), InvalidInput);
    EXPECT_THROW(order_ranks(p3, std::vector<std::size_t>{0, 0, 1}), InvalidInput);
}

TEST(Kromatic, LyndonHeapExamples)
{
    for (const auto& g : graph_classes(4, 1)) EXPECT_EQ(lyndon_heaps(g, {}, 1).size(), 4U);
    const auto k2 = lyndon_heaps(clique(2), {}, 2);
    ASSERT_EQ(k2.size(), 1U);
    EXPECT_EQ(k2[0].word, (Word{0, 1}));
    EXPECT_TRUE(lyndon_heaps(clique(1), {}, 2).empty());
    EXPECT_THROW(lyndon_heaps(clique(1), {}, 9), BoundExceeded);
    // triangle-free: size-2 Lyndon heaps are the edges
    for (const auto& g : graph_classes_up_to(4, 1)) {
        if (!is_triangle_free(g)) continue;
        EXPECT_EQ(lyndon_heaps(g, {}, 2).size(), g.edge_count()) << canonical_form(g);
    }
}

TEST(Kromatic, LyndonHeapsAgainstWordOracle)
{
    for (const auto& g : graph_classes_up_to(3, 1)) {
        if (g.vertex_count() == 0) continue;
        for (std::size_t s = 1; s <= 6; ++s) {
            std::vector<Word> got;
            for (const auto& h : lyndon_heaps(g, {}, s)) got.push_back(h.word);
            EXPECT_EQ(got, brute_lyndon(g, s)) << canonical_form(g) << " s=" << s;
        }
    }
    for (const auto& g : graph_classes(4, 1)) {
        for (std::size_t s = 1; s <= 5; ++s) {
            std::vector<Word> got;
            for (const auto& h : lyndon_heaps(g, {}, s)) got.push_back(h.word);
            EXPECT_EQ(got, brute_lyndon(g, s)) << canonical_form(g) << " s=" << s;
        }
    }
}

TEST(Kromatic, OmegaExpansion)
{
    const auto k2 = ksf_omega_p(clique(2), {}, 4);
    EXPECT_EQ(k2.coefficient({1, 1}), Rational(1));
    EXPECT_EQ(k2.coefficient({2}), Rational(1));
    const auto k1 = ksf_omega_p(clique(1), {}, 5);
    EXPECT_EQ(k1, ks(KBasis::omega_p_bar_prime, {{{1}, 1}}, 5));

    EXPECT_EQ(omega_p_bar_prime_monomial(1, 3), ks(KBasis::m_truncated, {{{1}, 1}, {{1, 1}, 1}, {{1, 1, 1}, 1}}, 3));
    EXPECT_EQ(omega_p_bar_prime_monomial(2, 5), ks(KBasis::m_truncated, {{{2}, -1}, {{2, 2}, 1}}, 5));
    EXPECT_FALSE(omega_closed_form_self_test().has_value());

    for (const auto& g : graph_classes_up_to(4, 1)) {
        if (g.vertex_count() == 0) continue;
        EXPECT_EQ(omega_p_to_monomial(ksf_omega_p(g, {}, 6), 6), ksf_oracle(g, 6)) << canonical_form(g);
    }
    EXPECT_THROW(ksf_omega_p(special_graph(SpecialKind::clique, {2}), {}, 4), InvalidInput);
}

TEST(Kromatic, OmegaExpansionIsOrderFree)
{
    const auto p4 = path(4);
    const std::vector<std::size_t> order{2, 0, 3, 1};
    EXPECT_EQ(ksf_omega_p(p4, order, 6), ksf_omega_p(p4, {}, 6));
}

TEST(Kromatic, TriangleFreeMap)
{
    for (int D = 1; D <= 6; ++D) EXPECT_TRUE(verify_k_triangle_free(clique(1), D).equal) << D;
    EXPECT_TRUE(verify_k_triangle_free(clique(2), 6).equal);
    EXPECT_TRUE(verify_k_triangle_free(path(3), 6).equal);
    EXPECT_THROW(verify_k_triangle_free(clique(3), 6), InvalidInput);
    EXPECT_THROW(verify_k_triangle_free(special_graph(SpecialKind::clique, {2}), 6), InvalidInput);
}

TEST(Kromatic, CokromaticTriangularity)
{
    std::vector<WeightedGraph> family;
    for (int n = 1; n <= 4; ++n) family.push_back(clique(n));
    const auto r = cokromatic_check(family, 4);
    EXPECT_TRUE(r.unitriangular) << r.detail;
    EXPECT_TRUE(r.invertible) << r.detail;
}
