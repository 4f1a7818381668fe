#include "chromhopf/kromatic.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "chromhopf/csf.hpp"
#include "chromhopf/error.hpp"

namespace chromhopf {

namespace {

std::string prefix(KBasis basis)
{
    switch (basis) {
    case KBasis::m_tilde_bar: return "mb";
    case KBasis::omega_p_bar_prime: return "wp";
    case KBasis::m_truncated: return "m";
    }
    return "?";
}

Rational from_u128(unsigned __int128 v)
{
    // to decimal, since gmp has no 128-bit constructor
    if (v == 0) {
        return Rational(0);
    }
    std::string digits;
    while (v) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(digits.begin(), digits.end());
    return Rational(mpz_class(digits));
}

bool dependent(const WeightedGraph& g, std::size_t a, std::size_t b)
{
    return a == b || g.adjacent(a, b);
}

bool rank_less(std::span<const std::size_t> ranks, std::span<const std::size_t> a, std::span<const std::size_t> b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [&](std::size_t x, std::size_t y) { return ranks[x] < ranks[y]; });
}

} // namespace

std::string_view to_string(KBasis basis)
{
    switch (basis) {
    case KBasis::m_tilde_bar: return "m_tilde_bar";
    case KBasis::omega_p_bar_prime: return "omega_p_bar_prime";
    case KBasis::m_truncated: return "m_truncated";
    }
    return "?";
}

KBasis parse_kbasis(std::string_view name)
{
    if (name == "m_tilde_bar" || name == "mb") return KBasis::m_tilde_bar;
    if (name == "omega_p_bar_prime" || name == "wp") return KBasis::omega_p_bar_prime;
    if (name == "m_truncated" || name == "m") return KBasis::m_truncated;
    throw InvalidInput("unknown K basis '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------------------------
// KSeries

KSeries::KSeries(KBasis basis, std::optional<int> cap) : basis_(basis), cap_(cap)
{
    if (cap && *cap < 0) {
        throw InvalidInput("negative degree cap");
    }
}

Rational KSeries::coefficient(const Partition& lambda) const
{
    const auto it = terms_.find(lambda);
    return it == terms_.end() ? Rational(0) : it->second;
}

void KSeries::add(const Partition& lambda, const Rational& c)
{
    if (c.is_zero() || (cap_ && lambda.size() > *cap_)) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(lambda, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

int KSeries::min_degree() const
{
    return terms_.empty() ? -1 : terms_.begin()->first.size();
}

KSeries KSeries::homogeneous_component(int degree) const
{
    KSeries out(basis_);
    for (const auto& [lambda, c] : terms_) {
        if (lambda.size() == degree) {
            out.add(lambda, c);
        }
    }
    return out;
}

KSeries KSeries::truncated(int degree) const
{
    KSeries out(basis_, cap_ ? std::min(*cap_, degree) : degree);
    for (const auto& [lambda, c] : terms_) {
        out.add(lambda, c);
    }
    return out;
}

KSeries& KSeries::operator+=(const KSeries& rhs)
{
    if (basis_ != rhs.basis_) {
        throw InvalidInput("KSeries sum with mixed bases");
    }
    if (rhs.cap_ && (!cap_ || *rhs.cap_ < *cap_)) {
        *this = truncated(*rhs.cap_);
    }
    for (const auto& [lambda, c] : rhs.terms_) {
        add(lambda, c);
    }
    return *this;
}

Series KSeries::to_series() const
{
    if (basis_ != KBasis::m_truncated) {
        throw InvalidInput("only m_truncated KSeries convert to Series");
    }
    Series out(Basis::m, Algebra::Lambda, cap_);
    for (const auto& [lambda, c] : terms_) {
        out.add(lambda, c);
    }
    return out;
}

KSeries KSeries::from_series(const Series& f, int cap)
{
    const Series m = convert(f, Basis::m);
    KSeries out(KBasis::m_truncated, f.cap() ? std::min(*f.cap(), cap) : cap);
    for (const auto& [lambda, c] : m.terms()) {
        out.add(lambda, c);
    }
    return out;
}

std::string KSeries::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [lambda, c] : terms_) {
        const std::string body = lambda.empty() ? "1" : prefix(basis_) + lambda.to_string();
        const bool negative = c.sign() < 0;
        os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
        if (c.abs() != Rational(1)) {
            os << c.abs() << (lambda.empty() ? "" : "*");
            if (!lambda.empty()) os << body;
        } else {
            os << body;
        }
        first = false;
    }
    if (first) {
        os << "0";
    }
    if (cap_) {
        os << " + O(deg " << *cap_ + 1 << ")";
    }
    return os.str();
}

std::string KComparison::describe() const
{
    std::string s = equal ? "equal"
                          : "differ at " + first_difference->to_string() + ": " + left.to_string() + " vs " +
                                right.to_string();
    if (up_to_degree) {
        s += " (up to degree " + std::to_string(*up_to_degree) + ")";
    }
    return s;
}

KComparison compare(const KSeries& f, const KSeries& g)
{
    if (f.basis() != g.basis()) {
        throw InvalidInput("compare: KSeries in different bases");
    }
    KComparison out;
    if (f.cap() || g.cap()) {
        out.up_to_degree = std::min(f.cap().value_or(*g.cap()), g.cap().value_or(*f.cap()));
    }
    std::set<Partition> keys;
    for (const auto* s : {&f, &g}) {
        for (const auto& [lambda, c] : s->terms()) {
            if (!out.up_to_degree || lambda.size() <= *out.up_to_degree) {
                keys.insert(lambda);
            }
        }
    }
    for (const auto& lambda : keys) {
        if (f.coefficient(lambda) != g.coefficient(lambda)) {
            out.first_difference = lambda;
            out.left = f.coefficient(lambda);
            out.right = g.coefficient(lambda);
            return out;
        }
    }
    out.equal = true;
    return out;
}

// ---------------------------------------------------------------------------------------------
// Stable set covers and set colorings

KSeries ksf_mbar(const WeightedGraph& g)
{
    if (g.vertex_count() > 6) {
        throw BoundExceeded("ksf_mbar supports at most 6 vertices");
    }
    KSeries out(KBasis::m_tilde_bar);
    for (const auto& [lambda, count] : stable_set_covers(g)) {
        out.add(lambda, Rational(mpz_class(std::to_string(count))));
    }
    return out;
}

namespace {

// Coefficient of x_1^{mu_1} ... x_l^{mu_l}: color i goes to a nonempty stable set of weight mu_i,
// and the sets must cover V(G).
KSeries coloring_counts(const WeightedGraph& g, int D)
{
    const std::size_t n = g.vertex_count();
    if (n > 16) {
        throw BoundExceeded("set-coloring counts support at most 16 vertices");
    }
    const VertexSet all = g.all();
    std::vector<std::vector<VertexSet>> by_weight(static_cast<std::size_t>(D) + 1);
    for (std::uint64_t s = 1; s <= all; ++s) {
        const auto mask = static_cast<VertexSet>(s);
        const int w = g.weight_of(mask);
        if (w <= D && g.is_stable(mask)) {
            by_weight[static_cast<std::size_t>(w)].push_back(mask);
        }
    }
    KSeries out(KBasis::m_truncated, D);
    if (n == 0) {
        out.add(Partition(), Rational(1));
        return out;
    }
    std::vector<unsigned __int128> dp(std::size_t{1} << n);
    std::vector<unsigned __int128> next(dp.size());
    for (const auto& mu : partitions_up_to(D)) {
        if (mu.empty()) {
            continue;
        }
        std::fill(dp.begin(), dp.end(), 0);
        dp[0] = 1;
        for (int part : mu.parts()) {
            std::fill(next.begin(), next.end(), 0);
            for (std::size_t m = 0; m < dp.size(); ++m) {
                if (dp[m] == 0) {
                    continue;
                }
                for (VertexSet s : by_weight[static_cast<std::size_t>(part)]) {
                    next[m | s] += dp[m];
                }
            }
            dp.swap(next);
        }
        out.add(mu, from_u128(dp[all]));
    }
    return out;
}

} // namespace

KSeries ksf_oracle(const WeightedGraph& g, int D)
{
    if (g.vertex_count() > 5) {
        throw BoundExceeded("ksf_oracle supports at most 5 vertices");
    }
    if (D < g.total_weight()) {
        throw InvalidInput("ksf_oracle needs D >= weight(G)");
    }
    return coloring_counts(g, D);
}

KSeries mbar_to_monomial(const KSeries& f, int D)
{
    if (f.basis() != KBasis::m_tilde_bar) {
        throw InvalidInput("mbar_to_monomial needs an m_tilde_bar series");
    }
    static std::mutex mutex;
    static std::map<std::pair<Partition, int>, KSeries> cache;
    const int cap = f.cap() ? std::min(*f.cap(), D) : D;
    KSeries out(KBasis::m_truncated, cap);
    for (const auto& [lambda, c] : f.terms()) {
        if (lambda.size() > cap) {
            // the KSF of K^lambda starts in degree |lambda|
            continue;
        }
        KSeries image(KBasis::m_truncated);
        {
            std::lock_guard lock(mutex);
            auto it = cache.find({lambda, D});
            if (it == cache.end()) {
                it = cache.emplace(std::pair{lambda, D}, coloring_counts(special_graph(SpecialKind::clique, lambda), D))
                         .first;
            }
            image = it->second;
        }
        for (const auto& [mu, x] : image.terms()) {
            out.add(mu, c * x);
        }
    }
    return out;
}

KSeries mbar_odot(const KSeries& f, const KSeries& g)
{
    if (f.basis() != KBasis::m_tilde_bar || g.basis() != KBasis::m_tilde_bar) {
        throw InvalidInput("mbar_odot needs m_tilde_bar series");
    }
    std::optional<int> cap = f.cap();
    if (g.cap() && (!cap || *g.cap() < *cap)) {
        cap = g.cap();
    }
    KSeries out(KBasis::m_tilde_bar, cap);
    for (const auto& [a, x] : f.terms()) {
        for (const auto& [b, y] : g.terms()) {
            out.add(partition_union(a, b), x * y);
        }
    }
    return out;
}

KSeries monomial_product(const KSeries& f, const KSeries& g)
{
    if (f.basis() != KBasis::m_truncated || g.basis() != KBasis::m_truncated) {
        throw InvalidInput("monomial_product needs m_truncated series");
    }
    const Series h = multiply(f.to_series(), g.to_series());
    return KSeries::from_series(h, h.cap().value_or(std::max(h.max_degree(), 0)));
}

// ---------------------------------------------------------------------------------------------
// Heaps

std::string HeapWord::to_string(const WeightedGraph& g) const
{
    std::string s;
    for (std::size_t v : word) {
        s += (s.empty() ? "" : " ") + g.vertex(v).id;
    }
    return s;
}

std::vector<std::size_t> order_ranks(const WeightedGraph& g, std::span<const std::size_t> order)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> ranks(n);
    if (order.empty()) {
        std::iota(ranks.begin(), ranks.end(), std::size_t{0});
        return ranks;
    }
    if (order.size() != n) {
        throw InvalidInput("vertex order must list every vertex once");
    }
    std::vector<bool> seen(n, false);
    for (std::size_t r = 0; r < n; ++r) {
        if (order[r] >= n || seen[order[r]]) {
            throw InvalidInput("vertex order must list every vertex once");
        }
        seen[order[r]] = true;
        ranks[order[r]] = r;
    }
    return ranks;
}

std::vector<std::size_t> standard_word(const WeightedGraph& g, std::span<const std::size_t> ranks,
                                       std::span<const std::size_t> word)
{
    const std::size_t s = word.size();
    std::vector<bool> placed(s, false);
    std::vector<std::size_t> out;
    out.reserve(s);
    for (std::size_t step = 0; step < s; ++step) {
        std::size_t best = s;
        for (std::size_t i = 0; i < s; ++i) {
            if (placed[i]) {
                continue;
            }
            bool available = true;
            for (std::size_t j = 0; j < i && available; ++j) {
                available = placed[j] || !dependent(g, word[j], word[i]);
            }
            if (available && (best == s || ranks[word[i]] > ranks[word[best]])) {
                best = i;
            }
        }
        placed[best] = true;
        out.push_back(word[best]);
    }
    return out;
}

bool is_pyramid(const WeightedGraph& g, std::span<const std::size_t> word)
{
    std::size_t minimal = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        bool is_min = true;
        for (std::size_t j = 0; j < i && is_min; ++j) {
            is_min = !dependent(g, word[j], word[i]);
        }
        minimal += is_min ? 1 : 0;
    }
    return minimal == 1;
}

bool is_aperiodic(const WeightedGraph& g, std::span<const std::size_t> ranks, std::span<const std::size_t> word)
{
    const std::size_t s = word.size();
    const auto target = standard_word(g, ranks, word);
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t v : word) {
        ++counts[v];
    }
    for (std::size_t k = 2; k <= s; ++k) {
        if (s % k != 0) {
            continue;
        }
        bool divisible = true;
        std::vector<std::size_t> root;
        for (const auto& [v, c] : counts) {
            divisible = divisible && c % k == 0;
            root.insert(root.end(), c / k, v);
        }
        if (!divisible) {
            continue;
        }
        // every word with the root's letter counts, sorted so next_permutation visits each once
        std::sort(root.begin(), root.end());
        do {
            std::vector<std::size_t> power;
            for (std::size_t r = 0; r < k; ++r) {
                power.insert(power.end(), root.begin(), root.end());
            }
            if (standard_word(g, ranks, power) == target) {
                return false;
            }
        } while (std::next_permutation(root.begin(), root.end()));
    }
    return true;
}

std::vector<std::size_t> rotate_to_base(const WeightedGraph& g, std::span<const std::size_t> ranks,
                                        std::span<const std::size_t> word, std::size_t position,
                                        std::size_t step_budget)
{
    if (position >= word.size()) {
        throw InvalidInput("rotation position out of range");
    }
    std::vector<std::size_t> cur(word.begin(), word.end());
    std::size_t p = position;
    for (std::size_t step = 0; step < step_budget; ++step) {
        std::vector<bool> reach(cur.size(), false);
        reach[p] = true;
        for (std::size_t j = p + 1; j < cur.size(); ++j) {
            for (std::size_t i = p; i < j && !reach[j]; ++i) {
                reach[j] = reach[i] && dependent(g, cur[i], cur[j]);
            }
        }
        if (std::all_of(reach.begin(), reach.end(), [](bool b) { return b; })) {
            return standard_word(g, ranks, cur);
        }
        std::vector<std::size_t> next;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (reach[i]) next.push_back(cur[i]);
        }
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (!reach[i]) next.push_back(cur[i]);
        }
        cur = std::move(next);
        p = 0;
    }
    throw BoundExceeded("rotation did not reach a pyramid within " + std::to_string(step_budget) + " steps");
}

std::vector<HeapWord> lyndon_heaps(const WeightedGraph& g, std::span<const std::size_t> order, std::size_t s)
{
    if (s == 0 || s > 8) {
        throw BoundExceeded("lyndon_heaps supports sizes 1..8");
    }
    const auto ranks = order_ranks(g, order);
    const std::size_t n = g.vertex_count();
    std::vector<HeapWord> out;
    std::vector<std::size_t> word;
    // standard words and pyramids are both closed under prefixes
    std::function<void()> rec = [&]() {
        if (word.size() == s) {
            if (!is_aperiodic(g, ranks, word)) {
                return;
            }
            for (std::size_t p = 1; p < s; ++p) {
                const auto rotated = rotate_to_base(g, ranks, word, p);
                if (rank_less(ranks, rotated, word)) {
                    return;
                }
            }
            HeapWord h;
            h.word = word;
            for (std::size_t v : word) {
                h.support |= VertexSet{1} << v;
            }
            out.push_back(std::move(h));
            return;
        }
        for (std::size_t v = 0; v < n; ++v) {
            word.push_back(v);
            if (is_pyramid(g, word) && standard_word(g, ranks, word) == word) {
                rec();
            }
            word.pop_back();
        }
    };
    rec();
    std::sort(out.begin(), out.end(), [&](const HeapWord& a, const HeapWord& b) { return rank_less(ranks, a.word, b.word); });
    return out;
}

KSeries ksf_omega_p(const WeightedGraph& g, std::span<const std::size_t> order, int D)
{
    if (!g.is_unweighted()) {
        throw InvalidInput("ksf_omega_p handles unweighted graphs only");
    }
    if (g.vertex_count() > 4 || D > 8) {
        throw BoundExceeded("ksf_omega_p supports |V| <= 4 and D <= 8");
    }
    if (D < 0) {
        throw InvalidInput("negative degree cap");
    }
    std::vector<std::pair<VertexSet, int>> items;
    for (int s = 1; s <= D && g.vertex_count() > 0; ++s) {
        for (const auto& h : lyndon_heaps(g, order, static_cast<std::size_t>(s))) {
            items.emplace_back(h.support, s);
        }
    }
    KSeries out(KBasis::omega_p_bar_prime, D);
    if (g.vertex_count() == 0) {
        out.add(Partition(), Rational(1));
        return out;
    }
    for (const auto& [lambda, count] : count_distinct_covers(items, g.all(), D)) {
        out.add(lambda, Rational(mpz_class(std::to_string(count))));
    }
    return out;
}

KSeries omega_p_bar_prime_monomial(int n, int D)
{
    if (n < 1) {
        throw InvalidInput("omega_p_bar_prime_monomial needs n >= 1");
    }
    KSeries out(KBasis::m_truncated, D);
    for (int k = 1; k * n <= D; ++k) {
        const bool negative = (k * (n + 1)) % 2 == 1;
        out.add(Partition(std::vector<int>(static_cast<std::size_t>(k), n)), Rational(negative ? -1 : 1));
    }
    return out;
}

KSeries omega_p_to_monomial(const KSeries& f, int D)
{
    if (f.basis() != KBasis::omega_p_bar_prime) {
        throw InvalidInput("omega_p_to_monomial needs an omega_p_bar_prime series");
    }
    const int cap = f.cap() ? std::min(*f.cap(), D) : D;
    KSeries out(KBasis::m_truncated, cap);
    for (const auto& [lambda, c] : f.terms()) {
        if (lambda.size() > cap) {
            continue;
        }
        KSeries term(KBasis::m_truncated, cap);
        term.add(Partition(), Rational(1));
        for (int part : lambda.parts()) {
            term = monomial_product(term, omega_p_bar_prime_monomial(part, cap));
        }
        for (const auto& [mu, x] : term.terms()) {
            out.add(mu, c * x);
        }
    }
    return out;
}

std::optional<std::string> omega_closed_form_self_test(int max_n, int vars, int D)
{
    for (int n = 1; n <= max_n; ++n) {
        // prod_i (1 + (-1)^{n+1} x_i^n) - 1, as exponent vector -> coefficient
        std::map<std::vector<int>, Rational> poly;
        poly[std::vector<int>(static_cast<std::size_t>(vars), 0)] = Rational(1);
        const Rational sign = n % 2 == 1 ? Rational(1) : Rational(-1);
        for (int i = 0; i < vars; ++i) {
            std::map<std::vector<int>, Rational> next = poly;
            for (const auto& [alpha, c] : poly) {
                auto beta = alpha;
                beta[static_cast<std::size_t>(i)] += n;
                next[beta] += c * sign;
            }
            poly = std::move(next);
        }
        poly[std::vector<int>(static_cast<std::size_t>(vars), 0)] -= Rational(1);

        const KSeries expansion = omega_p_bar_prime_monomial(n, D);
        for (const auto& [alpha, c] : poly) {
            std::vector<int> parts;
            for (int a : alpha) {
                if (a > 0) parts.push_back(a);
            }
            const Partition mu(parts);
            if (mu.size() <= D && expansion.coefficient(mu) != c) {
                return "n=" + std::to_string(n) + ": monomial of type " + mu.to_string() + " has coefficient " +
                       c.to_string() + " in the product but " + expansion.coefficient(mu).to_string() +
                       " in the expansion";
            }
        }
        for (const auto& [mu, c] : expansion.terms()) {
            if (mu.length() > static_cast<std::size_t>(vars)) {
                continue;
            }
            std::vector<int> alpha(mu.parts().begin(), mu.parts().end());
            alpha.resize(static_cast<std::size_t>(vars), 0);
            const auto it = poly.find(alpha);
            const Rational p = it == poly.end() ? Rational(0) : it->second;
            if (p != c) {
                return "n=" + std::to_string(n) + ": m" + mu.to_string() + " has coefficient " + c.to_string() +
                       " but the product gives " + p.to_string();
            }
        }
    }
    return std::nullopt;
}

KMapReport verify_k_triangle_free(const WeightedGraph& g, int D)
{
    if (!g.is_unweighted()) {
        throw InvalidInput("verify_k_triangle_free needs an unweighted graph");
    }
    if (!is_triangle_free(g)) {
        throw InvalidInput("verify_k_triangle_free needs a triangle-free graph");
    }
    if (D < g.total_weight()) {
        throw InvalidInput("verify_k_triangle_free needs D >= |V(G)|");
    }
    const KSeries wp = ksf_omega_p(g, {}, D);
    KSeries image(KBasis::m_tilde_bar, D);
    for (const auto& [lambda, c] : wp.terms()) {
        if (lambda.largest() <= 2) {
            image.add(lambda, c);
        }
    }
    const KSeries lhs = mbar_to_monomial(image, D);
    const KSeries rhs = ksf_oracle(complement(g), D);
    const auto cmp = compare(lhs, rhs);
    KMapReport report;
    report.equal = cmp.equal;
    report.up_to_degree = D;
    report.detail = "phi(KSF(G)) = " + image.to_string() + "; monomials " + cmp.describe();
    return report;
}

TriangularityReport cokromatic_check(const std::vector<WeightedGraph>& family, int max_degree)
{
    std::vector<Partition> index;
    for (const auto& lambda : partitions_up_to(max_degree)) {
        if (!lambda.empty()) {
            index.push_back(lambda);
        }
    }
    std::vector<std::vector<Rational>> rows;
    for (const auto& lambda : index) {
        WeightedGraph g;
        for (int part : lambda.parts()) {
            if (part > static_cast<int>(family.size()) ||
                family[static_cast<std::size_t>(part - 1)].total_weight() != part) {
                throw InvalidInput("family needs a member of weight " + std::to_string(part));
            }
            g = disjoint_union(g, family[static_cast<std::size_t>(part - 1)]);
        }
        const KSeries x = ksf_mbar(complement(g));
        std::vector<Rational> row;
        for (const auto& mu : index) {
            row.push_back(x.coefficient(mu));
        }
        rows.push_back(std::move(row));
    }
    TriangularityReport report;
    report.unitriangular = true;
    for (std::size_t i = 0; i < rows.size() && report.unitriangular; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            if (rows[i][j] != (i == j ? Rational(1) : Rational(0))) {
                report.unitriangular = false;
                report.detail = "row " + index[i].to_string() + ", column " + index[j].to_string() + ": " +
                                rows[i][j].to_string();
                break;
            }
        }
    }
    report.invertible = matrix_rank(rows) == rows.size();
    if (!report.invertible && report.detail.empty()) {
        report.detail = "matrix is singular";
    }
    return report;
}

} // namespace chromhopf
