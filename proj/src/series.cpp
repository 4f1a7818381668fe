#include "chromhopf/series.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "chromhopf/error.hpp"

namespace chromhopf {

std::string_view to_string(Basis basis)
{
    switch (basis) {
    case Basis::p: return "p";
    case Basis::m: return "m";
    case Basis::m_tilde: return "m_tilde";
    case Basis::e: return "e";
    }
    return "?";
}

std::string_view to_string(Algebra algebra)
{
    return algebra == Algebra::Lambda ? "Lambda" : "LambdaTilde";
}

std::optional<Basis> parse_basis(std::string_view name)
{
    if (name == "p") return Basis::p;
    if (name == "m") return Basis::m;
    if (name == "m_tilde" || name == "mt") return Basis::m_tilde;
    if (name == "e") return Basis::e;
    return std::nullopt;
}

std::optional<Algebra> parse_algebra(std::string_view name)
{
    if (name == "Lambda") return Algebra::Lambda;
    if (name == "LambdaTilde") return Algebra::LambdaTilde;
    return std::nullopt;
}

bool basis_allowed(Basis basis, Algebra algebra)
{
    return algebra == Algebra::Lambda || basis == Basis::m_tilde;
}

namespace {

Basis primitive_basis(Algebra algebra) { return algebra == Algebra::Lambda ? Basis::p : Basis::m_tilde; }

std::optional<int> min_cap(std::optional<int> a, std::optional<int> b)
{
    if (a && b) {
        return std::min(*a, *b);
    }
    return a ? a : b;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) {
        throw BoundExceeded("transition coefficient overflows 64 bits");
    }
    return out;
}

// Number of ways to fill columns with sums `cols` from rows `rows`. In whole-row mode each
// row value lands in a single column (power sums); otherwise a row of value a puts a 1 into a
// distinct columns (elementary functions).
std::int64_t count_fillings(std::span<const int> rows, std::span<const int> cols, bool whole_rows)
{
    const std::size_t k = cols.size();
    std::map<std::vector<int>, std::int64_t> states;
    states[std::vector<int>(cols.begin(), cols.end())] = 1;
    for (int a : rows) {
        std::map<std::vector<int>, std::int64_t> next;
        for (const auto& [rem, count] : states) {
            if (whole_rows) {
                for (std::size_t j = 0; j < k; ++j) {
                    if (rem[j] >= a) {
                        auto r = rem;
                        r[j] -= a;
                        next[r] = checked_add(next[r], count);
                    }
                }
            } else {
                for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
                    if (std::popcount(mask) != a) {
                        continue;
                    }
                    auto r = rem;
                    bool ok = true;
                    for (std::size_t j = 0; j < k && ok; ++j) {
                        if (mask & (std::uint32_t{1} << j)) {
                            ok = --r[j] >= 0;
                        }
                    }
                    if (ok) {
                        next[r] = checked_add(next[r], count);
                    }
                }
            }
        }
        states = std::move(next);
    }
    const auto it = states.find(std::vector<int>(k, 0));
    return it == states.end() ? 0 : it->second;
}

Series::Terms compute_monomial_expansion(Basis basis, const Partition& lambda)
{
    Series::Terms out;
    switch (basis) {
    case Basis::m:
        out[lambda] = Rational(1);
        return out;
    case Basis::m_tilde:
        out[lambda] = Rational(lambda.multiplicity_factorial());
        return out;
    case Basis::p:
        for (const auto& mu : partitions_of(lambda.size())) {
            if (mu.length() > lambda.length() || mu.largest() < lambda.largest()) {
                continue;
            }
            if (const auto c = count_fillings(lambda.parts(), mu.parts(), true)) {
                out[mu] = Rational(c);
            }
        }
        return out;
    case Basis::e:
        for (const auto& mu : partitions_of(lambda.size())) {
            if (mu.largest() > static_cast<int>(lambda.length()) || mu.length() < static_cast<std::size_t>(lambda.largest())) {
                continue;
            }
            if (mu.length() > 24) {
                throw BoundExceeded("e-basis conversion supports at most 24 parts");
            }
            if (const auto c = count_fillings(lambda.parts(), mu.parts(), false)) {
                out[mu] = Rational(c);
            }
        }
        return out;
    }
    return out;
}

struct InverseTable {
    std::vector<Partition> index;
    std::map<Partition, std::size_t> position;
    std::vector<std::vector<Rational>> inverse;
};

InverseTable compute_inverse(Basis basis, int degree)
{
    InverseTable t;
    t.index = partitions_of(degree);
    const std::size_t n = t.index.size();
    for (std::size_t i = 0; i < n; ++i) {
        t.position[t.index[i]] = i;
    }
    // rows: b_lambda in m coordinates; augmented with the identity
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [mu, c] : monomial_expansion(basis, t.index[i])) {
            a[i][t.position.at(mu)] = c;
        }
        a[i][n + i] = Rational(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col].is_zero()) {
            ++pivot;
        }
        if (pivot == n) {
            throw Error("transition matrix is singular");
        }
        std::swap(a[pivot], a[col]);
        const Rational inv = a[col][col].inverse();
        for (auto& x : a[col]) {
            x *= inv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) {
                continue;
            }
            const Rational factor = a[r][col];
            for (std::size_t c = col; c < 2 * n; ++c) {
                if (!a[col][c].is_zero()) {
                    a[r][c] -= factor * a[col][c];
                }
            }
        }
    }
    // A = (b in m); A^{-1}[mu][lambda] is the coefficient of b_lambda in m_mu
    t.inverse.assign(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            t.inverse[i][j] = a[i][n + j];
        }
    }
    return t;
}

struct Caches {
    std::mutex mutex;
    std::map<std::pair<Basis, Partition>, Series::Terms> monomial;
    std::map<std::pair<Basis, int>, InverseTable> inverse;
    std::map<std::tuple<Basis, Basis, Partition>, Series::Terms> element;
};

Caches& caches()
{
    static Caches c;
    return c;
}

const InverseTable& inverse_table(Basis basis, int degree)
{
    auto& c = caches();
    {
        std::lock_guard lock(c.mutex);
        if (const auto it = c.inverse.find({basis, degree}); it != c.inverse.end()) {
            return it->second;
        }
    }
    InverseTable t = compute_inverse(basis, degree);
    std::lock_guard lock(c.mutex);
    return c.inverse.emplace(std::make_pair(basis, degree), std::move(t)).first->second;
}

Series::Terms compute_element(Basis from, Basis to, const Partition& lambda)
{
    if (from == to) {
        return {{lambda, Rational(1)}};
    }
    const auto& in_m = monomial_expansion(from, lambda);
    if (to == Basis::m) {
        return in_m;
    }
    Series::Terms out;
    if (to == Basis::m_tilde) {
        for (const auto& [mu, c] : in_m) {
            out[mu] = c / Rational(mu.multiplicity_factorial());
        }
        return out;
    }
    const auto& t = inverse_table(to, lambda.size());
    std::vector<Rational> acc(t.index.size());
    for (const auto& [mu, c] : in_m) {
        const auto& row = t.inverse[t.position.at(mu)];
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!row[j].is_zero()) {
                acc[j] += c * row[j];
            }
        }
    }
    for (std::size_t j = 0; j < acc.size(); ++j) {
        if (!acc[j].is_zero()) {
            out[t.index[j]] = acc[j];
        }
    }
    return out;
}

/// b_lambda (from) expressed in the `to` basis.
const Series::Terms& element_in(Basis from, Basis to, const Partition& lambda)
{
    auto& c = caches();
    const auto key = std::make_tuple(from, to, lambda);
    {
        std::lock_guard lock(c.mutex);
        if (const auto it = c.element.find(key); it != c.element.end()) {
            return it->second;
        }
    }
    Series::Terms t = compute_element(from, to, lambda);
    std::lock_guard lock(c.mutex);
    return c.element.emplace(key, std::move(t)).first->second;
}

Series convert_unchecked(const Series& f, Basis target, Algebra algebra)
{
    Series out(target, algebra, f.cap());
    if (f.basis() == target) {
        for (const auto& [lambda, c] : f.terms()) {
            out.add(lambda, c);
        }
        return out;
    }
    for (const auto& [lambda, c] : f.terms()) {
        for (const auto& [mu, d] : element_in(f.basis(), target, lambda)) {
            out.add(mu, c * d);
        }
    }
    return out;
}

/// Coefficient text for the n-th term of a sum.
void append_term(std::ostringstream& os, bool first, const Rational& c, const std::string& body)
{
    const bool negative = c.sign() < 0;
    const Rational mag = c.abs();
    if (first) {
        os << (negative ? "-" : "");
    } else {
        os << (negative ? " - " : " + ");
    }
    if (mag != Rational(1)) {
        os << mag << "*";
    }
    os << body;
}

std::string basis_prefix(Basis basis)
{
    switch (basis) {
    case Basis::p: return "p";
    case Basis::m: return "m";
    case Basis::m_tilde: return "mt";
    case Basis::e: return "e";
    }
    return "?";
}

} // namespace

const Series::Terms& monomial_expansion(Basis basis, const Partition& lambda)
{
    auto& c = caches();
    const auto key = std::make_pair(basis, lambda);
    {
        std::lock_guard lock(c.mutex);
        if (const auto it = c.monomial.find(key); it != c.monomial.end()) {
            return it->second;
        }
    }
    Series::Terms t = compute_monomial_expansion(basis, lambda);
    std::lock_guard lock(c.mutex);
    return c.monomial.emplace(key, std::move(t)).first->second;
}

// ---------------------------------------------------------------------------------------------
// Series

Series::Series(Basis basis, Algebra algebra, std::optional<int> cap) : basis_(basis), algebra_(algebra), cap_(cap)
{
    if (!basis_allowed(basis, algebra)) {
        throw InvalidInput("basis " + std::string(chromhopf::to_string(basis)) + " is not allowed in " +
                           std::string(chromhopf::to_string(algebra)));
    }
    if (cap && *cap < 0) {
        throw InvalidInput("degree cap must be nonnegative");
    }
}

Series Series::basis_element(Basis basis, const Partition& lambda, Algebra algebra)
{
    Series s(basis, algebra);
    s.add(lambda, Rational(1));
    return s;
}

Series Series::constant(const Rational& c, Basis basis, Algebra algebra)
{
    Series s(basis, algebra);
    s.add(Partition(), c);
    return s;
}

Rational Series::coefficient(const Partition& lambda) const
{
    const auto it = terms_.find(lambda);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Series::add(const Partition& lambda, const Rational& c)
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

int Series::max_degree() const
{
    int d = -1;
    for (const auto& [lambda, c] : terms_) {
        d = std::max(d, lambda.size());
    }
    return d;
}

int Series::min_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.size(); }

Series Series::homogeneous_component(int degree) const
{
    Series out(basis_, algebra_, cap_);
    for (const auto& [lambda, c] : terms_) {
        if (lambda.size() == degree) {
            out.terms_.emplace(lambda, c);
        }
    }
    return out;
}

Series Series::truncated(int cap) const
{
    Series out(basis_, algebra_, min_cap(cap_, cap));
    for (const auto& [lambda, c] : terms_) {
        out.add(lambda, c);
    }
    return out;
}

Series Series::with_algebra(Algebra algebra) const
{
    Series out(basis_, algebra, cap_);
    out.terms_ = terms_;
    return out;
}

void Series::check_compatible(const Series& rhs) const
{
    if (basis_ != rhs.basis_ || algebra_ != rhs.algebra_) {
        throw InvalidInput("series sum needs matching basis and algebra");
    }
}

Series& Series::operator+=(const Series& rhs)
{
    check_compatible(rhs);
    cap_ = min_cap(cap_, rhs.cap_);
    if (cap_) {
        std::erase_if(terms_, [&](const auto& kv) { return kv.first.size() > *cap_; });
    }
    for (const auto& [lambda, c] : rhs.terms_) {
        add(lambda, c);
    }
    return *this;
}

Series& Series::operator-=(const Series& rhs) { return *this += rhs * Rational(-1); }

Series& Series::operator*=(const Rational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [lambda, coef] : terms_) {
        coef *= c;
    }
    return *this;
}

std::string Series::to_string() const
{
    if (terms_.empty()) {
        return cap_ ? "0 + O(deg " + std::to_string(*cap_ + 1) + ")" : "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [lambda, c] : terms_) {
        std::string body = basis_prefix(basis_) + lambda.to_string();
        if (lambda.empty()) {
            body = "1";
        }
        append_term(os, first, c, body);
        first = false;
    }
    if (cap_) {
        os << " + O(deg " << *cap_ + 1 << ")";
    }
    return os.str();
}

// ---------------------------------------------------------------------------------------------
// Conversion, product, comparison

Series convert(const Series& f, Basis target)
{
    if (!basis_allowed(target, f.algebra())) {
        throw InvalidInput("cannot convert a " + std::string(to_string(f.algebra())) + " series to basis " +
                           std::string(to_string(target)));
    }
    return convert_unchecked(f, target, f.algebra());
}

Series multiply(const Series& f, const Series& g)
{
    if (f.algebra() != g.algebra()) {
        throw InvalidInput("multiply: mixed algebras");
    }
    const Basis prim = primitive_basis(f.algebra());
    const Series a = convert(f, prim);
    const Series b = convert(g, prim);
    Series product(prim, f.algebra(), min_cap(f.cap(), g.cap()));
    for (const auto& [lambda, c] : a.terms()) {
        for (const auto& [mu, d] : b.terms()) {
            if (product.cap() && lambda.size() + mu.size() > *product.cap()) {
                continue;
            }
            product.add(partition_union(lambda, mu), c * d);
        }
    }
    return convert(product, f.basis());
}

std::string SeriesComparison::describe() const
{
    std::string s;
    if (equal) {
        s = "equal";
    } else {
        s = "differ at " + first_difference->to_string() + ": " + left.to_string() + " vs " + right.to_string();
    }
    if (up_to_degree) {
        s += " (up to degree " + std::to_string(*up_to_degree) + ")";
    }
    return s;
}

SeriesComparison compare(const Series& f, const Series& g)
{
    const Series h = convert_unchecked(g, f.basis(), f.algebra());
    SeriesComparison result;
    result.up_to_degree = min_cap(f.cap(), g.cap());
    const auto in_range = [&](const Partition& lambda) {
        return !result.up_to_degree || lambda.size() <= *result.up_to_degree;
    };
    std::set<Partition> keys;
    for (const auto& [lambda, c] : f.terms()) {
        if (in_range(lambda)) keys.insert(lambda);
    }
    for (const auto& [lambda, c] : h.terms()) {
        if (in_range(lambda)) keys.insert(lambda);
    }
    for (const auto& lambda : keys) {
        const Rational a = f.coefficient(lambda);
        const Rational b = h.coefficient(lambda);
        if (a != b) {
            result.first_difference = lambda;
            result.left = a;
            result.right = b;
            return result;
        }
    }
    result.equal = true;
    return result;
}

// ---------------------------------------------------------------------------------------------
// TensorSeries

Rational TensorSeries::coefficient(const Partition& left, const Partition& right) const
{
    const auto it = terms_.find({left, right});
    return it == terms_.end() ? Rational(0) : it->second;
}

void TensorSeries::add(const Partition& left, const Partition& right, const Rational& c)
{
    if (c.is_zero() || (cap_ && left.size() + right.size() > *cap_)) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace({left, right}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

TensorSeries TensorSeries::swapped() const
{
    TensorSeries out(basis_, algebra_, cap_);
    for (const auto& [key, c] : terms_) {
        out.terms_.emplace(Key{key.second, key.first}, c);
    }
    return out;
}

TensorSeries TensorSeries::converted(Basis target) const
{
    if (!basis_allowed(target, algebra_)) {
        throw InvalidInput("tensor conversion to a basis outside the algebra");
    }
    TensorSeries out(target, algebra_, cap_);
    for (const auto& [key, c] : terms_) {
        const auto& left = element_in(basis_, target, key.first);
        const auto& right = element_in(basis_, target, key.second);
        for (const auto& [a, x] : left) {
            for (const auto& [b, y] : right) {
                out.add(a, b, c * x * y);
            }
        }
    }
    return out;
}

std::string TensorSeries::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    const std::string prefix = basis_prefix(basis_);
    for (const auto& [key, c] : terms_) {
        const std::string l = key.first.empty() ? "1" : prefix + key.first.to_string();
        const std::string r = key.second.empty() ? "1" : prefix + key.second.to_string();
        append_term(os, first, c, "(" + l + " (x) " + r + ")");
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------------------------
// Hopf structure

namespace {

/// Coproduct of a series already written in a multiplicative basis with primitive generators.
TensorSeries primitive_coproduct(const Series& f)
{
    TensorSeries out(f.basis(), f.algebra(), f.cap());
    for (const auto& [lambda, c] : f.terms()) {
        const auto mult = lambda.multiplicities();
        std::vector<int> take(mult.size(), 0);
        // every sub-multiset of the parts, weighted by prod C(r_i, s_i)
        while (true) {
            std::vector<int> left;
            std::vector<int> right;
            Rational weight(1);
            for (std::size_t i = 0; i < mult.size(); ++i) {
                const auto [part, r] = mult[i];
                left.insert(left.end(), take[i], part);
                right.insert(right.end(), r - take[i], part);
                weight *= factorial(r) / (factorial(take[i]) * factorial(r - take[i]));
            }
            out.add(Partition(std::move(left)), Partition(std::move(right)), c * weight);
            std::size_t i = 0;
            while (i < mult.size() && take[i] == mult[i].second) {
                take[i++] = 0;
            }
            if (i == mult.size()) {
                break;
            }
            ++take[i];
        }
    }
    return out;
}

} // namespace

TensorSeries coproduct(const Series& f)
{
    const Basis prim = primitive_basis(f.algebra());
    TensorSeries t = primitive_coproduct(convert(f, prim));
    return f.basis() == prim ? t : t.converted(f.basis());
}

TensorSeries coproduct_via_lambda(const Series& f)
{
    if (f.basis() != Basis::m_tilde) {
        throw InvalidInput("coproduct_via_lambda needs an m_tilde series");
    }
    const Series in_lambda = convert(f.with_algebra(Algebra::Lambda), Basis::p);
    const TensorSeries t = primitive_coproduct(in_lambda).converted(Basis::m_tilde);
    TensorSeries out(Basis::m_tilde, f.algebra(), f.cap());
    for (const auto& [key, c] : t.terms()) {
        out.add(key.first, key.second, c);
    }
    return out;
}

Rational counit(const Series& f) { return f.coefficient(Partition()); }

Series antipode(const Series& f)
{
    const Basis prim = primitive_basis(f.algebra());
    const Series a = convert(f, prim);
    Series out(prim, f.algebra(), f.cap());
    for (const auto& [lambda, c] : a.terms()) {
        out.add(lambda, lambda.length() % 2 == 0 ? c : -c);
    }
    return convert(out, f.basis());
}

HopfReport hopf_axiom_check(const Series& f)
{
    HopfReport report;
    const auto fail = [&](std::string what) {
        report.ok = false;
        report.first_violation = std::move(what);
        return report;
    };
    const Basis basis = f.basis();
    const Algebra algebra = f.algebra();
    const TensorSeries delta = coproduct(f);

    // counit law on both sides
    Series left(basis, algebra, f.cap());
    Series right(basis, algebra, f.cap());
    for (const auto& [key, c] : delta.terms()) {
        if (key.second.empty()) left.add(key.first, c);
        if (key.first.empty()) right.add(key.second, c);
    }
    if (!compare(left, f).equal) {
        return fail("(id (x) counit) Delta f != f: " + compare(left, f).describe());
    }
    if (!compare(right, f).equal) {
        return fail("(counit (x) id) Delta f != f: " + compare(right, f).describe());
    }

    if (delta.swapped() != delta) {
        return fail("Delta f is not symmetric under the tensor swap");
    }

    // coassociativity on triple tensors
    using Triple = std::tuple<Partition, Partition, Partition>;
    std::map<Triple, Rational> lhs;
    std::map<Triple, Rational> rhs;
    const auto accumulate = [](std::map<Triple, Rational>& m, Triple key, const Rational& c) {
        auto [it, inserted] = m.try_emplace(std::move(key), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) m.erase(it);
        }
    };
    for (const auto& [key, c] : delta.terms()) {
        const TensorSeries first = coproduct(Series::basis_element(basis, key.first, algebra));
        const TensorSeries second = coproduct(Series::basis_element(basis, key.second, algebra));
        for (const auto& [inner, d] : first.terms()) {
            accumulate(lhs, {inner.first, inner.second, key.second}, c * d);
        }
        for (const auto& [inner, d] : second.terms()) {
            accumulate(rhs, {key.first, inner.first, inner.second}, c * d);
        }
    }
    if (lhs != rhs) {
        return fail("(Delta (x) id) Delta f != (id (x) Delta) Delta f");
    }

    // antipode law: mu (S (x) id) Delta f = counit(f) 1 = mu (id (x) S) Delta f
    Series s_left(basis, algebra, f.cap());
    Series s_right(basis, algebra, f.cap());
    for (const auto& [key, c] : delta.terms()) {
        const Series a = Series::basis_element(basis, key.first, algebra);
        const Series b = Series::basis_element(basis, key.second, algebra);
        s_left += multiply(antipode(a), b) * c;
        s_right += multiply(a, antipode(b)) * c;
    }
    Series unit = Series::constant(counit(f), basis, algebra);
    if (f.cap()) {
        unit = unit.truncated(*f.cap());
    }
    if (!compare(s_left, unit).equal) {
        return fail("mu (S (x) id) Delta f != counit(f): " + compare(s_left, unit).describe());
    }
    if (!compare(s_right, unit).equal) {
        return fail("mu (id (x) S) Delta f != counit(f): " + compare(s_right, unit).describe());
    }
    return report;
}

} // namespace chromhopf
