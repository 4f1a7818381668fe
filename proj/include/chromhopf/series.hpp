#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "chromhopf/partition.hpp"
#include "chromhopf/rational.hpp"

namespace chromhopf {

enum class Basis { p, m, m_tilde, e };
/// Lambda: the usual product. LambdaTilde: the product under which m~ is multiplicative.
enum class Algebra { Lambda, LambdaTilde };

std::string_view to_string(Basis basis);
std::string_view to_string(Algebra algebra);
std::optional<Basis> parse_basis(std::string_view name);
std::optional<Algebra> parse_algebra(std::string_view name);

/// p, m and e live only in Lambda; m_tilde lives in either algebra.
bool basis_allowed(Basis basis, Algebra algebra);

/// Sparse graded series over Q indexed by partitions.
///
/// A series without a cap is an exact finite element. A capped series stores only the
/// components of degree <= cap and is understood as a truncation.
class Series {
public:
    using Terms = std::map<Partition, Rational>;

    /// Zero series. Throws InvalidInput when the basis is not allowed in the algebra.
    explicit Series(Basis basis = Basis::p, Algebra algebra = Algebra::Lambda, std::optional<int> cap = std::nullopt);

    static Series basis_element(Basis basis, const Partition& lambda, Algebra algebra = Algebra::Lambda);
    /// c times the unit.
    static Series constant(const Rational& c, Basis basis, Algebra algebra = Algebra::Lambda);

    Basis basis() const { return basis_; }
    Algebra algebra() const { return algebra_; }
    std::optional<int> cap() const { return cap_; }
    const Terms& terms() const { return terms_; }

    Rational coefficient(const Partition& lambda) const;
    /// Adds c to the coefficient of lambda. Terms above the cap are dropped.
    void add(const Partition& lambda, const Rational& c);

    bool is_zero() const { return terms_.empty(); }
    /// Largest |lambda| in the support, -1 for the zero series.
    int max_degree() const;
    /// Smallest |lambda| in the support, -1 for the zero series.
    int min_degree() const;
    Series homogeneous_component(int degree) const;
    /// Drops every term above `cap` and records the cap (the smaller one if already capped).
    Series truncated(int cap) const;
    /// Same coefficients viewed in another algebra (only meaningful for m_tilde).
    Series with_algebra(Algebra algebra) const;

    Series& operator+=(const Series& rhs);
    Series& operator-=(const Series& rhs);
    Series& operator*=(const Rational& c);
    friend Series operator+(Series lhs, const Series& rhs) { return lhs += rhs; }
    friend Series operator-(Series lhs, const Series& rhs) { return lhs -= rhs; }
    friend Series operator*(Series lhs, const Rational& c) { return lhs *= c; }
    friend Series operator*(const Rational& c, Series rhs) { return rhs *= c; }
    Series operator-() const { return *this * Rational(-1); }

    /// Structural equality: basis, algebra, cap and coefficients.
    friend bool operator==(const Series&, const Series&) = default;

    /// "p[2,1] - 2*p[3]" style text; "0" for the zero series.
    std::string to_string() const;

private:
    void check_compatible(const Series& rhs) const;

    Basis basis_;
    Algebra algebra_;
    std::optional<int> cap_;
    Terms terms_;
};

/// Change of basis, degree by degree. Throws InvalidInput when the target basis is not allowed
/// in the series' algebra.
Series convert(const Series& f, Basis target);

/// Coefficients of b_lambda in the m basis.
const Series::Terms& monomial_expansion(Basis basis, const Partition& lambda);

/// Product in the series' common algebra, expressed in f's basis. Throws on mixed algebras.
Series multiply(const Series& f, const Series& g);

/// Outcome of comparing two series that may carry different caps.
struct SeriesComparison {
    bool equal = false;
    /// Set when at least one side was capped: equality holds only through this degree.
    std::optional<int> up_to_degree;
    std::optional<Partition> first_difference;
    Rational left;
    Rational right;
    std::string describe() const;
};
/// Compares after converting g into f's basis, restricted to the common cap.
SeriesComparison compare(const Series& f, const Series& g);

/// Sparse element of A (x) A with one basis/algebra for both factors.
class TensorSeries {
public:
    using Key = std::pair<Partition, Partition>;
    using Terms = std::map<Key, Rational>;

    explicit TensorSeries(Basis basis = Basis::p, Algebra algebra = Algebra::Lambda,
                          std::optional<int> cap = std::nullopt)
        : basis_(basis), algebra_(algebra), cap_(cap)
    {
    }

    Basis basis() const { return basis_; }
    Algebra algebra() const { return algebra_; }
    std::optional<int> cap() const { return cap_; }
    const Terms& terms() const { return terms_; }

    Rational coefficient(const Partition& left, const Partition& right) const;
    void add(const Partition& left, const Partition& right, const Rational& c);
    bool is_zero() const { return terms_.empty(); }

    /// Exchanges the two tensor factors.
    TensorSeries swapped() const;
    /// Rewrites both factors in another basis of the same algebra.
    TensorSeries converted(Basis target) const;

    friend bool operator==(const TensorSeries&, const TensorSeries&) = default;

    std::string to_string() const;

private:
    Basis basis_;
    Algebra algebra_;
    std::optional<int> cap_;
    Terms terms_;
};

/// Comultiplication, extended multiplicatively from the primitive generators (p_n in Lambda,
/// m~_n in LambdaTilde). The result is expressed in f's basis on both sides.
TensorSeries coproduct(const Series& f);

/// LambdaTilde only: takes f (m_tilde) into Lambda, applies the Lambda coproduct there via the
/// p basis, and rewrites both sides in m_tilde. Agrees with coproduct(f) exactly when m~_n is
/// primitive for the Lambda coproduct.
TensorSeries coproduct_via_lambda(const Series& f);

/// Degree-0 coefficient.
Rational counit(const Series& f);

/// Algebra anti-endomorphism negating each primitive generator; result in f's basis.
Series antipode(const Series& f);

struct HopfReport {
    bool ok = true;
    std::string first_violation;
};

/// Counit law, coassociativity, cocommutativity and the antipode law on f, exactly.
HopfReport hopf_axiom_check(const Series& f);

} // namespace chromhopf
