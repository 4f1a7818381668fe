#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace chromhopf {

/// Exact rational number, always kept in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value); // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(const mpz_class& value);
    Rational(const mpz_class& num, const mpz_class& den);

    /// Parses "p/q" or "p". Throws InvalidInput on malformed text or zero denominator.
    static Rational parse(std::string_view text);

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    Rational abs() const;
    Rational inverse() const;
    Rational pow(unsigned exponent) const;

    /// Exact k-th root if it exists over the rationals (negative values need odd k).
    std::optional<Rational> exact_root(unsigned k) const;

    /// Value as int64 when integral and in range.
    std::optional<std::int64_t> to_int64() const;

    /// Always "p/q", with q = 1 for integers.
    std::string to_string() const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    const mpq_class& raw() const { return value_; }

private:
    explicit Rational(mpq_class value);
    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

/// n! as a Rational.
Rational factorial(unsigned n);

} // namespace chromhopf
