#include "chromhopf/rational.hpp"

#include <ostream>

#include "chromhopf/error.hpp"

namespace chromhopf {

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(std::int64_t num, std::int64_t den)
    : Rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)))
{
}

Rational::Rational(const mpz_class& value) : value_(value) {}

Rational::Rational(const mpz_class& num, const mpz_class& den)
{
    if (den == 0) {
        throw InvalidInput("rational with zero denominator");
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text)
{
    auto parse_int = [&](std::string_view part) {
        std::string s(part);
        if (s.empty() || s == "-" || s == "+") {
            throw InvalidInput("malformed rational '" + std::string(text) + "'");
        }
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        for (std::size_t i = start; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') {
                throw InvalidInput("malformed rational '" + std::string(text) + "'");
            }
        }
        if (s[0] == '+') {
            s.erase(0, 1);
        }
        return mpz_class(s, 10);
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text));
    }
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::inverse() const
{
    if (is_zero()) {
        throw InvalidInput("inverse of zero");
    }
    return Rational(mpq_class(1) / value_);
}

Rational Rational::pow(unsigned exponent) const
{
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), exponent);
    return Rational(num, den);
}

std::optional<Rational> Rational::exact_root(unsigned k) const
{
    if (k == 0) {
        throw InvalidInput("0-th root");
    }
    if (sign() < 0 && k % 2 == 0) {
        return std::nullopt;
    }
    mpz_class num_abs = ::abs(value_.get_num());
    mpz_class num_root;
    mpz_class den_root;
    if (mpz_root(num_root.get_mpz_t(), num_abs.get_mpz_t(), k) == 0) {
        return std::nullopt;
    }
    if (mpz_root(den_root.get_mpz_t(), value_.get_den_mpz_t(), k) == 0) {
        return std::nullopt;
    }
    if (sign() < 0) {
        num_root = -num_root;
    }
    return Rational(num_root, den_root);
}

std::optional<std::int64_t> Rational::to_int64() const
{
    if (!is_integer() || !value_.get_num().fits_slong_p()) {
        return std::nullopt;
    }
    return value_.get_num().get_si();
}

std::string Rational::to_string() const
{
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& rhs)
{
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs)
{
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs)
{
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs)
{
    if (rhs.is_zero()) {
        throw InvalidInput("division by zero");
    }
    value_ /= rhs.value_;
    return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& value)
{
    if (value.is_integer()) {
        return os << value.numerator().get_str();
    }
    return os << value.to_string();
}

Rational factorial(unsigned n)
{
    mpz_class result;
    mpz_fac_ui(result.get_mpz_t(), n);
    return Rational(result);
}

} // namespace chromhopf
