#include "chromhopf/phase_scalar.hpp"

#include <ostream>

#include "chromhopf/error.hpp"

namespace chromhopf {

Rational reduce_phase(const Rational& phase)
{
    // floor(num / den) with a positive denominator
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), phase.numerator().get_mpz_t(), phase.denominator().get_mpz_t());
    return phase - Rational(q);
}

PhaseScalar::PhaseScalar(Rational magnitude, Rational phase)
    : magnitude_(std::move(magnitude)), phase_(reduce_phase(phase))
{
    if (magnitude_.sign() < 0) {
        throw InvalidInput("PhaseScalar magnitude must be nonnegative");
    }
    if (magnitude_.is_zero()) {
        phase_ = Rational(0);
    }
}

PhaseScalar PhaseScalar::from_rational(const Rational& value)
{
    return PhaseScalar(value.abs(), value.sign() < 0 ? Rational(1, 2) : Rational(0));
}

bool PhaseScalar::is_real() const { return phase_.is_zero() || phase_ == Rational(1, 2); }

std::optional<Rational> PhaseScalar::to_rational() const
{
    if (phase_.is_zero()) {
        return magnitude_;
    }
    if (phase_ == Rational(1, 2)) {
        return -magnitude_;
    }
    return std::nullopt;
}

PhaseScalar PhaseScalar::inverse() const
{
    if (is_zero()) {
        throw InvalidInput("inverse of zero PhaseScalar");
    }
    return PhaseScalar(magnitude_.inverse(), -phase_);
}

PhaseScalar PhaseScalar::pow(unsigned exponent) const
{
    if (exponent == 0) {
        return one();
    }
    return PhaseScalar(magnitude_.pow(exponent), phase_ * Rational(exponent));
}

std::vector<PhaseScalar> PhaseScalar::kth_roots(unsigned k) const
{
    if (k == 0) {
        throw InvalidInput("k-th root needs k >= 1");
    }
    if (is_zero()) {
        return {PhaseScalar()};
    }
    const auto root = magnitude_.exact_root(k);
    if (!root) {
        throw NoExactRoot("magnitude " + magnitude_.to_string() + " has no rational " + std::to_string(k) +
                          "-th root");
    }
    std::vector<PhaseScalar> roots;
    roots.reserve(k);
    for (unsigned j = 0; j < k; ++j) {
        roots.emplace_back(*root, (phase_ + Rational(j)) / Rational(k));
    }
    return roots;
}

PhaseScalar& PhaseScalar::operator*=(const PhaseScalar& rhs)
{
    *this = PhaseScalar(magnitude_ * rhs.magnitude_, phase_ + rhs.phase_);
    return *this;
}

std::string PhaseScalar::to_string() const
{
    if (const auto r = to_rational()) {
        std::string s = r->to_string();
        if (r->is_integer()) {
            s = r->numerator().get_str();
        }
        return s;
    }
    std::string mag = magnitude_.is_integer() ? magnitude_.numerator().get_str() : magnitude_.to_string();
    return mag + "*e^(2pi i " + phase_.to_string() + ")";
}

std::ostream& operator<<(std::ostream& os, const PhaseScalar& value) { return os << value.to_string(); }

} // namespace chromhopf
