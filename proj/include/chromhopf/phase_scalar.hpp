#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chromhopf/rational.hpp"

namespace chromhopf {

/// Exact complex scalar magnitude * e^(2 pi i phase), with phase a rational reduced mod 1.
///
/// Closed under multiplication, inversion and exact k-th roots. Addition is deliberately
/// absent: sums of such scalars leave the representable set.
class PhaseScalar {
public:
    /// Zero.
    PhaseScalar() = default;
    PhaseScalar(Rational magnitude, Rational phase);

    /// Embeds a signed rational: negative values get phase 1/2.
    static PhaseScalar from_rational(const Rational& value);
    static PhaseScalar one() { return PhaseScalar(Rational(1), Rational(0)); }
    /// e^(2 pi i phase).
    static PhaseScalar root_of_unity(const Rational& phase) { return PhaseScalar(Rational(1), phase); }

    const Rational& magnitude() const { return magnitude_; }
    const Rational& phase() const { return phase_; }

    bool is_zero() const { return magnitude_.is_zero(); }
    /// True when the phase is 0 or 1/2.
    bool is_real() const;
    /// The signed rational value, when real.
    std::optional<Rational> to_rational() const;

    PhaseScalar inverse() const;
    PhaseScalar pow(unsigned exponent) const;

    /// All k-th roots. Zero has the single root zero.
    /// Throws NoExactRoot when the magnitude has no rational k-th root.
    std::vector<PhaseScalar> kth_roots(unsigned k) const;

    PhaseScalar& operator*=(const PhaseScalar& rhs);
    friend PhaseScalar operator*(PhaseScalar lhs, const PhaseScalar& rhs) { return lhs *= rhs; }
    friend PhaseScalar operator/(const PhaseScalar& lhs, const PhaseScalar& rhs) { return lhs * rhs.inverse(); }
    friend bool operator==(const PhaseScalar&, const PhaseScalar&) = default;

    /// Human form: "1/2", "-3", "1*e^(2pi i 1/8)".
    std::string to_string() const;

private:
    Rational magnitude_;
    Rational phase_;
};

std::ostream& operator<<(std::ostream& os, const PhaseScalar& value);

/// Reduces a rational into [0, 1).
Rational reduce_phase(const Rational& phase);

} // namespace chromhopf
