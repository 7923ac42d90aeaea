#pragma once

#include <span>
#include <string>
#include <vector>

#include "opergr/rational.hpp"

namespace opergr {

/// Per-computation truncation settings shared by series and operators.
struct Regime {
    int order = 12;       ///< absolute truncation order N of series in t
    int pole_floor = -16; ///< most negative power of t allowed
    int depth = -8;       ///< smallest retained power of d in microdifferential tails
};

/// Truncated Laurent series sum_{k >= pole} c_k t^k known modulo t^order.
///
/// The stored window starts at min(0, valuation); nothing at or beyond the
/// truncation order is ever reported. Binary operations produce the largest
/// order that is actually determined by the inputs.
class Series {
public:
    /// The zero series known modulo t^order.
    explicit Series(int order = 0, int pole_floor = -16);
    Series(int pole, std::vector<Rational> coeffs, int order, int pole_floor = -16);

    static Series constant(const Rational &c, int order, int pole_floor = -16);
    static Series constant(const Rational &c, const Regime &r) { return constant(c, r.order, r.pole_floor); }
    static Series monomial(const Rational &c, int exponent, int order, int pole_floor = -16);
    static Series monomial(const Rational &c, int exponent, const Regime &r)
    {
        return monomial(c, exponent, r.order, r.pole_floor);
    }
    /// Polynomial c_0 + c_1 t + ... truncated at the given order.
    static Series polynomial(std::span<const Rational> coeffs, int order, int pole_floor = -16);

    int pole() const { return pole_; }
    int order() const { return order_; }
    int pole_floor() const { return floor_; }
    /// Lowest exponent with a nonzero coefficient, or order() for the zero series.
    int valuation() const;
    bool is_zero() const;

    /// Coefficient of t^k; throws TruncationExhausted when k >= order().
    Rational coeff(int k) const;
    std::span<const Rational> coeffs() const { return c_; }

    Series truncated(int order) const;
    Series with_floor(int floor) const;

    Series &operator+=(const Series &o);
    Series &operator-=(const Series &o);
    friend Series operator+(Series a, const Series &b) { return a += b; }
    friend Series operator-(Series a, const Series &b) { return a -= b; }
    Series operator-() const;
    friend Series operator*(const Series &a, const Series &b);
    friend Series operator*(Series a, const Rational &s) { return a.scale(s); }
    friend Series operator*(const Rational &s, Series a) { return a.scale(s); }

    Series &scale(const Rational &s);
    /// Multiplication by t^k.
    Series shifted(int k) const;
    Series derivative() const;
    /// Antiderivative with zero constant term; requires a vanishing t^{-1} coefficient.
    Series integral() const;
    Series inverse() const;

    /// Equality of all coefficients below the smaller of the two orders.
    bool agrees(const Series &o) const;
    /// Identical representation (same order and coefficients).
    friend bool operator==(const Series &a, const Series &b);

    std::string str() const;

private:
    void normalize();
    void check_floor() const;

    int pole_ = 0;
    int order_ = 0;
    int floor_ = -16;
    std::vector<Rational> c_;
};

Series derivative(const Series &s);
inline bool is_zero(const Series &s) { return s.is_zero(); }
inline bool agrees(const Series &a, const Series &b) { return a.agrees(b); }
inline int min_order(const Series &s) { return s.order(); }
inline Series constant_like(const Series &like, const Rational &c)
{
    return Series::constant(c, like.order(), like.pole_floor());
}

Series series_mul(const Series &a, const Series &b);
Series series_derivative(const Series &a);
Series series_invert(const Series &a);

} // namespace opergr
