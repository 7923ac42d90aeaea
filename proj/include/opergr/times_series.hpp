#pragma once

#include <map>
#include <string>
#include <vector>

#include "opergr/rational.hpp"

namespace opergr {

/// Polynomial in the times t_1..t_K (and optionally t'_1..t'_K) known through
/// weighted degree bound(), with weight(t_k) = weight(t'_k) = k.
class TimesSeries {
public:
    using Exponents = std::vector<int>;

    TimesSeries() = default;
    TimesSeries(int times, int bound, bool two_sided = false);

    static TimesSeries constant(const Rational &c, int times, int bound, bool two_sided = false);
    /// c * t_k (primed = false) or c * t'_k.
    static TimesSeries variable(int k, bool primed, int times, int bound, bool two_sided = false,
                                const Rational &c = Rational(1));

    int times() const { return times_; }
    int bound() const { return bound_; }
    bool two_sided() const { return two_sided_; }
    int variable_count() const { return two_sided_ ? 2 * times_ : times_; }
    int weight_of(int var) const { return var % times_ + 1; }
    int weight(const Exponents &e) const;
    /// Lowest weighted degree present, or bound()+1 for zero.
    int valuation() const;

    const std::map<Exponents, Rational> &terms() const { return terms_; }
    Rational coeff(const Exponents &e) const;
    Rational constant_term() const;
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponents &e, const Rational &c);

    TimesSeries truncated(int bound) const;

    TimesSeries &operator+=(const TimesSeries &o);
    TimesSeries &operator-=(const TimesSeries &o);
    friend TimesSeries operator+(TimesSeries a, const TimesSeries &b) { return a += b; }
    friend TimesSeries operator-(TimesSeries a, const TimesSeries &b) { return a -= b; }
    TimesSeries operator-() const;
    friend TimesSeries operator*(const TimesSeries &a, const TimesSeries &b);
    friend TimesSeries operator*(TimesSeries a, const Rational &s) { return a.scale(s); }
    friend TimesSeries operator*(const Rational &s, TimesSeries a) { return a.scale(s); }
    TimesSeries &scale(const Rational &s);

    /// d/d t_k (or t'_k); the known bound drops by k.
    TimesSeries derivative(int k, bool primed = false) const;
    /// exp of a series with zero constant term.
    TimesSeries exp() const;
    /// Inverse of a series with nonzero constant term.
    TimesSeries inverse() const;

    /// Coefficientwise equality through the smaller of the two bounds.
    bool agrees(const TimesSeries &o) const;
    /// True when every coefficient through weighted degree d vanishes.
    bool vanishes_through(int d) const;

    /// Restriction to t' = 0 as a one-sided series.
    TimesSeries restrict_primed_to_zero() const;

    std::string var_name(int var) const;
    std::string str() const;

private:
    int index_of(int k, bool primed) const;

    int times_ = 1;
    int bound_ = 0;
    bool two_sided_ = false;
    std::map<Exponents, Rational> terms_;
};

} // namespace opergr
