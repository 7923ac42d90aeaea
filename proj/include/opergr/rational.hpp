#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace opergr {

/// Exact rational number, always kept in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {} // NOLINT(google-explicit-constructor)
    Rational(int v) : v_(static_cast<long>(v)) {} // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    /// Parses "a", "-a" or "a/b" with decimal integers.
    static Rational parse(const std::string &text);
    static Rational from_parts(const std::string &num, const std::string &den);

    std::string num_str() const { return v_.get_num().get_str(); }
    std::string den_str() const { return v_.get_den().get_str(); }
    std::string str() const;

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }
    const mpq_class &raw() const { return v_; }

    Rational &operator+=(const Rational &o) { v_ += o.v_; return *this; }
    Rational &operator-=(const Rational &o) { v_ -= o.v_; return *this; }
    Rational &operator*=(const Rational &o) { v_ *= o.v_; return *this; }
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    friend bool operator==(const Rational &a, const Rational &b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rational pow(int e) const;

    friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

private:
    mpq_class v_{0};
};

/// Binomial coefficient C(i,k) for any integer i and k >= 0.
Rational binomial(long i, long k);

Rational factorial(long k);

} // namespace opergr

template <>
struct std::hash<opergr::Rational> {
    std::size_t operator()(const opergr::Rational &r) const noexcept
    {
        return std::hash<std::string>{}(r.str());
    }
};
