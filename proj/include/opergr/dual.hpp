#pragma once

#include "opergr/rational.hpp"

namespace opergr {

/// First-order nilpotent extension a + b*eps with eps^2 = 0.
template <class T>
struct Dual {
    T re;
    T eps;

    Dual &operator+=(const Dual &o)
    {
        re += o.re;
        eps += o.eps;
        return *this;
    }
    Dual &operator-=(const Dual &o)
    {
        re -= o.re;
        eps -= o.eps;
        return *this;
    }
    friend Dual operator+(Dual a, const Dual &b) { return a += b; }
    friend Dual operator-(Dual a, const Dual &b) { return a -= b; }
    Dual operator-() const { return {-re, -eps}; }
    friend Dual operator*(const Dual &a, const Dual &b) { return {a.re * b.re, a.re * b.eps + a.eps * b.re}; }
    friend Dual operator*(const Dual &a, const Rational &s) { return {a.re * s, a.eps * s}; }
    friend Dual operator*(const Rational &s, const Dual &a) { return {a.re * s, a.eps * s}; }
};

template <class T>
Dual<T> derivative(const Dual<T> &d)
{
    return {derivative(d.re), derivative(d.eps)};
}

template <class T>
bool is_zero(const Dual<T> &d)
{
    return is_zero(d.re) && is_zero(d.eps);
}

template <class T>
bool agrees(const Dual<T> &a, const Dual<T> &b)
{
    return agrees(a.re, b.re) && agrees(a.eps, b.eps);
}

template <class T>
int min_order(const Dual<T> &d)
{
    int a = min_order(d.re);
    int b = min_order(d.eps);
    return a < b ? a : b;
}

template <class T>
Dual<T> constant_like(const Dual<T> &like, const Rational &c)
{
    return {constant_like(like.re, c), constant_like(like.eps, Rational())};
}

} // namespace opergr
