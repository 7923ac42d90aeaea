#include "opergr/series.hpp"

#include <algorithm>
#include <sstream>

#include "opergr/errors.hpp"

namespace opergr {

Series::Series(int order, int pole_floor) : pole_(std::min(0, order)), order_(order), floor_(pole_floor)
{
    c_.assign(static_cast<std::size_t>(order_ - pole_), Rational());
}

Series::Series(int pole, std::vector<Rational> coeffs, int order, int pole_floor)
    : pole_(pole), order_(order), floor_(pole_floor), c_(std::move(coeffs))
{
    // Drop anything given at or beyond the truncation order.
    if (pole_ + static_cast<int>(c_.size()) > order_) {
        c_.resize(static_cast<std::size_t>(std::max(0, order_ - pole_)));
    }
    normalize();
    check_floor();
}

Series Series::constant(const Rational &c, int order, int pole_floor)
{
    return monomial(c, 0, order, pole_floor);
}

Series Series::monomial(const Rational &c, int exponent, int order, int pole_floor)
{
    Series s(order, pole_floor);
    if (exponent < order && !c.is_zero()) {
        int lo = std::min({0, exponent, order});
        std::vector<Rational> v(static_cast<std::size_t>(order - lo));
        v[static_cast<std::size_t>(exponent - lo)] = c;
        return Series(lo, std::move(v), order, pole_floor);
    }
    return s;
}

Series Series::polynomial(std::span<const Rational> coeffs, int order, int pole_floor)
{
    std::vector<Rational> v(coeffs.begin(), coeffs.end());
    return Series(0, std::move(v), order, pole_floor);
}

void Series::normalize()
{
    // Canonical window: [min(0, valuation, order), order).
    int want = std::min(0, order_);
    if (pole_ > want) {
        std::vector<Rational> v(static_cast<std::size_t>(pole_ - want), Rational());
        v.insert(v.end(), c_.begin(), c_.end());
        c_ = std::move(v);
        pole_ = want;
    }
    std::size_t lead = 0;
    while (pole_ + static_cast<int>(lead) < want && lead < c_.size() && c_[lead].is_zero()) {
        ++lead;
    }
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
        pole_ += static_cast<int>(lead);
    }
    c_.resize(static_cast<std::size_t>(std::max(0, order_ - pole_)));
}

void Series::check_floor() const
{
    int v = valuation();
    if (v < order_ && v < floor_) {
        throw PoleOverflow("t^" + std::to_string(v) + " is below the pole floor " + std::to_string(floor_));
    }
}

int Series::valuation() const
{
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i].is_zero()) {
            return pole_ + static_cast<int>(i);
        }
    }
    return order_;
}

bool Series::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Rational &r) { return r.is_zero(); });
}

Rational Series::coeff(int k) const
{
    if (k >= order_) {
        throw TruncationExhausted("coefficient of t^" + std::to_string(k) + " requested from a series known modulo t^" +
                                  std::to_string(order_));
    }
    if (k < pole_) {
        return Rational();
    }
    return c_[static_cast<std::size_t>(k - pole_)];
}

Series Series::truncated(int order) const
{
    if (order >= order_) {
        return *this;
    }
    int lo = std::min(pole_, order);
    std::vector<Rational> v;
    for (int k = lo; k < order; ++k) {
        v.push_back(k < pole_ ? Rational() : c_[static_cast<std::size_t>(k - pole_)]);
    }
    return Series(lo, std::move(v), order, floor_);
}

Series Series::with_floor(int floor) const
{
    Series s = *this;
    s.floor_ = floor;
    s.check_floor();
    return s;
}

Series &Series::operator+=(const Series &o)
{
    int order = std::min(order_, o.order_);
    int lo = std::min({pole_, o.pole_, order});
    std::vector<Rational> v(static_cast<std::size_t>(order - lo));
    for (int k = lo; k < order; ++k) {
        auto &slot = v[static_cast<std::size_t>(k - lo)];
        if (k >= pole_) {
            slot += c_[static_cast<std::size_t>(k - pole_)];
        }
        if (k >= o.pole_) {
            slot += o.c_[static_cast<std::size_t>(k - o.pole_)];
        }
    }
    pole_ = lo;
    order_ = order;
    floor_ = std::max(floor_, o.floor_);
    c_ = std::move(v);
    normalize();
    return *this;
}

Series &Series::operator-=(const Series &o)
{
    return *this += -o;
}

Series Series::operator-() const
{
    Series s = *this;
    for (auto &c : s.c_) {
        c = -c;
    }
    return s;
}

Series operator*(const Series &a, const Series &b)
{
    int va = a.valuation();
    int vb = b.valuation();
    int order = std::min(a.order_ + vb, b.order_ + va);
    int floor = std::max(a.floor_, b.floor_);
    if (a.is_zero() || b.is_zero()) {
        return Series(order, floor);
    }
    int lo = va + vb;
    if (lo < floor && lo < order) {
        throw PoleOverflow("product reaches t^" + std::to_string(lo) + ", below the pole floor " +
                           std::to_string(floor));
    }
    std::vector<Rational> v(static_cast<std::size_t>(std::max(0, order - lo)));
    for (int i = va; i < a.order_; ++i) {
        const Rational &x = a.c_[static_cast<std::size_t>(i - a.pole_)];
        if (x.is_zero()) {
            continue;
        }
        for (int j = vb; j < b.order_ && i + j < order; ++j) {
            const Rational &y = b.c_[static_cast<std::size_t>(j - b.pole_)];
            if (!y.is_zero()) {
                v[static_cast<std::size_t>(i + j - lo)] += x * y;
            }
        }
    }
    return Series(lo, std::move(v), order, floor);
}

Series &Series::scale(const Rational &s)
{
    for (auto &c : c_) {
        c *= s;
    }
    normalize();
    return *this;
}

Series Series::shifted(int k) const
{
    return Series(pole_ + k, c_, order_ + k, floor_);
}

Series Series::derivative() const
{
    std::vector<Rational> v;
    v.reserve(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        v.push_back(c_[i] * Rational(pole_ + static_cast<int>(i)));
    }
    return Series(pole_ - 1, std::move(v), order_ - 1, floor_);
}

Series Series::integral() const
{
    std::vector<Rational> v;
    v.reserve(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        int k = pole_ + static_cast<int>(i);
        if (k == -1) {
            if (!c_[i].is_zero()) {
                throw BadArgument("antiderivative of t^-1 is not a Laurent series");
            }
            v.emplace_back();
        } else {
            v.push_back(c_[i] / Rational(k + 1));
        }
    }
    return Series(pole_ + 1, std::move(v), order_ + 1, floor_);
}

Series Series::inverse() const
{
    int v = valuation();
    if (v >= order_) {
        throw NotInvertible("series has no nonzero coefficient below its truncation order");
    }
    int rel = order_ - v;
    Rational lead_inv = Rational(1) / coeff(v);
    std::vector<Rational> b(static_cast<std::size_t>(rel));
    b[0] = lead_inv;
    for (int k = 1; k < rel; ++k) {
        Rational acc;
        for (int j = 1; j <= k; ++j) {
            const Rational &aj = c_[static_cast<std::size_t>(v + j - pole_)];
            if (!aj.is_zero()) {
                acc += aj * b[static_cast<std::size_t>(k - j)];
            }
        }
        b[static_cast<std::size_t>(k)] = -(acc * lead_inv);
    }
    return Series(-v, std::move(b), order_ - 2 * v, floor_);
}

bool Series::agrees(const Series &o) const
{
    int order = std::min(order_, o.order_);
    int lo = std::min(pole_, o.pole_);
    for (int k = lo; k < order; ++k) {
        if (coeff(k) != o.coeff(k)) {
            return false;
        }
    }
    return true;
}

bool operator==(const Series &a, const Series &b)
{
    return a.order_ == b.order_ && a.pole_ == b.pole_ && a.c_ == b.c_;
}

std::string Series::str() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) {
            continue;
        }
        int k = pole_ + static_cast<int>(i);
        Rational c = c_[i];
        if (!first) {
            os << (c.sign() < 0 ? " - " : " + ");
            c = c.sign() < 0 ? -c : c;
        } else if (c.sign() < 0) {
            os << "-";
            c = -c;
        }
        first = false;
        if (k == 0) {
            os << c;
        } else {
            if (!c.is_one()) {
                os << c << "*";
            }
            os << "t";
            if (k != 1) {
                os << "^" << k;
            }
        }
    }
    if (first) {
        os << "0";
    }
    os << " + O(t^" << order_ << ")";
    return os.str();
}

Series derivative(const Series &s)
{
    return s.derivative();
}

Series series_mul(const Series &a, const Series &b)
{
    return a * b;
}

Series series_derivative(const Series &a)
{
    return a.derivative();
}

Series series_invert(const Series &a)
{
    return a.inverse();
}

} // namespace opergr
