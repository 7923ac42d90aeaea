#include "opergr/times_series.hpp"

#include <algorithm>
#include <sstream>

#include "opergr/errors.hpp"

namespace opergr {

TimesSeries::TimesSeries(int times, int bound, bool two_sided) : times_(times), bound_(bound), two_sided_(two_sided)
{
    if (times < 1) {
        throw BadArgument("at least one time variable is required");
    }
}

TimesSeries TimesSeries::constant(const Rational &c, int times, int bound, bool two_sided)
{
    TimesSeries s(times, bound, two_sided);
    s.add_term(Exponents(static_cast<std::size_t>(s.variable_count()), 0), c);
    return s;
}

TimesSeries TimesSeries::variable(int k, bool primed, int times, int bound, bool two_sided, const Rational &c)
{
    TimesSeries s(times, bound, two_sided);
    Exponents e(static_cast<std::size_t>(s.variable_count()), 0);
    e[static_cast<std::size_t>(s.index_of(k, primed))] = 1;
    s.add_term(e, c);
    return s;
}

int TimesSeries::index_of(int k, bool primed) const
{
    if (k < 1 || k > times_ || (primed && !two_sided_)) {
        throw BadArgument("time variable out of range");
    }
    return (primed ? times_ : 0) + k - 1;
}

int TimesSeries::weight(const Exponents &e) const
{
    int w = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        w += e[i] * weight_of(static_cast<int>(i));
    }
    return w;
}

int TimesSeries::valuation() const
{
    int v = bound_ + 1;
    for (const auto &[e, c] : terms_) {
        v = std::min(v, weight(e));
    }
    return v;
}

Rational TimesSeries::coeff(const Exponents &e) const
{
    if (weight(e) > bound_) {
        throw TruncationExhausted("coefficient beyond the weighted bound requested");
    }
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational() : it->second;
}

Rational TimesSeries::constant_term() const
{
    return coeff(Exponents(static_cast<std::size_t>(variable_count()), 0));
}

void TimesSeries::add_term(const Exponents &e, const Rational &c)
{
    if (c.is_zero() || weight(e) > bound_) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

TimesSeries TimesSeries::truncated(int bound) const
{
    TimesSeries s(times_, std::min(bound, bound_), two_sided_);
    for (const auto &[e, c] : terms_) {
        s.add_term(e, c);
    }
    return s;
}

TimesSeries &TimesSeries::operator+=(const TimesSeries &o)
{
    if (o.times_ != times_ || o.two_sided_ != two_sided_) {
        throw BadArgument("time series over different variables");
    }
    if (o.bound_ < bound_) {
        *this = truncated(o.bound_);
    }
    for (const auto &[e, c] : o.terms_) {
        add_term(e, c);
    }
    return *this;
}

TimesSeries &TimesSeries::operator-=(const TimesSeries &o)
{
    return *this += -o;
}

TimesSeries TimesSeries::operator-() const
{
    TimesSeries s = *this;
    for (auto &[e, c] : s.terms_) {
        c = -c;
    }
    return s;
}

TimesSeries operator*(const TimesSeries &a, const TimesSeries &b)
{
    if (a.times_ != b.times_ || a.two_sided_ != b.two_sided_) {
        throw BadArgument("time series over different variables");
    }
    int bound = std::min(a.bound_ + b.valuation(), b.bound_ + a.valuation());
    TimesSeries out(a.times_, bound, a.two_sided_);
    std::vector<std::pair<const TimesSeries::Exponents *, int>> bw;
    bw.reserve(b.terms_.size());
    for (const auto &[e, c] : b.terms_) {
        bw.emplace_back(&e, b.weight(e));
    }
    TimesSeries::Exponents sum(static_cast<std::size_t>(a.variable_count()));
    for (const auto &[ea, ca] : a.terms_) {
        int wa = a.weight(ea);
        std::size_t idx = 0;
        for (const auto &[eb, cb] : b.terms_) {
            int wb = bw[idx++].second;
            if (wa + wb > bound) {
                continue;
            }
            for (std::size_t i = 0; i < sum.size(); ++i) {
                sum[i] = ea[i] + eb[i];
            }
            out.add_term(sum, ca * cb);
        }
    }
    return out;
}

TimesSeries &TimesSeries::scale(const Rational &s)
{
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[e, c] : terms_) {
        c *= s;
    }
    return *this;
}

TimesSeries TimesSeries::derivative(int k, bool primed) const
{
    int idx = index_of(k, primed);
    TimesSeries out(times_, bound_ - k, two_sided_);
    for (const auto &[e, c] : terms_) {
        int p = e[static_cast<std::size_t>(idx)];
        if (p == 0) {
            continue;
        }
        Exponents f = e;
        f[static_cast<std::size_t>(idx)] = p - 1;
        out.add_term(f, c * Rational(p));
    }
    return out;
}

TimesSeries TimesSeries::exp() const
{
    if (!constant_term().is_zero()) {
        throw BadArgument("exp of a time series requires a zero constant term");
    }
    TimesSeries out = constant(Rational(1), times_, bound_, two_sided_);
    TimesSeries power = out;
    for (int m = 1; m <= bound_; ++m) {
        power = power * *this;
        power.scale(Rational(1, m));
        if (power.is_zero()) {
            break;
        }
        out += power;
    }
    return out;
}

TimesSeries TimesSeries::inverse() const
{
    Rational c0 = constant_term();
    if (c0.is_zero()) {
        throw NotInvertible("time series with zero constant term");
    }
    // 1/(c0 (1 + x)) = c0^{-1} sum (-x)^m
    TimesSeries x = *this;
    x.scale(Rational(1) / c0);
    x -= constant(Rational(1), times_, bound_, two_sided_);
    TimesSeries out = constant(Rational(1), times_, bound_, two_sided_);
    TimesSeries power = out;
    for (int m = 1; m <= bound_; ++m) {
        power = power * (-x);
        if (power.is_zero()) {
            break;
        }
        out += power;
    }
    out.scale(Rational(1) / c0);
    return out;
}

bool TimesSeries::agrees(const TimesSeries &o) const
{
    int b = std::min(bound_, o.bound_);
    return (truncated(b) - o.truncated(b)).is_zero();
}

bool TimesSeries::vanishes_through(int d) const
{
    return std::all_of(terms_.begin(), terms_.end(), [&](const auto &kv) { return weight(kv.first) > d; });
}

TimesSeries TimesSeries::restrict_primed_to_zero() const
{
    TimesSeries out(times_, bound_, false);
    for (const auto &[e, c] : terms_) {
        bool primed = false;
        if (two_sided_) {
            for (int i = times_; i < 2 * times_; ++i) {
                primed = primed || e[static_cast<std::size_t>(i)] != 0;
            }
        }
        if (!primed) {
            out.add_term(Exponents(e.begin(), e.begin() + times_), c);
        }
    }
    return out;
}

std::string TimesSeries::var_name(int var) const
{
    int k = var % times_ + 1;
    return var >= times_ ? "t'" + std::to_string(k) : "t" + std::to_string(k);
}

std::string TimesSeries::str() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, c] : terms_) {
        os << (first ? "" : " + ") << "(" << c << ")";
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] != 0) {
                os << "*" << var_name(static_cast<int>(i));
                if (e[i] != 1) {
                    os << "^" << e[i];
                }
            }
        }
        first = false;
    }
    if (first) {
        os << "0";
    }
    os << " + O(deg " << bound_ + 1 << ")";
    return os.str();
}

} // namespace opergr
