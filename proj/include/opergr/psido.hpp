#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "opergr/dual.hpp"
#include "opergr/errors.hpp"
#include "opergr/series.hpp"

namespace opergr {

/// Marks an operator whose terms below the lowest stored order are exactly zero.
inline constexpr int kExactTail = std::numeric_limits<int>::min() / 4;

/// Microdifferential operator sum_i a_i(t) d^i with coefficients left of d.
///
/// `floor` is the working depth: infinite expansions are cut there. `depth`
/// is the smallest order that is actually trusted (>= floor), or kExactTail
/// when nothing below the stored terms is missing.
template <class C>
class BasicPsiDO {
public:
    using Coeff = C;
    using Terms = std::map<int, C, std::greater<int>>;

    explicit BasicPsiDO(int floor = -8) : floor_(floor) {}

    /// d^k with the given unit coefficient.
    static BasicPsiDO d_power(int k, const C &one, int floor)
    {
        BasicPsiDO out(floor);
        out.terms_.emplace(k, one);
        return out;
    }
    static BasicPsiDO multiplication(const C &a, int floor)
    {
        BasicPsiDO out(floor);
        out.terms_.emplace(0, a);
        return out;
    }

    const Terms &terms() const { return terms_; }
    int floor() const { return floor_; }
    int depth() const { return depth_; }
    bool exact_tail() const { return depth_ == kExactTail; }
    /// Lowest order still trusted; for exact tails, the working floor.
    int trusted_depth() const { return exact_tail() ? std::min(floor_, lowest_stored()) : depth_; }

    bool is_zero() const
    {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto &kv) { return opergr::is_zero(kv.second); });
    }
    /// Highest order with a nonzero coefficient; nullopt for the zero operator.
    std::optional<int> top() const
    {
        for (const auto &[i, c] : terms_) {
            if (!opergr::is_zero(c)) {
                return i;
            }
        }
        return std::nullopt;
    }
    int lowest_stored() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
    bool is_differential() const
    {
        if (!exact_tail()) {
            return false;
        }
        return std::all_of(terms_.begin(), terms_.end(),
                           [](const auto &kv) { return kv.first >= 0 || opergr::is_zero(kv.second); });
    }

    const C *find(int order) const
    {
        auto it = terms_.find(order);
        return it == terms_.end() ? nullptr : &it->second;
    }
    /// Coefficient at `order`; throws TailOverflow when that order is not trusted.
    C coeff(int order, const C &zero) const
    {
        if (!exact_tail() && order < depth_) {
            throw TailOverflow("order " + std::to_string(order) + " lies below the trusted depth " +
                               std::to_string(depth_));
        }
        const C *c = find(order);
        return c ? *c : zero;
    }

    void set(int order, C c)
    {
        if (!exact_tail() && order < depth_) {
            return;
        }
        terms_.insert_or_assign(order, std::move(c));
    }
    void add(int order, const C &c)
    {
        if (!exact_tail() && order < depth_) {
            return;
        }
        auto it = terms_.find(order);
        if (it == terms_.end()) {
            terms_.emplace(order, c);
        } else {
            it->second += c;
        }
    }
    void erase(int order) { terms_.erase(order); }

    /// Declares everything below `depth` untrusted and drops it.
    void set_depth(int depth)
    {
        depth_ = depth;
        if (depth_ != kExactTail) {
            for (auto it = terms_.begin(); it != terms_.end();) {
                it = it->first < depth_ ? terms_.erase(it) : std::next(it);
            }
        }
    }
    void set_floor(int floor) { floor_ = floor; }

    BasicPsiDO &operator+=(const BasicPsiDO &o)
    {
        int d = combine_depth_add(depth_, o.depth_);
        floor_ = std::min(floor_, o.floor_);
        set_depth(d);
        for (const auto &[i, c] : o.terms_) {
            add(i, c);
        }
        return *this;
    }
    BasicPsiDO &operator-=(const BasicPsiDO &o) { return *this += -o; }
    friend BasicPsiDO operator+(BasicPsiDO a, const BasicPsiDO &b) { return a += b; }
    friend BasicPsiDO operator-(BasicPsiDO a, const BasicPsiDO &b) { return a -= b; }
    BasicPsiDO operator-() const
    {
        BasicPsiDO out = *this;
        for (auto &[i, c] : out.terms_) {
            c = -c;
        }
        return out;
    }
    friend BasicPsiDO operator*(BasicPsiDO a, const Rational &s)
    {
        for (auto &[i, c] : a.terms_) {
            c = c * s;
        }
        return a;
    }

    /// Left multiplication by a function: a * sum c_i d^i.
    BasicPsiDO left_multiplied(const C &a) const
    {
        BasicPsiDO out = *this;
        for (auto &[i, c] : out.terms_) {
            c = a * c;
        }
        return out;
    }

    /// Drops every term of order below `lowest` and marks them untrusted.
    BasicPsiDO cut_below(int lowest) const
    {
        BasicPsiDO out = *this;
        if (out.exact_tail() || out.depth_ < lowest) {
            out.set_depth(lowest);
        }
        return out;
    }

    /// Operator product, keeping only orders >= lowest (and >= the working floor).
    static BasicPsiDO compose(const BasicPsiDO &a, const BasicPsiDO &b,
                              int lowest = std::numeric_limits<int>::min())
    {
        BasicPsiDO out(std::min(a.floor_, b.floor_));
        auto ta = a.top();
        auto tb = b.top();
        bool finite = a.exact_tail() && b.exact_tail() &&
                      std::all_of(a.terms_.begin(), a.terms_.end(), [](const auto &kv) { return kv.first >= 0; });
        int depth = kExactTail;
        if (!finite) {
            int trusted = std::numeric_limits<int>::min();
            if (!a.exact_tail() && tb) {
                trusted = std::max(trusted, a.depth_ + *tb);
            }
            if (!b.exact_tail() && ta) {
                trusted = std::max(trusted, b.depth_ + *ta);
            }
            depth = std::max(trusted, out.floor_);
        }
        if (lowest != std::numeric_limits<int>::min() && (depth == kExactTail || depth < lowest)) {
            depth = lowest;
        }
        out.depth_ = depth;
        int cut = depth == kExactTail ? std::numeric_limits<int>::min() : depth;

        for (const auto &[j, bj] : b.terms_) {
            std::vector<C> derivs{bj};
            for (const auto &[i, ai] : a.terms_) {
                if (opergr::is_zero(ai)) {
                    continue;
                }
                for (long k = 0;; ++k) {
                    long m = static_cast<long>(i) + j - k;
                    if (m < cut || (i >= 0 && k > i)) {
                        break;
                    }
                    while (static_cast<long>(derivs.size()) <= k) {
                        derivs.push_back(derivative(derivs.back()));
                    }
                    const C &dk = derivs[static_cast<std::size_t>(k)];
                    C term = ai * dk;
                    if (k > 0) {
                        term = term * binomial(i, k);
                    }
                    auto it = out.terms_.find(static_cast<int>(m));
                    if (it == out.terms_.end()) {
                        out.terms_.emplace(static_cast<int>(m), std::move(term));
                    } else {
                        it->second += term;
                    }
                }
            }
        }
        return out;
    }

    /// The single coefficient of d^m in a*b (no truncation bookkeeping).
    static std::optional<C> compose_at(const BasicPsiDO &a, const BasicPsiDO &b, int m)
    {
        std::optional<C> acc;
        for (const auto &[j, bj] : b.terms_) {
            std::vector<C> derivs{bj};
            for (const auto &[i, ai] : a.terms_) {
                long k = static_cast<long>(i) + j - m;
                if (k < 0 || (i >= 0 && k > i) || opergr::is_zero(ai)) {
                    continue;
                }
                while (static_cast<long>(derivs.size()) <= k) {
                    derivs.push_back(derivative(derivs.back()));
                }
                C term = ai * derivs[static_cast<std::size_t>(k)];
                if (k > 0) {
                    term = term * binomial(i, k);
                }
                if (acc) {
                    *acc += term;
                } else {
                    acc = std::move(term);
                }
            }
        }
        return acc;
    }

    BasicPsiDO plus_part() const
    {
        BasicPsiDO out(floor_);
        for (const auto &[i, c] : terms_) {
            if (i >= 0) {
                out.terms_.emplace(i, c);
            }
        }
        if (!exact_tail() && depth_ > 0) {
            throw TailOverflow("positive part requested but order " + std::to_string(depth_ - 1) + " is untrusted");
        }
        return out;
    }
    BasicPsiDO minus_part() const
    {
        BasicPsiDO out(floor_);
        out.depth_ = depth_;
        for (const auto &[i, c] : terms_) {
            if (i < 0) {
                out.terms_.emplace(i, c);
            }
        }
        return out;
    }

    /// Coefficientwise agreement on every order trusted by both operators.
    friend bool agrees(const BasicPsiDO &a, const BasicPsiDO &b)
    {
        int d = std::max(a.exact_tail() ? std::numeric_limits<int>::min() : a.depth_,
                         b.exact_tail() ? std::numeric_limits<int>::min() : b.depth_);
        for (const auto &[i, c] : a.terms_) {
            if (i < d) {
                continue;
            }
            const C *o = b.find(i);
            if (o ? !opergr::agrees(c, *o) : !opergr::is_zero(c)) {
                return false;
            }
        }
        for (const auto &[i, c] : b.terms_) {
            if (i >= d && !a.find(i) && !opergr::is_zero(c)) {
                return false;
            }
        }
        return true;
    }

private:
    static int combine_depth_add(int x, int y)
    {
        if (x == kExactTail) {
            return y;
        }
        if (y == kExactTail) {
            return x;
        }
        return std::max(x, y);
    }

    int floor_ = -8;
    int depth_ = kExactTail;
    Terms terms_;
};

using PsiDO = BasicPsiDO<Series>;
using DualSeries = Dual<Series>;
using DualPsiDO = BasicPsiDO<DualSeries>;

template <class C>
BasicPsiDO<C> pdo_compose(const BasicPsiDO<C> &a, const BasicPsiDO<C> &b)
{
    return BasicPsiDO<C>::compose(a, b);
}

template <class C>
std::pair<BasicPsiDO<C>, BasicPsiDO<C>> pdo_split(const BasicPsiDO<C> &a)
{
    return {a.plus_part(), a.minus_part()};
}

template <class C>
BasicPsiDO<C> pdo_commutator(const BasicPsiDO<C> &a, const BasicPsiDO<C> &b)
{
    return BasicPsiDO<C>::compose(a, b) - BasicPsiDO<C>::compose(b, a);
}

namespace detail {

template <class C>
const C &some_coeff(const BasicPsiDO<C> &a)
{
    if (a.terms().empty()) {
        throw BadArgument("operator carries no coefficient regime");
    }
    return a.terms().begin()->second;
}

template <class C>
bool is_one(const C &c)
{
    return agrees(c, constant_like(c, Rational(1)));
}

} // namespace detail

template <class C>
C pdo_residue(const BasicPsiDO<C> &a)
{
    C zero = constant_like(detail::some_coeff(a), Rational());
    return a.coeff(-1, zero);
}

/// a^r for r >= 1, keeping orders >= lowest.
template <class C>
BasicPsiDO<C> pdo_power(const BasicPsiDO<C> &a, int r, int lowest = std::numeric_limits<int>::min())
{
    if (r < 1) {
        throw BadArgument("power must be positive");
    }
    auto top = a.top();
    int t = top ? *top : 0;
    BasicPsiDO<C> out = a;
    for (int j = 2; j <= r; ++j) {
        int need = lowest == std::numeric_limits<int>::min() ? lowest : lowest - (r - j) * std::max(t, 0);
        out = BasicPsiDO<C>::compose(out, a, need);
    }
    if (r == 1 && lowest != std::numeric_limits<int>::min()) {
        out = out.cut_below(lowest);
    }
    return out;
}

/// The monic n-th root R = d + r_0 + r_{-1} d^{-1} + ... with R^n = L.
///
/// Each coefficient is fixed algebraically: the d^{n-1+m} coefficient of R^n
/// equals n r_m plus terms in r_0 .. r_{m+1}.
template <class C>
BasicPsiDO<C> pdo_nth_root(const BasicPsiDO<C> &l, int n)
{
    if (n <= 0) {
        throw BadArgument("root index must be positive");
    }
    auto top = l.top();
    if (!top || *top != n) {
        throw NotMonic("operator order differs from the root index " + std::to_string(n));
    }
    const C &lead = *l.find(n);
    if (!detail::is_one(lead)) {
        throw NotMonic("leading coefficient is not exactly 1");
    }
    int floor = l.floor();
    int depth = floor;
    if (!l.exact_tail()) {
        depth = std::max(depth, l.depth() - n + 1);
    }
    C one = constant_like(lead, Rational(1));
    C zero = constant_like(lead, Rational());
    BasicPsiDO<C> root = BasicPsiDO<C>::d_power(1, one, floor);
    if (n == 1) {
        root = l;
        return root;
    }
    Rational inv_n = Rational(1, n);
    for (int m = 0; m >= depth; --m) {
        int target = n - 1 + m;
        BasicPsiDO<C> p = pdo_power(root, n, target);
        const C *lc = l.find(target);
        const C *pc = p.find(target);
        C r = (lc ? *lc : zero) - (pc ? *pc : zero);
        root.set(m, r * inv_n);
    }
    root.set_depth(depth);
    return root;
}

template <class C>
std::string pdo_str(const BasicPsiDO<C> &a);

template <>
inline std::string pdo_str(const PsiDO &a)
{
    std::ostringstream os;
    bool first = true;
    for (const auto &[i, c] : a.terms()) {
        if (c.is_zero()) {
            continue;
        }
        os << (first ? "" : " + ") << "(" << c.str() << ")";
        if (i != 0) {
            os << "*d^" << i;
        }
        first = false;
    }
    if (first) {
        os << "0";
    }
    if (!a.exact_tail()) {
        os << " + O(d^" << a.depth() - 1 << ")";
    }
    return os.str();
}

/// Builds sum_i coeffs[i] d^i (a differential operator with exact tail).
PsiDO differential_operator(const std::vector<Series> &coeffs, int floor);

} // namespace opergr
