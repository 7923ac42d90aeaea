#include "opergr/grassmannian.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "opergr/errors.hpp"
#include "opergr/fock.hpp"

namespace opergr {

std::vector<int> GrassPoint::pivots() const
{
    std::vector<int> out;
    for (const auto &c : columns) {
        int p = lo - 1;
        for (int e = hi - 1; e >= lo; --e) {
            if (!c[static_cast<std::size_t>(e - lo)].is_zero()) {
                p = e;
                break;
            }
        }
        out.push_back(p);
    }
    return out;
}

GrassPoint grass_window(const std::vector<std::vector<Rational>> &frame, int lo, int hi)
{
    if (hi <= lo) {
        throw BadArgument("empty window");
    }
    std::size_t size = static_cast<std::size_t>(hi - lo);
    // Rows ordered by decreasing exponent so that pivots are leading terms.
    Mat<Rational> rows;
    for (const auto &c : frame) {
        if (c.size() != size) {
            throw BadArgument("frame column has " + std::to_string(c.size()) + " entries, window needs " +
                              std::to_string(size));
        }
        rows.emplace_back(c.rbegin(), c.rend());
    }
    std::size_t count = rows.size();
    rref(rows);
    if (rows.size() != count) {
        throw DegenerateFrame("frame columns are linearly dependent");
    }
    GrassPoint w;
    w.lo = lo;
    w.hi = hi;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        w.columns.emplace_back(it->rbegin(), it->rend());
    }
    w.virtdim = static_cast<int>(count) - hi;
    return w;
}

GrassPoint standard_point(int lo, int hi, int shift)
{
    std::vector<std::vector<Rational>> frame;
    for (int k = std::max(shift, lo); k < hi; ++k) {
        std::vector<Rational> c(static_cast<std::size_t>(hi - lo));
        c[static_cast<std::size_t>(k - lo)] = Rational(1);
        frame.push_back(std::move(c));
    }
    return grass_window(frame, lo, hi);
}

bool same_point(const GrassPoint &a, const GrassPoint &b)
{
    return a.lo == b.lo && a.hi == b.hi && a.columns == b.columns;
}

bool contains(const GrassPoint &w, const std::vector<Rational> &v, int from)
{
    Mat<Rational> m;
    for (const auto &c : w.columns) {
        m.emplace_back(c.begin() + (from - w.lo), c.end());
    }
    std::size_t r = rank(m);
    m.emplace_back(v.begin() + (from - w.lo), v.end());
    return rank(m) == r;
}

std::vector<Rational> shift_column(const GrassPoint &w, std::size_t col, int n)
{
    std::vector<Rational> v(static_cast<std::size_t>(w.size()));
    for (int e = w.lo; e < w.hi; ++e) {
        v[static_cast<std::size_t>(e - w.lo)] = w.at(col, e - n);
    }
    return v;
}

bool shift_contained(const GrassPoint &w, int n)
{
    auto piv = w.pivots();
    for (std::size_t j = 0; j < w.columns.size(); ++j) {
        if (piv[j] + n >= w.hi) {
            continue;
        }
        if (!contains(w, shift_column(w, j, n), w.lo + n)) {
            return false;
        }
    }
    return true;
}

GrassPoint restrict_window(const GrassPoint &w, int lo)
{
    std::vector<std::vector<Rational>> frame;
    for (const auto &c : w.columns) {
        frame.emplace_back(c.begin() + (lo - w.lo), c.end());
    }
    return grass_window(frame, lo, w.hi);
}

Rational plucker(const GrassPoint &w, const std::vector<int> &lambda)
{
    if (static_cast<int>(w.columns.size()) != w.hi) {
        throw ChargeMismatch("virtual dimension " + std::to_string(w.virtdim) + " is not 0");
    }
    int len = w.hi;
    if (static_cast<int>(lambda.size()) > len) {
        return Rational();
    }
    Mat<Rational> m = zero_matrix<Rational>(static_cast<std::size_t>(len), static_cast<std::size_t>(len));
    for (int k = 1; k <= len; ++k) {
        int lam = k <= static_cast<int>(lambda.size()) ? lambda[static_cast<std::size_t>(k - 1)] : 0;
        int e = k - 1 - lam;
        if (e < w.lo) {
            return Rational();
        }
        for (int j = 0; j < len; ++j) {
            m[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j)] = w.at(static_cast<std::size_t>(j), e);
        }
    }
    return determinant(m);
}

namespace {

TimesSeries laplace_det(const std::vector<std::vector<TimesSeries>> &m, int times, int bound)
{
    std::size_t n = m.size();
    if (n == 0) {
        return TimesSeries::constant(1, times, bound, m.empty() ? false : m[0][0].two_sided());
    }
    if (n == 1) {
        return m[0][0];
    }
    TimesSeries acc(times, bound, m[0][0].two_sided());
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) {
            continue;
        }
        std::vector<std::vector<TimesSeries>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<TimesSeries> row;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) {
                    row.push_back(m[i][k]);
                }
            }
            minor.push_back(std::move(row));
        }
        TimesSeries term = m[0][j] * laplace_det(minor, times, bound);
        if (j % 2 == 0) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    return acc;
}

std::vector<TimesSeries> generating_coefficients(int times, int bound, bool elementary)
{
    std::vector<TimesSeries> out{TimesSeries::constant(1, times, bound)};
    for (int k = 1; k <= bound; ++k) {
        TimesSeries acc(times, bound);
        for (int i = 1; i <= std::min(k, times); ++i) {
            Rational c(i);
            if (elementary && i % 2 == 0) {
                c = -c;
            }
            acc += TimesSeries::variable(i, false, times, bound, false, c) * out[static_cast<std::size_t>(k - i)];
        }
        out.push_back(acc * Rational(1, k));
    }
    return out;
}

std::vector<int> conjugate(const std::vector<int> &lambda)
{
    std::vector<int> out;
    if (lambda.empty()) {
        return out;
    }
    for (int i = 1; i <= lambda[0]; ++i) {
        int c = 0;
        for (int p : lambda) {
            c += p >= i ? 1 : 0;
        }
        out.push_back(c);
    }
    return out;
}


} // namespace

std::vector<TimesSeries> complete_h(int times, int bound)
{
    return generating_coefficients(times, bound, false);
}

TimesSeries schur_polynomial(const std::vector<int> &lambda, int times, int bound)
{
    if (lambda.empty()) {
        return TimesSeries::constant(1, times, bound);
    }
    // Jacobi-Trudi in whichever of h / e gives the smaller determinant.
    bool dual = static_cast<int>(lambda.size()) > lambda[0];
    std::vector<int> mu = dual ? conjugate(lambda) : lambda;
    auto gen = generating_coefficients(times, bound, dual);
    std::size_t n = mu.size();
    std::vector<std::vector<TimesSeries>> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            int idx = mu[i] - static_cast<int>(i) + static_cast<int>(j);
            m[i].push_back(idx < 0 || idx > bound ? TimesSeries(times, bound) : gen[static_cast<std::size_t>(idx)]);
        }
    }
    return laplace_det(m, times, bound);
}

TimesSeries tau_schur(const GrassPoint &w, int degree)
{
    int times = std::max(degree, 3);
    TimesSeries tau(times, degree);
    Rational top = plucker(w, {});
    for (const auto &lambda : partitions_up_to(degree)) {
        Rational pi = plucker(w, lambda);
        if (!pi.is_zero()) {
            tau += schur_polynomial(lambda, times, degree) * pi;
        }
    }
    return top.is_zero() ? tau : tau * (Rational(1) / top);
}

namespace {

/// Truncated polynomial algebra in t_1..t_T (weight of t_k is k) with dense storage:
/// every monomial of weight <= bound has a fixed slot, and products use a precomputed table.
class GradedAlgebra {
public:
    GradedAlgebra(int times, int bound) : times_(times), bound_(bound)
    {
        TimesSeries::Exponents cur(static_cast<std::size_t>(times), 0);
        std::function<void(int, int)> rec = [&](int v, int left) {
            if (v == times) {
                monos_.push_back(cur);
                return;
            }
            for (int e = 0; (v + 1) * e <= left; ++e) {
                cur[static_cast<std::size_t>(v)] = e;
                rec(v + 1, left - (v + 1) * e);
            }
            cur[static_cast<std::size_t>(v)] = 0;
        };
        rec(0, bound);
        auto weight_of = [&](const TimesSeries::Exponents &m) {
            int wt = 0;
            for (int v = 0; v < times; ++v) {
                wt += (v + 1) * m[static_cast<std::size_t>(v)];
            }
            return wt;
        };
        std::stable_sort(monos_.begin(), monos_.end(),
                         [&](const auto &a, const auto &b) { return weight_of(a) < weight_of(b); });
        std::vector<int> weight;
        for (const auto &m : monos_) {
            slot_.emplace(m, slot_.size());
            weight.push_back(weight_of(m));
        }
        TimesSeries::Exponents sum(static_cast<std::size_t>(times));
        for (std::size_t i = 0; i < monos_.size(); ++i) {
            for (std::size_t j = 0; j < monos_.size(); ++j) {
                if (weight[i] + weight[j] > bound) {
                    continue;
                }
                for (int v = 0; v < times; ++v) {
                    sum[static_cast<std::size_t>(v)] = monos_[i][static_cast<std::size_t>(v)] + monos_[j][static_cast<std::size_t>(v)];
                }
                table_.push_back({i, j, slot_.at(sum)});
            }
        }
    }

    using Elem = std::vector<Rational>;

    std::size_t size() const { return monos_.size(); }
    Elem zero() const { return Elem(monos_.size()); }
    Elem from(const TimesSeries &s) const
    {
        Elem out = zero();
        for (const auto &[e, c] : s.terms()) {
            auto it = slot_.find(e);
            if (it != slot_.end()) {
                out[it->second] = c;
            }
        }
        return out;
    }
    TimesSeries to_series() const { return TimesSeries(times_, bound_); }
    TimesSeries to_series(const Elem &x) const
    {
        TimesSeries out(times_, bound_);
        for (std::size_t i = 0; i < x.size(); ++i) {
            out.add_term(monos_[i], x[i]);
        }
        return out;
    }
    Elem mul(const Elem &a, const Elem &b) const
    {
        Elem out = zero();
        for (const auto &[i, j, k] : table_) {
            if (!a[i].is_zero() && !b[j].is_zero()) {
                out[k] += a[i] * b[j];
            }
        }
        return out;
    }
    /// Inverse of a unit; slots are sorted by weight, so each y[k] only needs earlier slots.
    Elem inverse(const Elem &x) const
    {
        Elem y = zero();
        Rational c0 = Rational(1) / x[0];
        y[0] = c0;
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> into(monos_.size());
        for (const auto &[i, j, k] : table_) {
            if (i != 0) {
                into[k].emplace_back(i, j);
            }
        }
        for (std::size_t k = 1; k < monos_.size(); ++k) {
            Rational s;
            for (const auto &[i, j] : into[k]) {
                if (!x[i].is_zero() && !y[j].is_zero()) {
                    s += x[i] * y[j];
                }
            }
            y[k] = -s * c0;
        }
        return y;
    }
    static bool is_zero(const Elem &x)
    {
        return std::all_of(x.begin(), x.end(), [](const Rational &c) { return c.is_zero(); });
    }

private:
    struct Entry {
        std::size_t i, j, k;
    };
    int times_;
    int bound_;
    std::vector<TimesSeries::Exponents> monos_;
    std::map<TimesSeries::Exponents, std::size_t> slot_;
    std::vector<Entry> table_;
};

} // namespace

TimesSeries tau_correlator(const GrassPoint &w, int degree)
{
    if (static_cast<int>(w.columns.size()) != w.hi) {
        throw ChargeMismatch("virtual dimension " + std::to_string(w.virtdim) + " is not 0");
    }
    int times = std::max(degree, 3);
    auto h = complete_h(times, degree);
    GradedAlgebra alg(times, degree);
    std::vector<GradedAlgebra::Elem> hd;
    for (const auto &hk : h) {
        hd.push_back(alg.from(hk));
    }
    std::size_t n = static_cast<std::size_t>(w.hi);
    std::vector<std::vector<GradedAlgebra::Elem>> m(n, std::vector<GradedAlgebra::Elem>(n, alg.zero()));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t j = 0; j < n; ++j) {
            auto &acc = m[r][j];
            for (int e = w.lo; e <= static_cast<int>(r); ++e) {
                int k = static_cast<int>(r) - e;
                Rational c = w.at(j, e);
                if (k <= degree && !c.is_zero()) {
                    const auto &hk = hd[static_cast<std::size_t>(k)];
                    for (std::size_t s = 0; s < acc.size(); ++s) {
                        if (!hk[s].is_zero()) {
                            acc[s] += hk[s] * c;
                        }
                    }
                }
            }
        }
    }
    // Gaussian elimination with pivots invertible as power series.
    GradedAlgebra::Elem det = alg.zero();
    det[0] = Rational(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c][0].is_zero()) {
            ++p;
        }
        if (p == n) {
            throw DegenerateFrame("the projection to H_+ is singular at t = 0 (top Pluecker coordinate vanishes)");
        }
        if (p != c) {
            std::swap(m[p], m[c]);
            for (auto &x : det) {
                x = -x;
            }
        }
        det = alg.mul(det, m[c][c]);
        GradedAlgebra::Elem inv = alg.inverse(m[c][c]);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (GradedAlgebra::is_zero(m[i][c])) {
                continue;
            }
            GradedAlgebra::Elem f = alg.mul(m[i][c], inv);
            for (std::size_t k = c + 1; k < n; ++k) {
                if (!GradedAlgebra::is_zero(m[c][k])) {
                    auto prod = alg.mul(f, m[c][k]);
                    for (std::size_t s = 0; s < prod.size(); ++s) {
                        m[i][k][s] -= prod[s];
                    }
                }
            }
        }
    }
    Rational norm = Rational(1) / det[0];
    for (auto &x : det) {
        x *= norm;
    }
    return alg.to_series(det);
}

TimesSeries hirota_residual(const TimesSeries &tau)
{
    TimesSeries t1 = tau.derivative(1);
    TimesSeries t11 = t1.derivative(1);
    TimesSeries t111 = t11.derivative(1);
    TimesSeries t1111 = t111.derivative(1);
    TimesSeries t2 = tau.derivative(2);
    TimesSeries t22 = t2.derivative(2);
    TimesSeries t3 = tau.derivative(3);
    TimesSeries t13 = t3.derivative(1);
    TimesSeries r = tau * t1111 - t1 * t111 * Rational(4) + t11 * t11 * Rational(3) + tau * t22 * Rational(3) -
                    t2 * t2 * Rational(3) - tau * t13 * Rational(4) + t1 * t3 * Rational(4);
    return r * Rational(2);
}

bool n_reduction_holds(const TimesSeries &tau, int n)
{
    Rational c0 = tau.constant_term();
    if (c0.is_zero()) {
        return false;
    }
    for (int kn = n; kn <= std::min(tau.bound(), tau.times()); kn += n) {
        TimesSeries::Exponents e(static_cast<std::size_t>(tau.variable_count()), 0);
        e[static_cast<std::size_t>(kn - 1)] = 1;
        Rational c = tau.coeff(e) / c0;
        TimesSeries r = tau.derivative(kn) - tau * c;
        if (!r.vanishes_through(tau.bound() - kn)) {
            return false;
        }
    }
    return true;
}

Rational toda_kernel(const Rational &p, const Rational &q, int cutoff)
{
    Rational acc;
    for (int k = 0; k < cutoff; ++k) {
        acc += q.pow(k) / p.pow(k + 1);
    }
    return acc;
}

Rational toda_kernel_bruteforce(const Rational &p, const Rational &q, int cutoff)
{
    // psi(p) = sum_a psi^+_a p^{-a-1/2}, psi*(q) = sum_b psi^-_b q^{-b-1/2}.
    MayaState vac = MayaState::vacuum();
    Rational acc;
    for (int a2 = -2 * cutoff + 1; a2 < 2 * cutoff; a2 += 2) {
        for (int b2 = -2 * cutoff + 1; b2 < 2 * cutoff; b2 += 2) {
            MayaState s = clifford_apply(Clifford::Plus, a2, clifford_apply(Clifford::Minus, b2, vac));
            Rational c = s.coeff(Maya{0, {}});
            if (!c.is_zero()) {
                acc += c * p.pow((-a2 - 1) / 2) * q.pow((-b2 - 1) / 2);
            }
        }
    }
    return acc;
}

namespace {

TimesSeries xi(const Rational &z, bool primed, int times, int bound)
{
    TimesSeries acc(times, bound, true);
    for (int k = 1; k <= times; ++k) {
        acc += TimesSeries::variable(k, primed, times, bound, true, z.pow(k));
    }
    return acc;
}

} // namespace

TimesSeries toda_tau(const std::vector<TodaPair> &pairs, int degree, int cutoff)
{
    int times = std::max(degree, 3);
    for (const auto &pi : pairs) {
        if (pi.p.is_zero() || pi.q.is_zero()) {
            throw SingularPair("spectral parameters must be nonzero");
        }
        for (const auto &pj : pairs) {
            if (pi.p == pj.q) {
                throw SingularPair("p = q = " + pi.p.str() + " makes the contraction singular");
            }
        }
    }
    std::size_t n = pairs.size();
    if (n == 0) {
        return TimesSeries::constant(1, times, degree, true);
    }
    std::vector<TimesSeries> ep;
    std::vector<TimesSeries> eq;
    for (const auto &pr : pairs) {
        Rational one(1);
        ep.push_back((xi(pr.p, false, times, degree) + xi(one / pr.p, true, times, degree)).exp());
        eq.push_back((-(xi(pr.q, false, times, degree) + xi(one / pr.q, true, times, degree))).exp());
    }
    std::vector<std::vector<TimesSeries>> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Rational k = pairs[i].a * toda_kernel(pairs[i].p, pairs[j].q, cutoff);
            TimesSeries e = ep[i] * eq[j] * k;
            if (i == j) {
                e += TimesSeries::constant(1, times, degree, true);
            }
            m[i].push_back(e);
        }
    }
    return laplace_det(m, times, degree);
}

namespace {

std::vector<TimesSeries::Exponents> monomials(int vars, const std::function<int(int)> &weight, int max_weight,
                                              const std::vector<int> &allowed)
{
    std::vector<TimesSeries::Exponents> out;
    TimesSeries::Exponents cur(static_cast<std::size_t>(vars), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int left) {
        if (idx == allowed.size()) {
            out.push_back(cur);
            return;
        }
        int v = allowed[idx];
        int w = weight(v);
        for (int e = 0; e * w <= left; ++e) {
            cur[static_cast<std::size_t>(v)] = e;
            rec(idx + 1, left - e * w);
        }
        cur[static_cast<std::size_t>(v)] = 0;
    };
    rec(0, max_weight);
    return out;
}

TimesSeries term_action(const TimesSeries::Exponents &mono, const TimesSeries::Exponents &alpha,
                        const TimesSeries &tau)
{
    TimesSeries d = tau;
    for (std::size_t v = 0; v < alpha.size(); ++v) {
        for (int r = 0; r < alpha[v]; ++r) {
            d = d.derivative(static_cast<int>(v) + 1);
        }
    }
    TimesSeries m(tau.times(), tau.bound() + 64);
    m.add_term(mono, Rational(1));
    return m * d;
}

} // namespace

TimesSeries apply_operator(const TimesOperator &op, const TimesSeries &tau)
{
    TimesSeries acc(tau.times(), tau.bound());
    for (const auto &[key, c] : op) {
        acc += term_action(key.first, key.second, tau) * c;
    }
    return acc;
}

std::vector<TimesOperator> annihilator_basis(const TimesSeries &tau, const AnnihilatorSpec &spec)
{
    if (tau.two_sided()) {
        throw BadArgument("annihilators are computed for one-sided taus; restrict t' = 0 first");
    }
    int vars = tau.times();
    auto weight = [&](int v) { return v + 1; };
    std::vector<int> all_vars;
    for (int v = 0; v < vars; ++v) {
        all_vars.push_back(v);
    }
    std::vector<int> dvars;
    for (int k : spec.derivative_times) {
        if (k < 1 || k > vars) {
            throw BadArgument("derivative time t" + std::to_string(k) + " is not present");
        }
        dvars.push_back(k - 1);
    }
    auto coeffs = monomials(vars, weight, spec.max_degree, all_vars);
    auto derivs = monomials(vars, weight, spec.max_order, dvars);
    // Highest derivative weight first, so echelon forms lead with the principal part.
    std::stable_sort(derivs.begin(), derivs.end(), [&](const auto &a, const auto &b) {
        return tau.weight(a) > tau.weight(b);
    });

    std::vector<std::pair<TimesSeries::Exponents, TimesSeries::Exponents>> unknowns;
    std::vector<TimesSeries> images;
    for (const auto &alpha : derivs) {
        for (const auto &mono : coeffs) {
            unknowns.emplace_back(mono, alpha);
            images.push_back(term_action(mono, alpha, tau));
        }
    }
    int verified = tau.bound() - spec.max_order;
    std::map<TimesSeries::Exponents, std::size_t> row_of;
    for (const auto &img : images) {
        for (const auto &[e, c] : img.terms()) {
            if (img.weight(e) <= verified) {
                row_of.emplace(e, 0);
            }
        }
    }
    std::size_t r = 0;
    for (auto &[e, idx] : row_of) {
        idx = r++;
    }
    Mat<Rational> m = zero_matrix<Rational>(row_of.size(), unknowns.size());
    for (std::size_t j = 0; j < images.size(); ++j) {
        for (const auto &[e, c] : images[j].terms()) {
            auto it = row_of.find(e);
            if (it != row_of.end()) {
                m[it->second][j] = c;
            }
        }
    }
    auto null = nullspace(m, unknowns.size());
    rref(null);
    std::vector<TimesOperator> out;
    for (const auto &v : null) {
        TimesOperator op;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (!v[j].is_zero()) {
                op[unknowns[j]] = v[j];
            }
        }
        out.push_back(std::move(op));
    }
    return out;
}

bool span_contains(const std::vector<TimesOperator> &basis, const std::vector<TimesOperator> &sub)
{
    std::map<std::pair<TimesSeries::Exponents, TimesSeries::Exponents>, std::size_t> index;
    for (const auto *family : {&basis, &sub}) {
        for (const auto &op : *family) {
            for (const auto &[k, c] : op) {
                index.emplace(k, index.size());
            }
        }
    }
    auto vec = [&](const TimesOperator &op) {
        std::vector<Rational> v(index.size());
        for (const auto &[k, c] : op) {
            v[index.at(k)] = c;
        }
        return v;
    };
    Mat<Rational> m;
    for (const auto &op : basis) {
        m.push_back(vec(op));
    }
    std::size_t r = rank(m);
    for (const auto &op : sub) {
        m.push_back(vec(op));
    }
    return rank(m) == r;
}

std::string operator_str(const TimesOperator &op, const TimesSeries &like)
{
    std::ostringstream os;
    bool first = true;
    auto name = [&](const TimesSeries::Exponents &e) {
        std::ostringstream s;
        bool any = false;
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) {
                continue;
            }
            s << (any ? "*" : "") << like.var_name(static_cast<int>(v));
            if (e[v] > 1) {
                s << "^" << e[v];
            }
            any = true;
        }
        return any ? s.str() : std::string();
    };
    for (const auto &[key, c] : op) {
        os << (first ? "" : " + ") << "(" << c;
        std::string m = name(key.first);
        if (!m.empty()) {
            os << "*" << m;
        }
        os << ")";
        std::string d = name(key.second);
        if (!d.empty()) {
            os << "*D[" << d << "]";
        }
        first = false;
    }
    return first ? "0" : os.str();
}

} // namespace opergr
