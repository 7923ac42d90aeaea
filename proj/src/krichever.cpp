#include "opergr/krichever.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "opergr/errors.hpp"

namespace opergr {

int krichever_required_order(const KricheverOptions &opt, int n)
{
    // k_m needs Taylor coefficients up to hi - 1 - lo - m, and costs about m derivatives of q.
    return 2 * (opt.hi - opt.lo) + 2 * n + 4;
}

Series raise_order(const Series &s, int order)
{
    if (order <= s.order()) {
        return s;
    }
    std::vector<Rational> c(s.coeffs().begin(), s.coeffs().end());
    return Series(s.pole(), std::move(c), order, s.pole_floor());
}

namespace {

Series solve_dressing_ode(int n, const Series &q1, const Series &e, const Rational &initial)
{
    // n k' - q1 k = -e with k(0) = initial, coefficient by coefficient.
    if (e.order() <= 0 || q1.order() <= 0) {
        throw TruncationExhausted("dressing coefficients are known to no order");
    }
    if (e.valuation() < 0 || q1.valuation() < 0) {
        throw BadArgument("dressing needs pole-free coefficients");
    }
    int order = std::min(e.order(), q1.order()) + 1;
    std::vector<Rational> k(static_cast<std::size_t>(std::max(order, 1)));
    k[0] = initial;
    for (int j = 0; j + 1 < order; ++j) {
        Rational rhs = -e.coeff(j);
        for (int i = 0; i <= j; ++i) {
            rhs += q1.coeff(j - i) * k[static_cast<std::size_t>(i)];
        }
        k[static_cast<std::size_t>(j + 1)] = rhs / Rational(n * (j + 1));
    }
    return Series(0, std::move(k), order, e.pole_floor());
}

} // namespace

PsiDO dressing(const PsiDO &l, int n, int lowest)
{
    auto top = l.top();
    if (!top || *top != n || !l.exact_tail()) {
        throw NotMonic("dressing needs an exact monic operator of order " + std::to_string(n));
    }
    const Series &lead = *l.find(n);
    if (!lead.agrees(constant_like(lead, Rational(1)))) {
        throw NotMonic("leading coefficient is not 1");
    }
    Series zero = constant_like(lead, Rational());
    Series q1 = -l.coeff(n - 1, zero);
    // k_0 = exp(int q_1 / n) absorbs the d^{n-1} term; it is 1 when q_1 = 0.
    PsiDO k = PsiDO::d_power(0, solve_dressing_ode(n, q1, zero, Rational(1)), std::min(lowest, l.floor()));
    for (int m = 1; m <= -lowest; ++m) {
        auto e = PsiDO::compose_at(l, k, n - 1 - m);
        Series em = e ? *e : zero;
        k.set(-m, solve_dressing_ode(n, q1, em, Rational()));
    }
    k.set_depth(lowest);
    return k;
}

PsiDO dressing(const ScalarOper &s, int lowest)
{
    return dressing(s.to_psido(lowest), s.n, lowest);
}

std::vector<std::vector<Rational>> krichever_frame(const PsiDO &l_in, int n, const KricheverOptions &opt)
{
    int span = opt.hi - 1 - opt.lo;
    PsiDO l = l_in;
    if (opt.exact_input) {
        int order = krichever_required_order(opt, n);
        PsiDO raised(l.floor());
        for (const auto &[i, c] : l.terms()) {
            raised.set(i, raise_order(c, order));
        }
        l = raised;
    }
    std::vector<std::vector<Rational>> frame;
    try {
        PsiDO k = dressing(l, n, -std::max(span, 1));
        for (int j = 0; j < opt.hi; ++j) {
            std::vector<Rational> col(static_cast<std::size_t>(opt.hi - opt.lo));
            // d^j k_m d^{-m} = sum_l C(j,l) k_m^{(l)} d^{j-m-l}; at t = 0, k^{(l)}(0) = l! coeff_l.
            for (const auto &[ord, km] : k.terms()) {
                int m = -ord;
                for (int ll = 0; ll <= j; ++ll) {
                    int e = j - m - ll;
                    if (e < opt.lo) {
                        break;
                    }
                    Rational c = km.coeff(ll);
                    if (c.is_zero()) {
                        continue;
                    }
                    col[static_cast<std::size_t>(e - opt.lo)] += binomial(j, ll) * factorial(ll) * c;
                }
            }
            frame.push_back(std::move(col));
        }
    } catch (const TruncationExhausted &e) {
        throw WindowOverflow(std::string("series truncation too short for the window: ") + e.what());
    } catch (const TailOverflow &e) {
        throw WindowOverflow(std::string("dressing depth too short for the window: ") + e.what());
    }
    return frame;
}

GrassPoint krichever_point(const PsiDO &l, int n, const KricheverOptions &opt)
{
    return grass_window(krichever_frame(l, n, opt), opt.lo, opt.hi);
}

std::vector<std::vector<Rational>> krichever_frame(const ScalarOper &s, const KricheverOptions &opt)
{
    int span = opt.hi - 1 - opt.lo;
    return krichever_frame(s.to_psido(-std::max(span, 1)), s.n, opt);
}

GrassPoint krichever_point(const ScalarOper &s, const KricheverOptions &opt)
{
    return grass_window(krichever_frame(s, opt), opt.lo, opt.hi);
}

// ---- Burchnall-Chaundy ----

std::string SpectralRelation::str() const
{
    std::ostringstream os;
    bool first = true;
    // highest weight first
    std::vector<std::pair<std::pair<int, int>, Rational>> terms(coeffs.begin(), coeffs.end());
    std::stable_sort(terms.begin(), terms.end(), [&](const auto &x, const auto &y) {
        int wx = x.first.first * ord_p + x.first.second * ord_q;
        int wy = y.first.first * ord_p + y.first.second * ord_q;
        return wx != wy ? wx > wy : x.first.second > y.first.second;
    });
    for (const auto &[ab, c] : terms) {
        auto [a, b] = ab;
        Rational mag = c.sign() < 0 ? -c : c;
        os << (first ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + "));
        bool unit = mag.is_one() && (a > 0 || b > 0);
        if (!unit) {
            os << mag;
        }
        auto var = [&](const char *name, int e, bool need_star) {
            if (e == 0) {
                return;
            }
            if (need_star) {
                os << "*";
            }
            os << name;
            if (e > 1) {
                os << "^" << e;
            }
        };
        var("x", a, !unit);
        var("y", b, !unit || a > 0);
        first = false;
    }
    return first ? "0" : os.str();
}

namespace {

PsiDO identity_like(const PsiDO &p)
{
    return PsiDO::d_power(0, constant_like(detail::some_coeff(p), Rational(1)), p.floor());
}

PsiDO power_or_one(const PsiDO &p, int a)
{
    return a == 0 ? identity_like(p) : pdo_power(p, a);
}

} // namespace

PsiDO evaluate_relation(const SpectralRelation &f, const PsiDO &p, const PsiDO &q)
{
    PsiDO acc(p.floor());
    for (const auto &[ab, c] : f.coeffs) {
        acc += PsiDO::compose(power_or_one(p, ab.first), power_or_one(q, ab.second)) * c;
    }
    return acc;
}

std::optional<SpectralRelation> bc_relation(const PsiDO &p, const PsiDO &q, int bound)
{
    if (!p.is_differential() || !q.is_differential()) {
        throw BadArgument("spectral relations are searched for differential operators");
    }
    auto tp = p.top();
    auto tq = q.top();
    if (!tp || !tq || *tp < 1 || *tq < 1) {
        throw BadArgument("P and Q must have positive order");
    }
    if (!pdo_commutator(p, q).is_zero()) {
        throw NotCommuting("[P, Q] is not zero");
    }
    std::vector<std::pair<int, int>> monos;
    for (int a = 0; a * *tp <= bound; ++a) {
        for (int b = 0; a * *tp + b * *tq <= bound; ++b) {
            monos.emplace_back(a, b);
        }
    }
    std::stable_sort(monos.begin(), monos.end(), [&](const auto &x, const auto &y) {
        int wx = x.first * *tp + x.second * *tq;
        int wy = y.first * *tp + y.second * *tq;
        return wx != wy ? wx < wy : x.second < y.second;
    });
    std::vector<PsiDO> ops;
    int known = std::numeric_limits<int>::max();
    int low = 0;
    for (const auto &[a, b] : monos) {
        ops.push_back(PsiDO::compose(power_or_one(p, a), power_or_one(q, b)));
        for (const auto &[i, c] : ops.back().terms()) {
            known = std::min(known, c.order());
            low = std::min(low, c.valuation() < c.order() ? c.valuation() : low);
        }
    }
    // Flatten each operator to its coefficients (d-order, t-power) with t-power below the common order.
    std::map<std::pair<int, int>, std::size_t> slot;
    std::vector<std::map<std::pair<int, int>, Rational>> flat;
    for (const auto &op : ops) {
        std::map<std::pair<int, int>, Rational> v;
        for (const auto &[i, c] : op.terms()) {
            for (int k = std::min(low, c.pole()); k < known; ++k) {
                Rational x = c.coeff(k);
                if (!x.is_zero()) {
                    v[{i, k}] = x;
                    slot.emplace(std::make_pair(i, k), 0);
                }
            }
        }
        flat.push_back(std::move(v));
    }
    std::size_t idx = 0;
    for (auto &[key, s] : slot) {
        s = idx++;
    }
    // Incremental test: is monomial r in the span of monomials 0..r-1?
    for (std::size_t r = 1; r < ops.size(); ++r) {
        // Columns are monomials 0..r; nullspace of [v_0 .. v_r].
        Mat<Rational> m = zero_matrix<Rational>(slot.size(), r + 1);
        for (std::size_t c = 0; c <= r; ++c) {
            for (const auto &[key, x] : flat[c]) {
                m[slot.at(key)][c] = x;
            }
        }
        auto null = nullspace(m, r + 1);
        if (null.empty()) {
            continue;
        }
        // Earlier monomials are independent, so the kernel is one-dimensional with v[r] != 0.
        const auto &v = null.front();
        SpectralRelation f;
        f.ord_p = *tp;
        f.ord_q = *tq;
        Rational norm = Rational(1) / v[r];
        for (std::size_t c = 0; c <= r; ++c) {
            if (!v[c].is_zero()) {
                f.coeffs[monos[c]] = v[c] * norm;
            }
        }
        return f;
    }
    return std::nullopt;
}

// ---- affine flags ----

FlagInvariants check_flag(const AffineFlagPoint &f)
{
    FlagInvariants inv;
    int n = f.n;
    if (static_cast<int>(f.chain.size()) != n + 1 || n < 1) {
        return inv;
    }
    inv.virtual_dimensions = true;
    for (int i = 0; i <= n; ++i) {
        if (f.chain[static_cast<std::size_t>(i)].virtdim != i - n) {
            inv.virtual_dimensions = false;
        }
    }
    inv.nested = true;
    for (int i = 1; i <= n && inv.nested; ++i) {
        const GrassPoint &small = f.chain[static_cast<std::size_t>(i - 1)];
        const GrassPoint &big = f.chain[static_cast<std::size_t>(i)];
        for (std::size_t c = 0; c < small.columns.size(); ++c) {
            if (!contains(big, small.columns[c], small.lo)) {
                inv.nested = false;
                break;
            }
        }
    }
    const GrassPoint &w0 = f.chain.front();
    const GrassPoint &wn = f.chain.back();
    inv.periodic = true;
    std::size_t shifted = 0;
    auto piv = wn.pivots();
    for (std::size_t c = 0; c < wn.columns.size(); ++c) {
        if (piv[c] + n >= wn.hi) {
            continue;
        }
        ++shifted;
        if (!contains(w0, shift_column(wn, c, n), wn.lo + n)) {
            inv.periodic = false;
        }
    }
    if (shifted != w0.columns.size()) {
        inv.periodic = false;
    }
    return inv;
}

AffineFlagPoint miura_to_flag(const MiuraOper &m_in, const KricheverOptions &opt)
{
    int n = m_in.n;
    if (n < 1 || static_cast<int>(m_in.chi.size()) != n) {
        throw BadMiuraInput("Miura data must list n factors");
    }
    MiuraOper m = m_in;
    if (opt.exact_input) {
        int order = krichever_required_order(opt, n) + n;
        for (auto &c : m.chi) {
            c = raise_order(c, order);
        }
    }
    GaugeReduction red = gauge_reduce_full(bidiagonal(m));

    // W_n on a window reaching n further down, so that z^n W_n is exact on [lo, hi).
    KricheverOptions wide = opt;
    wide.lo = opt.lo - n;
    wide.exact_input = false;
    auto psi = krichever_frame(red.oper, wide); // psi[j] has leading term z^j
    auto restrict_col = [&](const std::vector<Rational> &col) {
        return std::vector<Rational>(col.begin() + n, col.end());
    };

    std::vector<std::vector<Rational>> base; // z^n W_n
    for (int j = 0; j + n < opt.hi; ++j) {
        std::vector<Rational> col(static_cast<std::size_t>(opt.hi - opt.lo));
        for (int e = wide.lo; e + n < opt.hi; ++e) {
            col[static_cast<std::size_t>(e + n - opt.lo)] = psi[static_cast<std::size_t>(j)][static_cast<std::size_t>(e - wide.lo)];
        }
        base.push_back(std::move(col));
    }

    // Column c of g_inv(0), read against psi_{n-1} .. psi_0, gives the c-th flag vector.
    AffineFlagPoint f;
    f.n = n;
    for (int i = 0; i <= n; ++i) {
        std::vector<std::vector<Rational>> frame = base;
        for (int c = 0; c < i; ++c) {
            std::vector<Rational> v(static_cast<std::size_t>(opt.hi - opt.lo));
            for (int k = 1; k <= n; ++k) {
                Rational g = red.g_inv[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(c)].coeff(0);
                if (g.is_zero()) {
                    continue;
                }
                auto col = restrict_col(psi[static_cast<std::size_t>(n - k)]);
                for (std::size_t e = 0; e < v.size(); ++e) {
                    v[e] += g * col[e];
                }
            }
            frame.push_back(std::move(v));
        }
        f.chain.push_back(grass_window(frame, opt.lo, opt.hi));
    }
    FlagInvariants inv = check_flag(f);
    if (!inv.ok()) {
        throw InternalError(std::string("Miura flag violates the affine flag axioms:") +
                            (inv.virtual_dimensions ? "" : " virtual dimension") + (inv.nested ? "" : " nesting") +
                            (inv.periodic ? "" : " periodicity"));
    }
    return f;
}

GrassPoint flag_to_grass(const AffineFlagPoint &f)
{
    if (f.chain.empty()) {
        throw BadArgument("empty flag");
    }
    return f.chain.back();
}

MainCheckReport main_theorem_check(const MiuraOper &m, const KricheverOptions &opt, int degree, bool parallel,
                                   const AffineFlagPoint *flag)
{
    MainCheckReport rep;
    rep.degree = degree;
    rep.lo = opt.lo;
    rep.hi = opt.hi;
    int n = m.n;
    rep.order = opt.exact_input ? krichever_required_order(opt, n) + n : working_order(m.chi, 0);

    AffineFlagPoint f = flag ? *flag : miura_to_flag(m, opt);
    rep.flag_valid = check_flag(f).ok();
    GrassPoint from_flag = flag_to_grass(f);

    ScalarOper s = miura_transform(m);
    if (opt.exact_input) {
        for (auto &q : s.q) {
            q = raise_order(q, krichever_required_order(opt, n));
        }
    }
    KricheverOptions direct = opt;
    direct.exact_input = false;
    GrassPoint w = krichever_point(s, direct);

    auto launch = [&](auto fn) {
        return std::async(parallel ? std::launch::async : std::launch::deferred, fn);
    };
    auto fa = launch([&] { return same_point(from_flag, w); });
    auto grass_tau = launch([&] { return tau_schur(w, degree); });
    TimesSeries tau = grass_tau.get();
    auto fb = launch([&] { return hirota_residual(tau).is_zero(); });
    auto fc = launch([&] { return n_reduction_holds(tau, n); });
    auto fd = launch([&] {
        AnnihilatorSpec spec;
        spec.max_order = 2;
        spec.max_degree = 0;
        spec.derivative_times = {1, std::min(2, tau.times())};
        if (spec.derivative_times[0] == spec.derivative_times[1]) {
            spec.derivative_times.pop_back();
        }
        auto grass_side = annihilator_basis(tau, spec);
        TimesSeries flag_tau = from_flag.virtdim == 0 ? tau_correlator(from_flag, degree) : TimesSeries();
        if (from_flag.virtdim != 0) {
            return std::make_tuple(false, grass_side.size(), std::size_t{0});
        }
        auto flag_side = annihilator_basis(flag_tau, spec);
        return std::make_tuple(span_contains(flag_side, grass_side), grass_side.size(), flag_side.size());
    });
    rep.round_trip = fa.get();
    rep.hirota = fb.get();
    rep.reduction = fc.get();
    auto [ok, gcount, fcount] = fd.get();
    rep.annihilators = ok;
    rep.grass_annihilators = gcount;
    rep.flag_annihilators = fcount;
    return rep;
}

} // namespace opergr
