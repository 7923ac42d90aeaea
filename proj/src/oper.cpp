#include "opergr/oper.hpp"

#include <algorithm>

#include "opergr/errors.hpp"

namespace opergr {

int working_order(const std::vector<Series> &s, int fallback)
{
    if (s.empty()) {
        return fallback;
    }
    int o = s.front().order();
    for (const auto &x : s) {
        o = std::max(o, x.order());
    }
    return o;
}

PsiDO ScalarOper::to_psido(int floor) const
{
    int order = working_order(q, 12) + n;
    int pole_floor = q.empty() ? -16 : q.front().pole_floor();
    PsiDO l = PsiDO::d_power(n, Series::constant(Rational(1), order, pole_floor), floor);
    for (int i = 1; i <= n; ++i) {
        if (!q[static_cast<std::size_t>(i - 1)].is_zero()) {
            l.set(n - i, -q[static_cast<std::size_t>(i - 1)]);
        }
    }
    return l;
}

ScalarOper ScalarOper::from_psido(const PsiDO &l, int n)
{
    auto top = l.top();
    if (!top || *top != n || !l.find(n)->agrees(Series::constant(Rational(1), l.find(n)->order()))) {
        throw NotMonic("expected a monic operator of order " + std::to_string(n));
    }
    ScalarOper s;
    s.n = n;
    Series zero(l.find(n)->order());
    for (int i = 1; i <= n; ++i) {
        const Series *c = l.find(n - i);
        s.q.push_back(c ? -*c : zero);
    }
    return s;
}

ScalarOper miura_transform(const MiuraOper &m)
{
    if (m.n != static_cast<int>(m.chi.size()) || m.n < 1) {
        throw BadArgument("Miura oper needs exactly n factors");
    }
    for (const auto &c : m.chi) {
        if (c.valuation() < 0) {
            throw BadMiuraInput("chi must be pole-free, got " + c.str());
        }
    }
    int order = working_order(m.chi, 12) + m.n;
    Series one = Series::constant(Rational(1), order, m.chi.front().pole_floor());
    PsiDO l = miura_product(m.chi, one, -1);
    return ScalarOper::from_psido(l, m.n);
}

MatrixConnection companion_matrix(const ScalarOper &s)
{
    int order = working_order(s.q, 12);
    MatrixConnection c;
    c.n = s.n;
    c.a.assign(static_cast<std::size_t>(s.n), std::vector<Series>(static_cast<std::size_t>(s.n), Series(order)));
    for (int j = 0; j < s.n; ++j) {
        c.a[0][static_cast<std::size_t>(j)] = s.q[static_cast<std::size_t>(j)];
    }
    for (int i = 1; i < s.n; ++i) {
        c.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] = Series::constant(Rational(1), order);
    }
    return c;
}

ScalarOper scalar_from_companion(const MatrixConnection &c)
{
    ScalarOper s;
    s.n = c.n;
    s.q = c.a.empty() ? std::vector<Series>{} : c.a[0];
    return s;
}

MatrixConnection bidiagonal(const MiuraOper &m)
{
    int order = working_order(m.chi, 12);
    MatrixConnection c;
    c.n = m.n;
    c.a.assign(static_cast<std::size_t>(m.n), std::vector<Series>(static_cast<std::size_t>(m.n), Series(order)));
    for (int i = 0; i < m.n; ++i) {
        c.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = m.chi[static_cast<std::size_t>(i)];
        if (i > 0) {
            c.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] = Series::constant(Rational(1), order);
        }
    }
    return c;
}

bool validate_oper(const MatrixConnection &c)
{
    if (c.n < 1 || static_cast<int>(c.a.size()) != c.n) {
        return false;
    }
    for (int i = 0; i < c.n; ++i) {
        if (static_cast<int>(c.a[static_cast<std::size_t>(i)].size()) != c.n) {
            return false;
        }
        for (int j = 0; j + 1 < i; ++j) {
            if (!c.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero()) {
                return false;
            }
        }
        if (i > 0) {
            const Series &sub = c.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)];
            if (sub.valuation() != 0) {
                return false;
            }
        }
    }
    return true;
}

namespace {

SeriesMatrix identity(int n, int order)
{
    SeriesMatrix m(static_cast<std::size_t>(n), std::vector<Series>(static_cast<std::size_t>(n), Series(order)));
    for (int i = 0; i < n; ++i) {
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Series::constant(Rational(1), order);
    }
    return m;
}

SeriesMatrix multiply(const SeriesMatrix &a, const SeriesMatrix &b)
{
    std::size_t n = a.size();
    SeriesMatrix out(n, std::vector<Series>(n, Series(a[0][0].order())));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Series acc = a[i][0] * b[0][j];
            for (std::size_t k = 1; k < n; ++k) {
                acc += a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    return out;
}

// Inverse of an upper-triangular matrix with unit diagonal, by back substitution.
SeriesMatrix unipotent_inverse(const SeriesMatrix &g)
{
    int n = static_cast<int>(g.size());
    SeriesMatrix x = identity(n, g[0][0].order());
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) {
            Series acc(g[0][0].order());
            for (int k = i + 1; k <= j; ++k) {
                acc += g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                       x[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            }
            x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = -acc;
        }
    }
    return x;
}

} // namespace

GaugeReduction gauge_reduce_full(const MatrixConnection &c)
{
    if (!validate_oper(c)) {
        throw NotOperForm("subdiagonal must consist of units with zeros below it");
    }
    int n = c.n;
    auto at = [](auto &m, int i, int j) -> auto & { return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    int order = c.a[0][0].order();
    for (const auto &row : c.a) {
        order = std::max(order, working_order(row, order));
    }

    // Diagonal gauge h = diag(d) turning the subdiagonal into ones.
    std::vector<Series> d{Series::constant(Rational(1), order)};
    for (int i = 1; i < n; ++i) {
        d.push_back(d.back() * at(c.a, i, i - 1).inverse());
    }
    SeriesMatrix a = c.a;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            at(a, i, j) = d[static_cast<std::size_t>(i)] * at(c.a, i, j) * d[static_cast<std::size_t>(j)].inverse();
        }
        at(a, i, i) += d[static_cast<std::size_t>(i)].derivative() * d[static_cast<std::size_t>(i)].inverse();
    }

    // Rows of the unipotent g from the bottom: (C g)_{ij} = g_{i-1,j} for i >= 2.
    SeriesMatrix g(static_cast<std::size_t>(n), std::vector<Series>(static_cast<std::size_t>(n), Series(order)));
    at(g, n - 1, n - 1) = Series::constant(Rational(1), order);
    auto next_row = [&](int i) {
        std::vector<Series> row;
        for (int j = 0; j < n; ++j) {
            Series acc = at(g, i, j).derivative();
            for (int k = 0; k < n; ++k) {
                if (!at(g, i, k).is_zero() && !at(a, k, j).is_zero()) {
                    acc += at(g, i, k) * at(a, k, j);
                }
            }
            row.push_back(acc);
        }
        return row;
    };
    for (int i = n - 1; i >= 1; --i) {
        auto row = next_row(i);
        for (int j = 0; j < i - 1; ++j) {
            if (!row[static_cast<std::size_t>(j)].is_zero()) {
                throw NotOperForm("gauge recursion left the unipotent group");
            }
        }
        if (!row[static_cast<std::size_t>(i - 1)].agrees(Series::constant(Rational(1), order))) {
            throw NotOperForm("gauge recursion produced a non-unit diagonal");
        }
        g[static_cast<std::size_t>(i - 1)] = std::move(row);
    }

    // First row: sum_k q_k g_{kj} = (gA + g')_{1j}, triangular in j.
    auto rhs = next_row(0);
    ScalarOper s;
    s.n = n;
    for (int j = 0; j < n; ++j) {
        Series qj = rhs[static_cast<std::size_t>(j)];
        for (int k = 0; k < j; ++k) {
            qj -= s.q[static_cast<std::size_t>(k)] * at(g, k, j);
        }
        s.q.push_back(qj);
    }

    GaugeReduction out;
    out.oper = s;
    SeriesMatrix h = identity(n, order);
    SeriesMatrix h_inv = identity(n, order);
    for (int i = 0; i < n; ++i) {
        at(h, i, i) = d[static_cast<std::size_t>(i)];
        at(h_inv, i, i) = d[static_cast<std::size_t>(i)].inverse();
    }
    out.g = multiply(g, h);
    out.g_inv = multiply(h_inv, unipotent_inverse(g));
    return out;
}

ScalarOper gauge_reduce(const MatrixConnection &c)
{
    return gauge_reduce_full(c).oper;
}

bool agrees(const ScalarOper &a, const ScalarOper &b)
{
    if (a.n != b.n || a.q.size() != b.q.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.q.size(); ++i) {
        if (!a.q[i].agrees(b.q[i])) {
            return false;
        }
    }
    return true;
}

} // namespace opergr
