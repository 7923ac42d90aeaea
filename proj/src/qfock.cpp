#include "opergr/qfock.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "opergr/errors.hpp"

namespace opergr {

// ---- QScalar ----

QScalar QScalar::q_power(int k, const Rational &c)
{
    QScalar s;
    s.add(k, c);
    return s;
}

void QScalar::add(int k, const Rational &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, fresh] = terms_.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

Rational QScalar::eval(const Rational &q) const
{
    Rational acc;
    for (const auto &[k, c] : terms_) {
        acc += c * q.pow(k);
    }
    return acc;
}

QScalar &QScalar::operator+=(const QScalar &o)
{
    for (const auto &[k, c] : o.terms_) {
        add(k, c);
    }
    return *this;
}

QScalar &QScalar::operator-=(const QScalar &o)
{
    for (const auto &[k, c] : o.terms_) {
        add(k, -c);
    }
    return *this;
}

QScalar QScalar::operator-() const
{
    QScalar r;
    for (const auto &[k, c] : terms_) {
        r.terms_.emplace(k, -c);
    }
    return r;
}

QScalar operator*(const QScalar &a, const QScalar &b)
{
    QScalar r;
    for (const auto &[i, x] : a.terms_) {
        for (const auto &[j, y] : b.terms_) {
            r.add(i + j, x * y);
        }
    }
    return r;
}

std::string QScalar::str() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[k, c] : terms_) {
        os << (first ? "" : " + ") << c;
        if (k != 0) {
            os << "*q^" << k;
        }
        first = false;
    }
    return os.str();
}

// ---- QPoly ----

QPoly::QPoly(std::vector<Rational> c) : c_(std::move(c))
{
    trim();
}

void QPoly::trim()
{
    while (!c_.empty() && c_.back().is_zero()) {
        c_.pop_back();
    }
}

Rational QPoly::eval(const Rational &q) const
{
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * q + *it;
    }
    return acc;
}

QPoly operator+(const QPoly &a, const QPoly &b)
{
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        c[i] += a.c_[i];
    }
    for (std::size_t i = 0; i < b.c_.size(); ++i) {
        c[i] += b.c_[i];
    }
    return QPoly(std::move(c));
}

QPoly QPoly::operator-() const
{
    QPoly r = *this;
    for (auto &x : r.c_) {
        x = -x;
    }
    return r;
}

QPoly operator-(const QPoly &a, const QPoly &b)
{
    return a + (-b);
}

QPoly operator*(const QPoly &a, const QPoly &b)
{
    if (a.is_zero() || b.is_zero()) {
        return QPoly();
    }
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            c[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return QPoly(std::move(c));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly &a, const QPoly &b)
{
    if (b.is_zero()) {
        throw InternalError("polynomial division by zero");
    }
    std::vector<Rational> rem = a.c_;
    int db = b.degree();
    std::vector<Rational> quo(rem.size() >= b.c_.size() ? rem.size() - b.c_.size() + 1 : 0);
    for (int d = static_cast<int>(rem.size()) - 1; d >= db; --d) {
        const Rational &top = rem[static_cast<std::size_t>(d)];
        if (top.is_zero()) {
            continue;
        }
        Rational f = top / b.lead();
        quo[static_cast<std::size_t>(d - db)] = f;
        for (int k = 0; k <= db; ++k) {
            rem[static_cast<std::size_t>(d - db + k)] -= f * b.c_[static_cast<std::size_t>(k)];
        }
    }
    return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly QPoly::gcd(QPoly a, QPoly b)
{
    while (!b.is_zero()) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) {
        return a;
    }
    Rational inv = Rational(1) / a.lead();
    for (auto &x : a.c_) {
        x *= inv;
    }
    return a;
}

std::string QPoly::str() const
{
    if (c_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) {
            continue;
        }
        os << (first ? "" : " + ") << c_[k];
        if (k > 0) {
            os << "*q^" << k;
        }
        first = false;
    }
    return os.str();
}

// ---- RatFunc ----

RatFunc::RatFunc(const QScalar &s) : den_(Rational(1))
{
    if (s.is_zero()) {
        return;
    }
    int low = s.terms().begin()->first;
    int high = s.terms().rbegin()->first;
    std::vector<Rational> c(static_cast<std::size_t>(high - low + 1));
    for (const auto &[k, x] : s.terms()) {
        c[static_cast<std::size_t>(k - low)] = x;
    }
    num_ = QPoly(std::move(c));
    if (low > 0) {
        std::vector<Rational> shift(static_cast<std::size_t>(low));
        shift.push_back(Rational(1));
        num_ = num_ * QPoly(std::move(shift));
    } else if (low < 0) {
        std::vector<Rational> shift(static_cast<std::size_t>(-low));
        shift.push_back(Rational(1));
        den_ = QPoly(std::move(shift));
    }
}

RatFunc::RatFunc(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den))
{
    if (den_.is_zero()) {
        throw InternalError("rational function with zero denominator");
    }
    normalize();
}

void RatFunc::normalize()
{
    if (num_.is_zero()) {
        den_ = QPoly(Rational(1));
        return;
    }
    QPoly g = QPoly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = QPoly::divmod(num_, g).first;
        den_ = QPoly::divmod(den_, g).first;
    }
    Rational lead = den_.lead();
    if (!lead.is_one()) {
        Rational inv = Rational(1) / lead;
        num_ = num_ * QPoly(inv);
        den_ = den_ * QPoly(inv);
    }
}

std::optional<Rational> RatFunc::eval(const Rational &x) const
{
    Rational d = den_.eval(x);
    if (d.is_zero()) {
        return std::nullopt;
    }
    return num_.eval(x) / d;
}

RatFunc operator+(const RatFunc &a, const RatFunc &b)
{
    if (a.is_zero()) {
        return b;
    }
    if (b.is_zero()) {
        return a;
    }
    if (a.den_ == b.den_) {
        return RatFunc(a.num_ + b.num_, a.den_);
    }
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc RatFunc::operator-() const
{
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator-(const RatFunc &a, const RatFunc &b)
{
    return a + (-b);
}

RatFunc operator*(const RatFunc &a, const RatFunc &b)
{
    if (a.is_zero() || b.is_zero()) {
        return RatFunc();
    }
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc &a, const RatFunc &b)
{
    if (b.is_zero()) {
        throw InternalError("division by zero in Q(q)");
    }
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::str() const
{
    if (den_.degree() == 0 && den_.lead().is_one()) {
        return num_.str();
    }
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---- tensor window ----

std::vector<TensorKey> TensorWindow::basis() const
{
    std::vector<std::pair<int, int>> slots;
    for (int a = lo; a <= hi; ++a) {
        for (int k = 1; k <= n; ++k) {
            slots.emplace_back(a, k);
        }
    }
    std::vector<TensorKey> out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(N), 0);
    while (true) {
        TensorKey key;
        for (auto i : idx) {
            key.z.push_back(slots[i].first);
            key.e.push_back(slots[i].second);
        }
        out.push_back(std::move(key));
        int p = N - 1;
        while (p >= 0 && ++idx[static_cast<std::size_t>(p)] == slots.size()) {
            idx[static_cast<std::size_t>(p)] = 0;
            --p;
        }
        if (p < 0) {
            break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool TensorWindow::inside(const TensorKey &k) const
{
    return std::all_of(k.z.begin(), k.z.end(), [&](int a) { return a >= lo && a <= hi; });
}

namespace {

void add_to(QVector &v, const TensorKey &k, const QScalar &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, fresh] = v.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) {
            v.erase(it);
        }
    }
}

QScalar qs(int k, int c = 1)
{
    return QScalar::q_power(k, Rational(c));
}

void check_factor(const TensorWindow &w, int i, int max)
{
    if (i < 1 || i > max) {
        throw BadArgument("factor index " + std::to_string(i) + " outside 1.." + std::to_string(max));
    }
    if (w.N < 1 || w.n < 1 || w.lo > w.hi) {
        throw BadArgument("invalid tensor window");
    }
}

// T_i on one basis vector; positions p = i-1 and p+1.
void apply_T_basis(std::size_t p, const TensorKey &key, const QScalar &c, QVector &out)
{
    int a = key.z[p];
    int b = key.z[p + 1];
    int k = key.e[p];
    int l = key.e[p + 1];

    // s_i f (x) R v
    TensorKey swapped = key;
    std::swap(swapped.z[p], swapped.z[p + 1]);
    if (k == l) {
        add_to(out, swapped, -c);
    } else {
        TensorKey flip = swapped;
        std::swap(flip.e[p], flip.e[p + 1]);
        if (k < l) {
            add_to(out, swapped, c * (qs(1) - qs(0)));
            add_to(out, flip, -c);
        } else {
            add_to(out, flip, c * qs(1, -1));
        }
    }

    // (q - 1) z_{i+1} (f - s_i f) / (z_{i+1} - z_i) (x) v
    if (a == b) {
        return;
    }
    QScalar qm1 = c * (qs(1) - qs(0));
    TensorKey t = key;
    if (a > b) {
        for (int j = 0; j < a - b; ++j) {
            t.z[p] = a - 1 - j;
            t.z[p + 1] = b + j + 1;
            add_to(out, t, -qm1);
        }
    } else {
        for (int j = 0; j < b - a; ++j) {
            t.z[p] = a + j;
            t.z[p + 1] = b - j;
            add_to(out, t, qm1);
        }
    }
}

void require_inside(const TensorWindow &w, const QVector &v)
{
    for (const auto &[k, c] : v) {
        if (!w.inside(k)) {
            throw WindowOverflow("z-exponent leaves the window [" + std::to_string(w.lo) + ", " +
                                 std::to_string(w.hi) + "]");
        }
    }
}

} // namespace

QVector hecke_T(const TensorWindow &w, int i, const QVector &v)
{
    check_factor(w, i, w.N - 1);
    QVector out;
    for (const auto &[k, c] : v) {
        apply_T_basis(static_cast<std::size_t>(i - 1), k, c, out);
    }
    return out;
}

QVector z_multiply(const TensorWindow &w, int i, const QVector &v)
{
    check_factor(w, i, w.N);
    QVector out;
    for (const auto &[k, c] : v) {
        TensorKey t = k;
        ++t.z[static_cast<std::size_t>(i - 1)];
        add_to(out, t, c);
    }
    return out;
}

QVector hecke_X(const TensorWindow &w, int i, const QVector &v)
{
    check_factor(w, i, w.N);
    QVector out;
    if (i == 1) {
        out = z_multiply(w, 1, v);
    } else {
        out = hecke_T(w, i - 1, hecke_X(w, i - 1, hecke_T(w, i - 1, v)));
        for (auto &[k, c] : out) {
            c = c * qs(-1);
        }
    }
    require_inside(w, out);
    return out;
}

namespace {

int max_z(const TensorKey &k)
{
    return *std::max_element(k.z.begin(), k.z.end());
}

QVector unit(const TensorKey &k)
{
    return QVector{{k, QScalar(1)}};
}

QVector scaled(QVector v, const QScalar &s)
{
    QVector out;
    for (auto &[k, c] : v) {
        add_to(out, k, c * s);
    }
    return out;
}

QVector sum(QVector a, const QVector &b)
{
    for (const auto &[k, c] : b) {
        add_to(a, k, c);
    }
    return a;
}

} // namespace

std::vector<RelationCheck> hecke_verify(const TensorWindow &w)
{
    auto basis = w.basis();
    std::vector<RelationCheck> out;
    auto check = [&](const std::string &name, int x_count, auto lhs, auto rhs) {
        RelationCheck r{name, 0, true};
        for (const auto &b : basis) {
            if (max_z(b) > w.hi - x_count) {
                continue;
            }
            ++r.checked;
            if (lhs(b) != rhs(b)) {
                r.passed = false;
                break;
            }
        }
        out.push_back(r);
    };
    auto T = [&](int i, const QVector &v) { return hecke_T(w, i, v); };
    auto X = [&](int i, const QVector &v) { return hecke_X(w, i, v); };

    for (int i = 1; i < w.N; ++i) {
        std::string s = std::to_string(i);
        check("(T" + s + "+1)(T" + s + "-q)=0", 0,
              [&](const TensorKey &b) {
                  QVector tb = T(i, unit(b));
                  return sum(sum(T(i, tb), scaled(tb, qs(0) - qs(1))), scaled(unit(b), qs(1, -1)));
              },
              [](const TensorKey &) { return QVector{}; });
    }
    for (int i = 1; i + 1 < w.N; ++i) {
        std::string s = std::to_string(i), s1 = std::to_string(i + 1);
        check("T" + s + "T" + s1 + "T" + s + "=T" + s1 + "T" + s + "T" + s1, 0,
              [&](const TensorKey &b) { return T(i, T(i + 1, T(i, unit(b)))); },
              [&](const TensorKey &b) { return T(i + 1, T(i, T(i + 1, unit(b)))); });
    }
    for (int i = 1; i < w.N; ++i) {
        for (int j = i + 2; j < w.N; ++j) {
            check("T" + std::to_string(i) + "T" + std::to_string(j) + "=T" + std::to_string(j) + "T" +
                      std::to_string(i),
                  0, [&](const TensorKey &b) { return T(i, T(j, unit(b))); },
                  [&](const TensorKey &b) { return T(j, T(i, unit(b))); });
        }
    }
    for (int i = 1; i < w.N; ++i) {
        std::string s = std::to_string(i);
        // Independent right-hand side: q times plain multiplication by z_{i+1}.
        check("T" + s + "X" + s + "T" + s + "=qX" + std::to_string(i + 1), 1,
              [&](const TensorKey &b) { return T(i, X(i, T(i, unit(b)))); },
              [&](const TensorKey &b) { return scaled(z_multiply(w, i + 1, unit(b)), qs(1)); });
    }
    for (int i = 1; i <= w.N; ++i) {
        for (int j = i + 1; j <= w.N; ++j) {
            check("X" + std::to_string(i) + "X" + std::to_string(j) + "=X" + std::to_string(j) + "X" +
                      std::to_string(i),
                  2, [&](const TensorKey &b) { return X(i, X(j, unit(b))); },
                  [&](const TensorKey &b) { return X(j, X(i, unit(b))); });
        }
    }
    for (int i = 1; i < w.N; ++i) {
        for (int j = 1; j <= w.N; ++j) {
            if (j == i || j == i + 1) {
                continue;
            }
            check("X" + std::to_string(j) + "T" + std::to_string(i) + "=T" + std::to_string(i) + "X" +
                      std::to_string(j),
                  1, [&](const TensorKey &b) { return X(j, T(i, unit(b))); },
                  [&](const TensorKey &b) { return T(i, X(j, unit(b))); });
        }
    }
    for (int i = 1; i <= w.N; ++i) {
        check("X" + std::to_string(i) + "=z" + std::to_string(i), 1,
              [&](const TensorKey &b) { return X(i, unit(b)); },
              [&](const TensorKey &b) { return z_multiply(w, i, unit(b)); });
    }
    return out;
}

// ---- q-wedge ----

namespace {

/// T_i preserves the total z-degree and the multiset of V-indices.
std::pair<int, std::vector<int>> block_of(const TensorKey &k)
{
    std::vector<int> e = k.e;
    std::sort(e.begin(), e.end());
    return {std::accumulate(k.z.begin(), k.z.end(), 0), e};
}

template <class F, class Gen>
std::vector<std::map<TensorKey, F>> echelon_rows(const std::vector<TensorKey> &keys, Gen generators)
{
    std::map<std::pair<int, std::vector<int>>, std::vector<TensorKey>> blocks;
    for (const auto &k : keys) {
        blocks[block_of(k)].push_back(k);
    }
    std::vector<std::map<TensorKey, F>> rows;
    for (const auto &[id, cols] : blocks) {
        std::map<TensorKey, std::size_t> col_of;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            col_of.emplace(cols[c], c);
        }
        Mat<F> m;
        for (const auto &b : cols) {
            for (auto &vec : generators(b)) {
                std::vector<F> row(cols.size(), F(0));
                bool any = false;
                for (const auto &[k, c] : vec) {
                    row[col_of.at(k)] = F(c);
                    any = true;
                }
                if (any) {
                    m.push_back(std::move(row));
                }
            }
        }
        rref(m);
        for (const auto &row : m) {
            std::map<TensorKey, F> r;
            for (std::size_t c = 0; c < cols.size(); ++c) {
                if (!row[c].is_zero()) {
                    r.emplace(cols[c], row[c]);
                }
            }
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

TensorKey flip_slots(TensorKey k, std::size_t p)
{
    std::swap(k.z[p], k.z[p + 1]);
    std::swap(k.e[p], k.e[p + 1]);
    return k;
}

} // namespace

QWedge::QWedge(const TensorWindow &w) : w_(w), keys_(w.basis())
{
    rows_ = echelon_rows<RatFunc>(keys_, [&](const TensorKey &b) {
        std::vector<QVector> gens;
        for (int i = 1; i < w_.N; ++i) {
            gens.push_back(sum(hecke_T(w_, i, unit(b)), scaled(unit(b), qs(1, -1))));
        }
        return gens;
    });
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        pivot_row_.emplace(rows_[r].begin()->first, r);
    }
}

std::map<TensorKey, RatFunc> QWedge::canonical(const QVector &v) const
{
    std::map<TensorKey, RatFunc> out;
    for (const auto &[k, c] : v) {
        out.emplace(k, RatFunc(c));
    }
    // Rows are fully reduced, so one pass over the pivots suffices.
    for (const auto &[pivot, r] : pivot_row_) {
        auto it = out.find(pivot);
        if (it == out.end()) {
            continue;
        }
        RatFunc f = it->second;
        for (const auto &[k, c] : rows_[r]) {
            RatFunc nv = out.count(k) ? out[k] - f * c : -(f * c);
            if (nv.is_zero()) {
                out.erase(k);
            } else {
                out[k] = nv;
            }
        }
    }
    return out;
}

std::vector<std::map<TensorKey, Rational>> QWedge::rows_at_one() const
{
    std::vector<std::map<TensorKey, Rational>> out;
    for (const auto &row : rows_) {
        std::map<TensorKey, Rational> r;
        for (const auto &[k, c] : row) {
            auto x = c.eval(Rational(1));
            if (!x) {
                throw WindowOverflow("q-wedge echelon form has a pole at q = 1");
            }
            if (!x->is_zero()) {
                r.emplace(k, *x);
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::map<TensorKey, Rational>> classical_relations(const TensorWindow &w)
{
    return echelon_rows<Rational>(w.basis(), [&](const TensorKey &b) {
        std::vector<std::map<TensorKey, Rational>> gens;
        for (std::size_t p = 0; p + 1 < static_cast<std::size_t>(w.N); ++p) {
            std::map<TensorKey, Rational> g;
            TensorKey f = flip_slots(b, p);
            g[b] += Rational(1);
            g[f] += Rational(1);
            std::erase_if(g, [](const auto &kv) { return kv.second.is_zero(); });
            gens.push_back(std::move(g));
        }
        return gens;
    });
}

std::map<TensorKey, Rational> antisymmetrize(const std::map<TensorKey, Rational> &v)
{
    std::map<TensorKey, Rational> out;
    for (const auto &[k, c] : v) {
        std::vector<std::size_t> perm(k.z.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            // sign by inversion count
            int inv = 0;
            for (std::size_t a = 0; a < perm.size(); ++a) {
                for (std::size_t b = a + 1; b < perm.size(); ++b) {
                    inv += perm[a] > perm[b] ? 1 : 0;
                }
            }
            TensorKey t;
            for (auto p : perm) {
                t.z.push_back(k.z[p]);
                t.e.push_back(k.e[p]);
            }
            out[t] += inv % 2 == 0 ? c : -c;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    std::erase_if(out, [](const auto &kv) { return kv.second.is_zero(); });
    return out;
}

std::map<TensorKey, RatFunc> q_antisymmetrize(const QWedge &wedge, const QVector &v)
{
    return wedge.canonical(v);
}

int relabel_doubled(int n, int j, int i)
{
    if (i < 1 || i > n) {
        throw BadArgument("basis index outside 1..n");
    }
    return 2 * i - 2 * n * j - 1;
}

std::pair<int, int> relabel_inverse(int n, int doubled)
{
    if (doubled % 2 == 0) {
        throw BadArgument("v-index must be a half-integer");
    }
    // 2i - 1 - 2nj = doubled with 1 <= i <= n
    int x = doubled + 1; // = 2i - 2nj
    int half = x / 2;    // = i - nj
    int j = -((half - 1) >= 0 ? (half - 1) / n : -((-(half - 1) + n - 1) / n));
    int i = half + n * j;
    return {j, i};
}

std::string tensor_key_str(const TensorKey &k)
{
    std::ostringstream os;
    for (std::size_t p = 0; p < k.z.size(); ++p) {
        os << (p ? "(x)" : "") << "z^" << k.z[p] << "e" << k.e[p];
    }
    return os.str();
}

} // namespace opergr
