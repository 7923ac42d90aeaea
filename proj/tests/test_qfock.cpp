#include "doctest.h"

#include <random>
#include <set>

#include "opergr/errors.hpp"
#include "opergr/qfock.hpp"
#include "test_util.hpp"

using namespace opergr;
using namespace testutil;

namespace {

QScalar q(int k = 1) { return QScalar::q_power(k); }

QVector unit(const TensorKey &k) { return QVector{{k, QScalar(1)}}; }

/// Matrix of T_1 on V (x) V with a single z-exponent, rows/cols in basis order.
Mat<QScalar> t_matrix_2x2(int n)
{
    TensorWindow w{n, 2, 0, 0};
    auto basis = w.basis();
    Mat<QScalar> m(basis.size(), std::vector<QScalar>(basis.size()));
    for (std::size_t c = 0; c < basis.size(); ++c) {
        QVector img = hecke_T(w, 1, unit(basis[c]));
        for (std::size_t r = 0; r < basis.size(); ++r) {
            auto it = img.find(basis[r]);
            if (it != img.end()) {
                m[r][c] = it->second;
            }
        }
    }
    return m;
}

std::size_t binom(std::size_t n, std::size_t k)
{
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
    }
    return r;
}

std::map<TensorKey, Rational> at_one(const std::map<TensorKey, RatFunc> &v)
{
    std::map<TensorKey, Rational> out;
    for (const auto &[k, c] : v) {
        auto x = c.eval(Rational(1));
        REQUIRE(x.has_value());
        if (!x->is_zero()) {
            out.emplace(k, *x);
        }
    }
    return out;
}

std::map<TensorKey, Rational> reduce(const std::vector<std::map<TensorKey, Rational>> &rows,
                                     std::map<TensorKey, Rational> v)
{
    for (const auto &row : rows) {
        auto it = v.find(row.begin()->first);
        if (it == v.end()) {
            continue;
        }
        Rational f = it->second;
        for (const auto &[k, c] : row) {
            v[k] -= f * c;
        }
        std::erase_if(v, [](const auto &kv) { return kv.second.is_zero(); });
    }
    return v;
}

} // namespace

TEST_CASE("Laurent polynomials and rational functions in q")
{
    QScalar a = q(1) + QScalar(Rational(2));
    QScalar b = q(-1) - QScalar(Rational(1));
    CHECK((a * b).eval(Rational(3)) == a.eval(Rational(3)) * b.eval(Rational(3)));
    RatFunc r = RatFunc(a) / RatFunc(b);
    CHECK(*r.eval(Rational(3)) == a.eval(Rational(3)) / b.eval(Rational(3)));
    CHECK_FALSE(r.eval(Rational(1)).has_value());
    // (q^2 - 1)/(q - 1) reduces to q + 1
    RatFunc s(QPoly({Rational(-1), Rational(0), Rational(1)}), QPoly({Rational(-1), Rational(1)}));
    CHECK(s.den().degree() == 0);
    CHECK(s == RatFunc(q(1) + QScalar(1)));
    CHECK((r * (RatFunc(1) / r)) == RatFunc(1));
}

TEST_CASE("T satisfies the quadratic relation with eigenvalues -1 (x3) and q (x1) on C^2 (x) C^2")
{
    auto m = t_matrix_2x2(2);
    REQUIRE(m.size() == 4);
    // (T + 1)(T - q) = 0 as a matrix product
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            QScalar acc;
            for (std::size_t k = 0; k < 4; ++k) {
                QScalar a = m[i][k] + (i == k ? QScalar(1) : QScalar());
                QScalar b = m[k][j] - (k == j ? q() : QScalar());
                acc += a * b;
            }
            CHECK(acc.is_zero());
        }
    }
    // trace = 3(-1) + q, which pins the multiplicities given the quadratic relation
    QScalar tr;
    for (std::size_t i = 0; i < 4; ++i) {
        tr += m[i][i];
    }
    CHECK(tr == q() - QScalar(3));
}

TEST_CASE("affine Hecke relations hold on the window")
{
    for (int n : {2, 3}) {
        TensorWindow w{n, 3, -1, 1};
        auto checks = hecke_verify(w);
        CHECK(checks.size() >= 9);
        for (const auto &c : checks) {
            INFO(n << " " << c.name);
            CHECK(c.passed);
            CHECK(c.checked > 0);
        }
    }
    TensorWindow w{2, 2, -1, 1};
    CHECK_THROWS_AS(hecke_T(w, 2, {}), BadArgument);
    TensorKey top{{1, 0}, {1, 1}};
    CHECK_THROWS_AS(hecke_X(w, 1, unit(top)), WindowOverflow);
}

TEST_CASE("T preserves the window")
{
    TensorWindow w{2, 3, -2, 2};
    for (const auto &b : w.basis()) {
        for (int i = 1; i <= 2; ++i) {
            for (const auto &[k, c] : hecke_T(w, i, unit(b))) {
                REQUIRE(w.inside(k));
            }
        }
    }
}

TEST_CASE("q-wedge quotient dimensions match the exterior power")
{
    struct Case {
        TensorWindow w;
    };
    for (auto w : {TensorWindow{2, 1, 0, 1}, TensorWindow{2, 2, 0, 1}, TensorWindow{2, 3, 0, 1},
                   TensorWindow{3, 2, -1, 0}, TensorWindow{2, 2, -1, 1}}) {
        QWedge wedge(w);
        INFO(w.n << " " << w.N << " [" << w.lo << "," << w.hi << "]");
        auto d = static_cast<std::size_t>(w.factor_dim());
        CHECK(wedge.quotient_dim() == binom(d, static_cast<std::size_t>(w.N)));
        CHECK(classical_relations(w).size() == wedge.relation_rank());
    }
    // window dimension 4 -> C(4, 2) = 6
    QWedge four(TensorWindow{2, 2, 0, 1});
    CHECK(four.quotient_dim() == 6);
}

TEST_CASE("N = 1 q-antisymmetrization is the identity")
{
    TensorWindow w{2, 1, -1, 1};
    QWedge wedge(w);
    CHECK(wedge.relation_rank() == 0);
    QVector v{{TensorKey{{0}, {2}}, q(2)}, {TensorKey{{-1}, {1}}, QScalar(Rational(3))}};
    auto c = q_antisymmetrize(wedge, v);
    CHECK(c.size() == 2);
    CHECK(c.at(TensorKey{{0}, {2}}) == RatFunc(q(2)));
}

TEST_CASE("q -> 1 canonical forms coincide with the classical wedge")
{
    std::mt19937 rng(3);
    for (auto w : {TensorWindow{2, 2, 0, 1}, TensorWindow{2, 3, 0, 1}}) {
        QWedge wedge(w);
        auto classical = classical_relations(w);
        CHECK(wedge.rows_at_one() == classical);
        auto basis = w.basis();
        std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
        for (int trial = 0; trial < 10; ++trial) {
            QVector v;
            std::map<TensorKey, Rational> v1;
            for (int t = 0; t < 3; ++t) {
                auto k = basis[pick(rng)];
                Rational c = random_rational(rng);
                v[k] += QScalar(c);
                v1[k] += c;
            }
            std::erase_if(v, [](const auto &kv) { return kv.second.is_zero(); });
            std::erase_if(v1, [](const auto &kv) { return kv.second.is_zero(); });
            auto canon1 = at_one(q_antisymmetrize(wedge, v));
            CHECK(canon1 == reduce(classical, v1));
            // the quotient map at q = 1 factors through the antisymmetrizer
            CHECK(antisymmetrize(canon1) == antisymmetrize(v1));
        }
    }
}

TEST_CASE("relabeling z^j e_i <-> v_{i - nj - 1/2} is a bijection")
{
    for (int n : {2, 3}) {
        std::set<int> seen;
        for (int j = -3; j <= 3; ++j) {
            for (int i = 1; i <= n; ++i) {
                int d = relabel_doubled(n, j, i);
                CHECK(seen.insert(d).second);
                CHECK(relabel_inverse(n, d) == std::make_pair(j, i));
            }
        }
        // consecutive half-integers, no gaps
        CHECK(*seen.rbegin() - *seen.begin() == 2 * (static_cast<int>(seen.size()) - 1));
        // multiplication by z lowers the v-index by n
        CHECK(relabel_doubled(n, 1, 1) == relabel_doubled(n, 0, 1) - 2 * n);
    }
    // e_1 at j = 0 is v_{1/2}
    CHECK(relabel_doubled(2, 0, 1) == 1);
}
