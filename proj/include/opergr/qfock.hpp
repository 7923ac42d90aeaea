#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opergr/linalg.hpp"
#include "opergr/rational.hpp"

namespace opergr {

/// Laurent polynomial in the formal parameter q.
class QScalar {
public:
    QScalar() = default;
    QScalar(const Rational &c) { add(0, c); } // NOLINT(google-explicit-constructor)
    QScalar(int c) : QScalar(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    static QScalar q_power(int k, const Rational &c = Rational(1));

    const std::map<int, Rational> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(int k, const Rational &c);
    Rational eval(const Rational &q) const;

    QScalar &operator+=(const QScalar &o);
    QScalar &operator-=(const QScalar &o);
    friend QScalar operator+(QScalar a, const QScalar &b) { return a += b; }
    friend QScalar operator-(QScalar a, const QScalar &b) { return a -= b; }
    QScalar operator-() const;
    friend QScalar operator*(const QScalar &a, const QScalar &b);
    friend bool operator==(const QScalar &, const QScalar &) = default;

    std::string str() const;

private:
    std::map<int, Rational> terms_;
};

/// Polynomial in q, dense, lowest degree first, no trailing zeros.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> c);
    QPoly(const Rational &c) : QPoly(std::vector<Rational>{c}) {} // NOLINT(google-explicit-constructor)

    const std::vector<Rational> &coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational &lead() const { return c_.back(); }
    Rational eval(const Rational &q) const;

    friend QPoly operator+(const QPoly &a, const QPoly &b);
    friend QPoly operator-(const QPoly &a, const QPoly &b);
    friend QPoly operator*(const QPoly &a, const QPoly &b);
    QPoly operator-() const;
    friend bool operator==(const QPoly &, const QPoly &) = default;

    /// Quotient and remainder of a / b.
    static std::pair<QPoly, QPoly> divmod(const QPoly &a, const QPoly &b);
    static QPoly gcd(QPoly a, QPoly b);

    std::string str() const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Element of Q(q): reduced fraction with monic denominator.
class RatFunc {
public:
    RatFunc() : den_(Rational(1)) {}
    RatFunc(int c) : num_(Rational(c)), den_(Rational(1)) {} // NOLINT(google-explicit-constructor)
    RatFunc(const QScalar &s);                              // NOLINT(google-explicit-constructor)
    RatFunc(QPoly num, QPoly den);

    const QPoly &num() const { return num_; }
    const QPoly &den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    /// Value at q = x; nullopt at a pole.
    std::optional<Rational> eval(const Rational &x) const;

    friend RatFunc operator+(const RatFunc &a, const RatFunc &b);
    friend RatFunc operator-(const RatFunc &a, const RatFunc &b);
    friend RatFunc operator*(const RatFunc &a, const RatFunc &b);
    friend RatFunc operator/(const RatFunc &a, const RatFunc &b);
    RatFunc operator-() const;
    friend bool operator==(const RatFunc &, const RatFunc &) = default;

    std::string str() const;

private:
    void normalize();
    QPoly num_;
    QPoly den_;
};

/// Basis vector z^{a_1} e_{k_1} (x) ... (x) z^{a_N} e_{k_N}; indices k are 1-based.
struct TensorKey {
    std::vector<int> z;
    std::vector<int> e;
    friend auto operator<=>(const TensorKey &, const TensorKey &) = default;
    friend bool operator==(const TensorKey &, const TensorKey &) = default;
};

using QVector = std::map<TensorKey, QScalar>;

/// Truncated V(z)^{(x)N} with V = Q^n and every z-exponent in [lo, hi].
struct TensorWindow {
    int n = 2;
    int N = 2;
    int lo = -2;
    int hi = 2;

    int factor_dim() const { return n * (hi - lo + 1); }
    std::vector<TensorKey> basis() const;
    bool inside(const TensorKey &k) const;
};

/// Affine Hecke generator T_i (1 <= i < N) acting on the induced module.
QVector hecke_T(const TensorWindow &w, int i, const QVector &v);
/// X_1 = z on factor 1, X_{i+1} = q^{-1} T_i X_i T_i. Throws WindowOverflow outside [lo, hi].
QVector hecke_X(const TensorWindow &w, int i, const QVector &v);
/// Plain multiplication by z on factor i.
QVector z_multiply(const TensorWindow &w, int i, const QVector &v);

struct RelationCheck {
    std::string name;
    int checked = 0; ///< basis vectors on which both sides are representable
    bool passed = true;
};

/// Verifies every defining relation of the affine Hecke algebra on the window.
std::vector<RelationCheck> hecke_verify(const TensorWindow &w);

/// The subspace sum_i Ker(T_i + 1) = sum_i Im(T_i - q), echelonized block by block.
class QWedge {
public:
    explicit QWedge(const TensorWindow &w);

    const TensorWindow &window() const { return w_; }
    std::size_t tensor_dim() const { return keys_.size(); }
    std::size_t relation_rank() const { return rows_.size(); }
    std::size_t quotient_dim() const { return keys_.size() - rows_.size(); }

    /// Canonical representative of v modulo the relation subspace.
    std::map<TensorKey, RatFunc> canonical(const QVector &v) const;
    /// The reduced echelon rows evaluated at q = 1; throws on a pole.
    std::vector<std::map<TensorKey, Rational>> rows_at_one() const;

private:
    TensorWindow w_;
    std::vector<TensorKey> keys_;
    std::vector<std::map<TensorKey, RatFunc>> rows_; ///< reduced, pivot = first (smallest) key
    std::map<TensorKey, std::size_t> pivot_row_;
};

/// Classical relation subspace sum_i Im(1 + sigma_i) for the flip of adjacent (z, e) slots,
/// as reduced echelon rows. Its quotient is the exterior power of the window.
std::vector<std::map<TensorKey, Rational>> classical_relations(const TensorWindow &w);
/// Full antisymmetrizer sum_sigma sgn(sigma) sigma, on a rational vector.
std::map<TensorKey, Rational> antisymmetrize(const std::map<TensorKey, Rational> &v);

/// q-antisymmetrized image of v: its canonical form in the q-wedge quotient.
std::map<TensorKey, RatFunc> q_antisymmetrize(const QWedge &wedge, const QVector &v);

/// z^j e_i <-> v_{i - n j - 1/2}; returns the doubled index 2i - 2nj - 1.
int relabel_doubled(int n, int j, int i);
std::pair<int, int> relabel_inverse(int n, int doubled);

std::string tensor_key_str(const TensorKey &k);

} // namespace opergr
