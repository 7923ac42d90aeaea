#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opergr/linalg.hpp"
#include "opergr/rational.hpp"
#include "opergr/times_series.hpp"

namespace opergr {

/// A point W of the Sato Grassmannian seen through the window [lo, hi) of
/// exponents of z = t^{-1}. W is the span of the frame columns plus every z^k
/// with k >= hi; nothing below z^lo is represented.
struct GrassPoint {
    int lo = -8;
    int hi = 8;
    /// Columns in reduced echelon form, sorted by leading (highest) exponent.
    /// Entry e - lo holds the coefficient of z^e.
    std::vector<std::vector<Rational>> columns;
    int virtdim = 0;

    int size() const { return hi - lo; }
    Rational at(std::size_t col, int exponent) const
    {
        return exponent < lo || exponent >= hi ? Rational() : columns[col][static_cast<std::size_t>(exponent - lo)];
    }
    /// Leading exponent of each column.
    std::vector<int> pivots() const;
};

/// Echelonizes a frame; throws DegenerateFrame on dependent columns.
GrassPoint grass_window(const std::vector<std::vector<Rational>> &frame, int lo, int hi);

/// The subspace spanned by z^k, k >= shift (z^shift H_+).
GrassPoint standard_point(int lo, int hi, int shift = 0);

bool same_point(const GrassPoint &a, const GrassPoint &b);
/// Is v (indexed like a column) in W, comparing only exponents >= from?
bool contains(const GrassPoint &w, const std::vector<Rational> &v, int from);
/// Checks z^n W within W on every column whose shift stays inside the window.
bool shift_contained(const GrassPoint &w, int n);
/// The column z^n * col, truncated to the window.
std::vector<Rational> shift_column(const GrassPoint &w, std::size_t col, int n);
/// Same space restricted to a narrower window [lo, hi); lo >= w.lo and hi == w.hi.
GrassPoint restrict_window(const GrassPoint &w, int lo);

/// Pluecker coordinate of the partition (charge-0 points only).
Rational plucker(const GrassPoint &w, const std::vector<int> &lambda);

/// Complete homogeneous h_k(t) from exp(sum t_k z^k), k = 0..bound.
std::vector<TimesSeries> complete_h(int times, int bound);
/// Schur polynomial s_lambda(t) in the convention p_k = k t_k.
TimesSeries schur_polynomial(const std::vector<int> &lambda, int times, int bound);

/// tau = sum_{|lambda| <= D} pi_lambda s_lambda / pi_0 (unnormalized when pi_0 = 0).
TimesSeries tau_schur(const GrassPoint &w, int degree);
/// tau as the determinant of the projection of e^{xi(t,z)} W onto H_+ in the window.
TimesSeries tau_correlator(const GrassPoint &w, int degree);

/// 2 (tau tau_1111 - 4 tau_1 tau_111 + 3 tau_11^2 + 3 tau tau_22 - 3 tau_2^2 - 4 tau tau_13 + 4 tau_1 tau_3),
/// known through degree bound - 4.
TimesSeries hirota_residual(const TimesSeries &tau);

/// d/dt_{kn} log tau is constant through the known degree, for every kn <= bound.
bool n_reduction_holds(const TimesSeries &tau, int n);

struct TodaPair {
    Rational a;
    Rational p;
    Rational q;
};

/// K(p, q) = sum_{k < cutoff} q^k / p^{k+1}.
Rational toda_kernel(const Rational &p, const Rational &q, int cutoff);
/// <0| psi(p) psi*(q) |0> summed over modes |j| < cutoff by explicit Fock-space action.
Rational toda_kernel_bruteforce(const Rational &p, const Rational &q, int cutoff);
/// det(delta_ij + a_i K(p_i, q_j) e^{xi(t,p_i) - xi(t,q_j) + xi(t',1/p_i) - xi(t',1/q_j)}).
TimesSeries toda_tau(const std::vector<TodaPair> &pairs, int degree, int cutoff);

/// A differential operator in the times: sum over (coefficient monomial, derivative multi-index).
using TimesOperator = std::map<std::pair<TimesSeries::Exponents, TimesSeries::Exponents>, Rational>;

struct AnnihilatorSpec {
    int max_order = 2;             ///< weighted order of the derivative part
    int max_degree = 1;            ///< weighted degree of the polynomial coefficients
    std::vector<int> derivative_times{1};
};

/// Echelonized basis of operators P within the bounds with P tau = 0 through
/// degree bound - max_order.
std::vector<TimesOperator> annihilator_basis(const TimesSeries &tau, const AnnihilatorSpec &spec);
TimesSeries apply_operator(const TimesOperator &op, const TimesSeries &tau);
/// Is every operator of `sub` a linear combination of `basis`?
bool span_contains(const std::vector<TimesOperator> &basis, const std::vector<TimesOperator> &sub);
std::string operator_str(const TimesOperator &op, const TimesSeries &like);

} // namespace opergr
