#pragma once

#include <vector>

#include "opergr/psido.hpp"
#include "opergr/series.hpp"

namespace opergr {

/// L = d^n - q_1 d^{n-1} - ... - q_n.
struct ScalarOper {
    int n = 0;
    std::vector<Series> q;

    PsiDO to_psido(int floor) const;
    /// Reads q_i = -(coefficient of d^{n-i}); requires a monic order-n operator.
    static ScalarOper from_psido(const PsiDO &l, int n);
};

/// The factor list chi_1..chi_n of (d - chi_1)...(d - chi_n).
struct MiuraOper {
    int n = 0;
    std::vector<Series> chi;
};

using SeriesMatrix = std::vector<std::vector<Series>>;

/// The first-order operator d_t - A.
struct MatrixConnection {
    int n = 0;
    SeriesMatrix a;
};

/// Working truncation order for a family of coefficients: the largest order present.
int working_order(const std::vector<Series> &s, int fallback);

/// (d - chi_1) o ... o (d - chi_n) for any coefficient type.
template <class C>
BasicPsiDO<C> miura_product(const std::vector<C> &chi, const C &one, int floor)
{
    BasicPsiDO<C> out = BasicPsiDO<C>::d_power(0, one, floor);
    for (const C &c : chi) {
        BasicPsiDO<C> factor = BasicPsiDO<C>::d_power(1, one, floor);
        factor.set(0, -c);
        out = BasicPsiDO<C>::compose(out, factor);
    }
    return out;
}

ScalarOper miura_transform(const MiuraOper &m);
MatrixConnection companion_matrix(const ScalarOper &s);
ScalarOper scalar_from_companion(const MatrixConnection &c);
/// diag(chi) plus ones on the subdiagonal.
MatrixConnection bidiagonal(const MiuraOper &m);
bool validate_oper(const MatrixConnection &c);

struct GaugeReduction {
    ScalarOper oper;
    SeriesMatrix g;     ///< gauge with C = g A g^{-1} + g' g^{-1}
    SeriesMatrix g_inv; ///< row i lists the coefficients of D_i in psi_i = D_i f, by d^{n-1} .. d^0
};

GaugeReduction gauge_reduce_full(const MatrixConnection &c);
ScalarOper gauge_reduce(const MatrixConnection &c);

bool agrees(const ScalarOper &a, const ScalarOper &b);

} // namespace opergr
