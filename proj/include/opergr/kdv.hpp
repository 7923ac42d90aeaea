#pragma once

#include <vector>

#include "opergr/oper.hpp"
#include "opergr/psido.hpp"

namespace opergr {

/// The Lax vector field dL/dt_r = [B_r, L] with B_r = (L^{r/n})_+.
struct LaxFlow {
    std::vector<Series> dq; ///< dq_i = -(coefficient of d^{n-i} in [B_r, L])
    PsiDO commutator;
    int trusted_depth = 0; ///< depth of the root actually used
};

/// p + eps * direction, coefficientwise.
DualPsiDO lift_dual(const PsiDO &p, const PsiDO &direction);
PsiDO eps_part(const DualPsiDO &p);

/// First variation of res L^{k/n} along dL = direction (exact, via eps^2 = 0).
Series conserved_density_variation(const ScalarOper &s, int k, const PsiDO &direction, int depth = -8);

/// (L^{r/n})_+ computed from the Schur root at the given tail floor.
PsiDO lax_generator(const ScalarOper &s, int r, int depth);

LaxFlow lax_rhs(const ScalarOper &s, int r, int depth = -8);

/// res L^{s/n}.
Series conserved_density(const ScalarOper &s, int k, int depth = -8);

/// d_r B_s - d_s B_r - [B_r, B_s], with the t-derivatives taken along the
/// Lax vector fields through the eps^2 = 0 extension.
PsiDO zs_residual(const ScalarOper &s, int r, int k, int depth = -8);

/// Residual between the Miura pushforward of the mKdV flow and the KdV flow (n = 2).
PsiDO mkdv_intertwine_check(const MiuraOper &m, int r, int depth = -8);

} // namespace opergr
