#include "opergr/psido.hpp"

namespace opergr {

PsiDO differential_operator(const std::vector<Series> &coeffs, int floor)
{
    PsiDO out(floor);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (!coeffs[i].is_zero()) {
            out.set(static_cast<int>(i), coeffs[i]);
        }
    }
    return out;
}

} // namespace opergr
