#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opergr/grassmannian.hpp"
#include "opergr/oper.hpp"
#include "opergr/psido.hpp"

namespace opergr {

/// Window and truncation data shared by the Krichever-side constructions.
struct KricheverOptions {
    int lo = -8;
    int hi = 8;
    /// Treat input coefficients as exact polynomials and raise their truncation order as needed.
    bool exact_input = false;
};

/// Series order that makes every window coefficient exact for polynomial input.
int krichever_required_order(const KricheverOptions &opt, int n);

/// Re-truncates a series known exactly (a Laurent polynomial) at a higher order.
Series raise_order(const Series &s, int order);

/// K = 1 + sum_{m >= 1} k_m d^{-m} with K d^n K^{-1} = L, integration constants zero,
/// computed down to d^{lowest}. L must be monic of order n with nonnegative-power coefficients.
PsiDO dressing(const PsiDO &l, int n, int lowest);
PsiDO dressing(const ScalarOper &s, int lowest);

/// Raw frame: column j is the symbol of d^j K at t = 0 with d -> z, for j = 0 .. hi - 1.
std::vector<std::vector<Rational>> krichever_frame(const PsiDO &l, int n, const KricheverOptions &opt);
std::vector<std::vector<Rational>> krichever_frame(const ScalarOper &s, const KricheverOptions &opt);

/// Echelonized W from the raw frame. Frame: column j is the symbol of d^j K at t = 0 with d -> z, for j = 0 .. hi - 1.
GrassPoint krichever_point(const PsiDO &l, int n, const KricheverOptions &opt);
GrassPoint krichever_point(const ScalarOper &s, const KricheverOptions &opt);

/// F(x, y) = sum c_{ab} x^a y^b with F(P, Q) = 0.
struct SpectralRelation {
    std::map<std::pair<int, int>, Rational> coeffs;
    int ord_p = 0;
    int ord_q = 0;
    std::string str() const;
};

/// First linear dependence among P^a Q^b ordered by weight a ord P + b ord Q <= bound, then by b.
std::optional<SpectralRelation> bc_relation(const PsiDO &p, const PsiDO &q, int bound);
/// F(P, Q) as an operator.
PsiDO evaluate_relation(const SpectralRelation &f, const PsiDO &p, const PsiDO &q);

/// Chain W_0 within W_1 within ... within W_n, all on one window.
struct AffineFlagPoint {
    int n = 0;
    std::vector<GrassPoint> chain;
};

struct FlagInvariants {
    bool virtual_dimensions = false; ///< virtdim W_i = i - n
    bool nested = false;             ///< W_{i-1} inside W_i
    bool periodic = false;           ///< z^n W_n = W_0 within the window
    bool ok() const { return virtual_dimensions && nested && periodic; }
};

FlagInvariants check_flag(const AffineFlagPoint &f);

AffineFlagPoint miura_to_flag(const MiuraOper &m, const KricheverOptions &opt);
GrassPoint flag_to_grass(const AffineFlagPoint &f);

struct MainCheckReport {
    bool round_trip = false;    ///< (a)
    bool hirota = false;        ///< (b)
    bool reduction = false;     ///< (c)
    bool annihilators = false;  ///< (d)
    bool flag_valid = false;
    int degree = 0;
    int lo = 0;
    int hi = 0;
    int order = 0;
    std::size_t grass_annihilators = 0;
    std::size_t flag_annihilators = 0;
    bool all() const { return round_trip && hirota && reduction && annihilators && flag_valid; }
};

/// Runs the four checks; `flag` overrides the Miura-side flag (used for negative controls).
MainCheckReport main_theorem_check(const MiuraOper &m, const KricheverOptions &opt, int degree,
                                   bool parallel = false, const AffineFlagPoint *flag = nullptr);

} // namespace opergr
