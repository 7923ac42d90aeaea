#pragma once

#include <map>
#include <string>
#include <vector>

#include "opergr/linalg.hpp"
#include "opergr/rational.hpp"

namespace opergr {

/// Mode x_m of affine sl_2 with x in {e, h, f}.
struct Sl2Mode {
    enum Gen { E = 0, H = 1, F = 2 };
    Gen gen;
    int m;

    friend auto operator<=>(const Sl2Mode &, const Sl2Mode &) = default;
    friend bool operator==(const Sl2Mode &, const Sl2Mode &) = default;
};

/// PBW monomial of creation modes applied to the highest-weight vector, in sorted order.
using Sl2Word = std::vector<Sl2Mode>;
using Sl2Vector = std::map<Sl2Word, Rational>;

/// Highest-weight module at level k: either the vacuum (Weyl) module, where all
/// zero modes kill v, or the Verma module with h_0 v = weight v.
struct Sl2Module {
    Rational level;
    bool verma = false;
    Rational weight; ///< h_0 eigenvalue of v (ignored for the vacuum module)
    int max_f0 = 6;  ///< Verma only: bound on f_0 powers searched at each degree
};

bool is_creation(const Sl2Module &mod, const Sl2Mode &x);
Sl2Vector sl2_apply(const Sl2Module &mod, const Sl2Mode &x, const Sl2Vector &v);

/// PBW basis words of grade `degree` (minus the mode sum) and h_0 weight `h_weight`.
std::vector<Sl2Word> pbw_basis(const Sl2Module &mod, int degree, const Rational &h_weight);
/// All h_0 weights occurring at the given degree.
std::vector<Rational> weights_at(const Sl2Module &mod, int degree);

/// Shapovalov form <u, w> with the anti-involution e_m <-> f_{-m}, h_m <-> h_{-m}.
Mat<Rational> gram_matrix(const Sl2Module &mod, const std::vector<Sl2Word> &basis);

struct SingularVector {
    int degree;
    Rational h_weight;
    Sl2Vector vector;
};

/// Vectors of grade exactly `degree` >= 1 killed by e_0 and by x_m for 1 <= m <= degree.
std::vector<SingularVector> singular_vector_search(const Sl2Module &mod, int degree);

std::string sl2_str(const Sl2Vector &v);

} // namespace opergr
