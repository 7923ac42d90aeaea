#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "opergr/rational.hpp"

namespace opergr {

/// Semi-infinite wedge v_{i_1} ^ v_{i_2} ^ ... with i_k = m - k + 1/2 + lambda_k.
struct Maya {
    int charge = 0;
    std::vector<int> partition; ///< weakly decreasing, no trailing zeros

    int energy() const;
    /// The first `count` occupied indices, doubled (2 i_k), in decreasing order.
    std::vector<int> doubled_indices(int count) const;
    static Maya from_doubled(const std::vector<int> &indices);
    std::string str() const;

    friend auto operator<=>(const Maya &, const Maya &) = default;
    friend bool operator==(const Maya &, const Maya &) = default;
};

/// Finite linear combination of Maya diagrams.
class MayaState {
public:
    MayaState() = default;
    static MayaState basis(const Maya &m, const Rational &c = Rational(1));
    static MayaState vacuum(int charge = 0) { return basis(Maya{charge, {}}); }

    const std::map<Maya, Rational> &terms() const { return terms_; }
    Rational coeff(const Maya &m) const;
    bool is_zero() const { return terms_.empty(); }
    void add(const Maya &m, const Rational &c);

    MayaState &operator+=(const MayaState &o);
    MayaState &operator-=(const MayaState &o);
    friend MayaState operator+(MayaState a, const MayaState &b) { return a += b; }
    friend MayaState operator-(MayaState a, const MayaState &b) { return a -= b; }
    friend MayaState operator*(MayaState a, const Rational &s);
    friend bool operator==(const MayaState &, const MayaState &) = default;

    std::string str() const;

private:
    std::map<Maya, Rational> terms_;
};

/// Optional bounds on where Fock computations may go.
struct FockWindow {
    int max_energy = 6;
    int max_index2 = 25; ///< largest |2j| accepted for a mode index j
};

enum class Clifford { Plus, Minus };

/// psi^+_j inserts v_{-j}; psi^-_j contracts v_j. `j2` is the doubled index 2j (odd).
MayaState clifford_apply(Clifford kind, int j2, const MayaState &v, const FockWindow *window = nullptr);

/// H_k = sum_i :psi^+_{-i} psi^-_{i+k}: for k != 0, moving one particle from j to j - k.
MayaState h_action(int k, const MayaState &v, const FockWindow *window = nullptr);

/// Partitions of size <= max_size, ordered by size then reverse lexicographically.
std::vector<std::vector<int>> partitions_up_to(int max_size);
std::vector<std::vector<int>> partitions_of(int size);

/// All Maya diagrams of the given charge with energy <= max_energy.
std::vector<Maya> maya_basis(int charge, int max_energy);

} // namespace opergr
