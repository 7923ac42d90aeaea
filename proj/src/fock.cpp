#include "opergr/fock.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "opergr/errors.hpp"

namespace opergr {

int Maya::energy() const
{
    int e = 0;
    for (int p : partition) {
        e += p;
    }
    return e;
}

std::vector<int> Maya::doubled_indices(int count) const
{
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 1; k <= count; ++k) {
        int lam = k <= static_cast<int>(partition.size()) ? partition[static_cast<std::size_t>(k - 1)] : 0;
        out.push_back(2 * charge - 2 * k + 1 + 2 * lam);
    }
    return out;
}

Maya Maya::from_doubled(const std::vector<int> &indices)
{
    // The list must end inside the vacuum-like tail, so its last entry fixes the charge.
    int len = static_cast<int>(indices.size());
    int twice_m = indices.back() + 2 * len - 1;
    Maya m;
    m.charge = twice_m / 2;
    for (int k = 1; k <= len; ++k) {
        int lam2 = indices[static_cast<std::size_t>(k - 1)] - twice_m + 2 * k - 1;
        m.partition.push_back(lam2 / 2);
    }
    while (!m.partition.empty() && m.partition.back() == 0) {
        m.partition.pop_back();
    }
    return m;
}

std::string Maya::str() const
{
    std::ostringstream os;
    os << "|" << charge << ";(";
    for (std::size_t i = 0; i < partition.size(); ++i) {
        os << (i ? "," : "") << partition[i];
    }
    os << ")>";
    return os.str();
}

MayaState MayaState::basis(const Maya &m, const Rational &c)
{
    MayaState s;
    s.add(m, c);
    return s;
}

Rational MayaState::coeff(const Maya &m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational() : it->second;
}

void MayaState::add(const Maya &m, const Rational &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

MayaState &MayaState::operator+=(const MayaState &o)
{
    for (const auto &[m, c] : o.terms_) {
        add(m, c);
    }
    return *this;
}

MayaState &MayaState::operator-=(const MayaState &o)
{
    for (const auto &[m, c] : o.terms_) {
        add(m, -c);
    }
    return *this;
}

MayaState operator*(MayaState a, const Rational &s)
{
    if (s.is_zero()) {
        return MayaState();
    }
    for (auto &[m, c] : a.terms_) {
        c *= s;
    }
    return a;
}

std::string MayaState::str() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        os << (first ? "" : " + ") << c << m.str();
        first = false;
    }
    return os.str();
}

namespace {

// Enough leading indices that everything at or below `floor2` is the contiguous tail.
int list_length(const Maya &m, int floor2)
{
    int len = static_cast<int>(m.partition.size()) + 1;
    while (2 * m.charge - 2 * len + 1 >= floor2) {
        ++len;
    }
    return len;
}

void check_index(int j2, const FockWindow *window)
{
    if (j2 % 2 == 0) {
        throw BadArgument("mode index must be a half-integer");
    }
    if (window && std::abs(j2) > window->max_index2) {
        throw WindowOverflow("mode index " + std::to_string(j2) + "/2 outside the window");
    }
}

void check_energy(const MayaState &s, const FockWindow *window)
{
    if (!window) {
        return;
    }
    for (const auto &[m, c] : s.terms()) {
        if (m.energy() > window->max_energy) {
            throw WindowOverflow("state " + m.str() + " exceeds energy " + std::to_string(window->max_energy));
        }
    }
}

// Inserts x into a decreasing list; returns the number of larger entries, or -1 if present.
int insert_sorted(std::vector<int> &list, int x)
{
    auto it = std::find_if(list.begin(), list.end(), [x](int y) { return y <= x; });
    if (it != list.end() && *it == x) {
        return -1;
    }
    int s = static_cast<int>(it - list.begin());
    list.insert(it, x);
    return s;
}

int remove_sorted(std::vector<int> &list, int x)
{
    auto it = std::find(list.begin(), list.end(), x);
    if (it == list.end()) {
        return -1;
    }
    int s = static_cast<int>(it - list.begin());
    list.erase(it);
    return s;
}

Rational parity(int s)
{
    return s % 2 == 0 ? Rational(1) : Rational(-1);
}

} // namespace

MayaState clifford_apply(Clifford kind, int j2, const MayaState &v, const FockWindow *window)
{
    check_index(j2, window);
    MayaState out;
    for (const auto &[m, c] : v.terms()) {
        if (kind == Clifford::Plus) {
            int x = -j2;
            std::vector<int> list = m.doubled_indices(list_length(m, x - 1));
            int s = insert_sorted(list, x);
            if (s >= 0) {
                out.add(Maya::from_doubled(list), c * parity(s));
            }
        } else {
            int x = j2;
            std::vector<int> list = m.doubled_indices(list_length(m, x - 1));
            int s = remove_sorted(list, x);
            if (s >= 0) {
                // Removing the s-th factor (1-based) gives (-1)^{s+1}, i.e. (-1)^s with s counted from 0.
                out.add(Maya::from_doubled(list), c * parity(s));
            }
        }
    }
    check_energy(out, window);
    return out;
}

MayaState h_action(int k, const MayaState &v, const FockWindow *window)
{
    if (k == 0) {
        throw BadArgument("H_0 is not supported; use the charge");
    }
    if (window && std::abs(k) > window->max_energy) {
        throw WindowOverflow("|k| exceeds the energy window");
    }
    MayaState out;
    for (const auto &[m, c] : v.terms()) {
        int len = list_length(m, 2 * m.charge - 2 * static_cast<int>(m.partition.size()) - 4 * std::abs(k) - 2);
        std::vector<int> base = m.doubled_indices(len);
        for (int x : base) {
            std::vector<int> list = base;
            int s1 = remove_sorted(list, x);
            int s2 = insert_sorted(list, x - 2 * k);
            if (s2 < 0 || x - 2 * k < base.back()) {
                continue;
            }
            out.add(Maya::from_doubled(list), c * parity(s1 + s2));
        }
    }
    check_energy(out, window);
    return out;
}

std::vector<std::vector<int>> partitions_of(int size)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int maxpart) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(left, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(size, size);
    return out;
}

std::vector<std::vector<int>> partitions_up_to(int max_size)
{
    std::vector<std::vector<int>> out;
    for (int s = 0; s <= max_size; ++s) {
        auto ps = partitions_of(s);
        out.insert(out.end(), ps.begin(), ps.end());
    }
    return out;
}

std::vector<Maya> maya_basis(int charge, int max_energy)
{
    std::vector<Maya> out;
    for (auto &p : partitions_up_to(max_energy)) {
        out.push_back(Maya{charge, p});
    }
    return out;
}

} // namespace opergr
