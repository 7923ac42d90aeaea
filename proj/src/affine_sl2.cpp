#include "opergr/affine_sl2.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "opergr/errors.hpp"

namespace opergr {

namespace {

// sl_2 structure constants: [x, y] as a (generator, coefficient) pair, and (x|y).
struct Bracket {
    bool nonzero;
    Sl2Mode::Gen gen;
    Rational coeff;
};

Bracket bracket(Sl2Mode::Gen x, Sl2Mode::Gen y)
{
    using G = Sl2Mode;
    if (x == G::E && y == G::F) {
        return {true, G::H, Rational(1)};
    }
    if (x == G::F && y == G::E) {
        return {true, G::H, Rational(-1)};
    }
    if (x == G::H && y == G::E) {
        return {true, G::E, Rational(2)};
    }
    if (x == G::E && y == G::H) {
        return {true, G::E, Rational(-2)};
    }
    if (x == G::H && y == G::F) {
        return {true, G::F, Rational(-2)};
    }
    if (x == G::F && y == G::H) {
        return {true, G::F, Rational(2)};
    }
    return {false, G::H, Rational()};
}

Rational killing(Sl2Mode::Gen x, Sl2Mode::Gen y)
{
    using G = Sl2Mode;
    if ((x == G::E && y == G::F) || (x == G::F && y == G::E)) {
        return Rational(1);
    }
    if (x == G::H && y == G::H) {
        return Rational(2);
    }
    return Rational();
}

int h_charge(Sl2Mode::Gen g)
{
    return g == Sl2Mode::E ? 2 : (g == Sl2Mode::F ? -2 : 0);
}

void add_to(Sl2Vector &acc, const Sl2Word &w, const Rational &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, fresh] = acc.emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) {
            acc.erase(it);
        }
    }
}

void add_scaled(Sl2Vector &acc, const Sl2Vector &v, const Rational &c)
{
    for (const auto &[w, x] : v) {
        add_to(acc, w, x * c);
    }
}

Rational word_weight(const Sl2Module &mod, const Sl2Word &w)
{
    Rational h = mod.verma ? mod.weight : Rational();
    for (const auto &x : w) {
        h += Rational(h_charge(x.gen));
    }
    return h;
}

Sl2Vector apply_word(const Sl2Module &mod, const Sl2Mode &x, const Sl2Word &w);

Sl2Vector apply_vector(const Sl2Module &mod, const Sl2Mode &x, const Sl2Vector &v)
{
    Sl2Vector acc;
    for (const auto &[w, c] : v) {
        add_scaled(acc, apply_word(mod, x, w), c);
    }
    return acc;
}

// x . (g1 g2 ... gr v) with the word in PBW order.
Sl2Vector apply_word(const Sl2Module &mod, const Sl2Mode &x, const Sl2Word &w)
{
    Sl2Vector out;
    if (w.empty()) {
        if (is_creation(mod, x)) {
            out.emplace(Sl2Word{x}, Rational(1));
        } else if (x.m == 0 && x.gen == Sl2Mode::H && mod.verma && !mod.weight.is_zero()) {
            out.emplace(Sl2Word{}, mod.weight);
        }
        return out;
    }
    if (is_creation(mod, x) && !(w.front() < x)) {
        Sl2Word nw{x};
        nw.insert(nw.end(), w.begin(), w.end());
        out.emplace(std::move(nw), Rational(1));
        return out;
    }
    // x g1 rest = g1 (x rest) + [x, g1] rest
    const Sl2Mode &g1 = w.front();
    Sl2Word rest(w.begin() + 1, w.end());
    Sl2Vector inner = apply_word(mod, x, rest);
    out = apply_vector(mod, g1, inner);
    Bracket b = bracket(x.gen, g1.gen);
    Sl2Vector rest_vec{{rest, Rational(1)}};
    if (b.nonzero) {
        add_scaled(out, apply_vector(mod, Sl2Mode{b.gen, x.m + g1.m}, rest_vec), b.coeff);
    }
    if (x.m + g1.m == 0) {
        Rational central = Rational(x.m) * mod.level * killing(x.gen, g1.gen);
        add_scaled(out, rest_vec, central);
    }
    return out;
}

Sl2Mode sigma(const Sl2Mode &x)
{
    Sl2Mode::Gen g = x.gen == Sl2Mode::E ? Sl2Mode::F : (x.gen == Sl2Mode::F ? Sl2Mode::E : Sl2Mode::H);
    return {g, -x.m};
}

} // namespace

bool is_creation(const Sl2Module &mod, const Sl2Mode &x)
{
    return x.m < 0 || (mod.verma && x.m == 0 && x.gen == Sl2Mode::F);
}

Sl2Vector sl2_apply(const Sl2Module &mod, const Sl2Mode &x, const Sl2Vector &v)
{
    return apply_vector(mod, x, v);
}

namespace {

std::vector<Sl2Word> words_of_degree(const Sl2Module &mod, int degree)
{
    // Multisets of creation modes with grade sum `degree`, emitted in sorted order.
    std::vector<Sl2Mode> modes;
    for (int m = -degree; m <= -1; ++m) {
        for (auto g : {Sl2Mode::E, Sl2Mode::H, Sl2Mode::F}) {
            modes.push_back({g, m});
        }
    }
    std::vector<Sl2Word> out;
    Sl2Word cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
        if (left == 0) {
            if (!mod.verma) {
                out.push_back(cur);
                return;
            }
            for (int j = 0; j <= mod.max_f0; ++j) {
                Sl2Word w = cur;
                w.insert(w.end(), static_cast<std::size_t>(j), Sl2Mode{Sl2Mode::F, 0});
                std::sort(w.begin(), w.end());
                out.push_back(std::move(w));
            }
            return;
        }
        for (std::size_t i = from; i < modes.size(); ++i) {
            if (-modes[i].m > left) {
                continue;
            }
            cur.push_back(modes[i]);
            rec(i, left + modes[i].m);
            cur.pop_back();
        }
    };
    rec(0, degree);
    for (auto &w : out) {
        std::sort(w.begin(), w.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

std::vector<Rational> weights_at(const Sl2Module &mod, int degree)
{
    std::set<Rational> ws;
    for (const auto &w : words_of_degree(mod, degree)) {
        ws.insert(word_weight(mod, w));
    }
    return {ws.rbegin(), ws.rend()};
}

std::vector<Sl2Word> pbw_basis(const Sl2Module &mod, int degree, const Rational &h_weight)
{
    std::vector<Sl2Word> out;
    for (const auto &w : words_of_degree(mod, degree)) {
        if (word_weight(mod, w) == h_weight) {
            out.push_back(w);
        }
    }
    return out;
}

Mat<Rational> gram_matrix(const Sl2Module &mod, const std::vector<Sl2Word> &basis)
{
    std::size_t n = basis.size();
    Mat<Rational> g = zero_matrix<Rational>(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // sigma(g1 ... gr) = sigma(gr) ... sigma(g1): sigma(g1) acts first.
            Sl2Vector v{{basis[j], Rational(1)}};
            for (const auto &x : basis[i]) {
                v = apply_vector(mod, sigma(x), v);
            }
            auto it = v.find(Sl2Word{});
            g[i][j] = it == v.end() ? Rational() : it->second;
        }
    }
    return g;
}

std::vector<SingularVector> singular_vector_search(const Sl2Module &mod, int degree)
{
    std::vector<SingularVector> out;
    if (degree < 1) {
        return out; // the highest-weight vector itself is excluded
    }
    if (degree > 6) {
        throw WindowOverflow("singular vector search is limited to degree <= 6");
    }
    std::vector<Sl2Mode> raising{{Sl2Mode::E, 0}};
    for (int m = 1; m <= degree; ++m) {
        for (auto g : {Sl2Mode::E, Sl2Mode::H, Sl2Mode::F}) {
            raising.push_back({g, m});
        }
    }
    for (const auto &hw : weights_at(mod, degree)) {
        auto basis = pbw_basis(mod, degree, hw);
        // In the truncated Verma slice the lowest f_0 powers are not closed; skip weights
        // that the f_0 bound may have cut.
        if (mod.verma && hw < mod.weight - Rational(2 * mod.max_f0 - 2 * degree)) {
            continue;
        }
        std::map<Sl2Word, std::size_t> row_of;
        std::vector<std::vector<Sl2Vector>> images(basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            for (const auto &x : raising) {
                images[j].push_back(apply_word(mod, x, basis[j]));
            }
        }
        // Rows are (raising operator, result word) pairs.
        std::map<std::pair<std::size_t, Sl2Word>, std::size_t> rows;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            for (std::size_t r = 0; r < raising.size(); ++r) {
                for (const auto &[w, c] : images[j][r]) {
                    rows.emplace(std::make_pair(r, w), rows.size());
                }
            }
        }
        Mat<Rational> m = zero_matrix<Rational>(rows.size(), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            for (std::size_t r = 0; r < raising.size(); ++r) {
                for (const auto &[w, c] : images[j][r]) {
                    m[rows.at({r, w})][j] = c;
                }
            }
        }
        auto null = nullspace(m, basis.size());
        rref(null);
        for (const auto &v : null) {
            Sl2Vector vec;
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (!v[j].is_zero()) {
                    vec.emplace(basis[j], v[j]);
                }
            }
            out.push_back({degree, hw, std::move(vec)});
        }
    }
    return out;
}

std::string sl2_str(const Sl2Vector &v)
{
    if (v.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    const char *names = "ehf";
    for (const auto &[w, c] : v) {
        os << (first ? "" : " + ") << c;
        for (const auto &x : w) {
            os << "*" << names[x.gen] << "_" << x.m;
        }
        os << "|v>";
        first = false;
    }
    return os.str();
}

} // namespace opergr
