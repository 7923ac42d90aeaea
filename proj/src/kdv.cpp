#include "opergr/kdv.hpp"

#include "opergr/errors.hpp"

namespace opergr {

DualPsiDO lift_dual(const PsiDO &p, const PsiDO &direction)
{
    DualPsiDO out(p.floor());
    for (const auto &[i, c] : p.terms()) {
        const Series *e = direction.find(i);
        out.set(i, DualSeries{c, e ? *e : constant_like(c, Rational())});
    }
    for (const auto &[i, e] : direction.terms()) {
        if (!p.find(i)) {
            out.set(i, DualSeries{constant_like(e, Rational()), e});
        }
    }
    return out;
}

PsiDO eps_part(const DualPsiDO &p)
{
    PsiDO out(p.floor());
    for (const auto &[i, c] : p.terms()) {
        out.set(i, c.eps);
    }
    out.set_depth(p.depth());
    return out;
}

namespace {

template <class C>
BasicPsiDO<C> positive_power(const BasicPsiDO<C> &l, int n, int r)
{
    BasicPsiDO<C> root = pdo_nth_root(l, n);
    return pdo_power(root, r, 0).plus_part();
}

void check_flow_index(const ScalarOper &s, int r)
{
    if (s.n < 1 || static_cast<int>(s.q.size()) != s.n) {
        throw BadArgument("scalar oper needs n coefficients");
    }
    if (r < 1) {
        throw BadArgument("flow index must be positive");
    }
}

} // namespace

PsiDO lax_generator(const ScalarOper &s, int r, int depth)
{
    check_flow_index(s, r);
    return positive_power(s.to_psido(depth), s.n, r);
}

LaxFlow lax_rhs(const ScalarOper &s, int r, int depth)
{
    PsiDO l = s.to_psido(depth);
    PsiDO b = lax_generator(s, r, depth);
    LaxFlow out;
    out.commutator = pdo_commutator(b, l);
    out.trusted_depth = depth;
    Series zero = constant_like(s.q.front(), Rational());
    for (int i = 1; i <= s.n; ++i) {
        const Series *c = out.commutator.find(s.n - i);
        out.dq.push_back(c ? -*c : zero);
    }
    return out;
}

Series conserved_density(const ScalarOper &s, int k, int depth)
{
    check_flow_index(s, k);
    PsiDO root = pdo_nth_root(s.to_psido(depth), s.n);
    return pdo_residue(pdo_power(root, k, -1));
}

Series conserved_density_variation(const ScalarOper &s, int k, const PsiDO &direction, int depth)
{
    check_flow_index(s, k);
    DualPsiDO l = lift_dual(s.to_psido(depth), direction);
    DualPsiDO root = pdo_nth_root(l, s.n);
    return pdo_residue(pdo_power(root, k, -1)).eps;
}

PsiDO zs_residual(const ScalarOper &s, int r, int k, int depth)
{
    check_flow_index(s, r);
    check_flow_index(s, k);
    PsiDO l = s.to_psido(depth);
    PsiDO br = lax_generator(s, r, depth);
    PsiDO bs = lax_generator(s, k, depth);
    PsiDO d_r_bs = eps_part(positive_power(lift_dual(l, pdo_commutator(br, l)), s.n, k));
    PsiDO d_s_br = eps_part(positive_power(lift_dual(l, pdo_commutator(bs, l)), s.n, r));
    return d_r_bs - d_s_br - pdo_commutator(br, bs);
}

PsiDO mkdv_intertwine_check(const MiuraOper &m, int r, int depth)
{
    if (m.n != 2 || m.chi.size() != 2) {
        throw Unsupported("the Miura intertwining is only implemented for n = 2");
    }
    const Series &chi = m.chi[0];
    if (!(chi + m.chi[1]).is_zero()) {
        throw BadArgument("expected chi_2 = -chi_1");
    }
    Series chi_t;
    if (r == 1) {
        chi_t = chi.derivative();
    } else if (r == 3) {
        Series d1 = chi.derivative();
        chi_t = (d1.derivative().derivative() - chi * chi * d1 * Rational(6)) * Rational(1, 4);
    } else {
        throw Unsupported("mKdV flow only pinned for r = 1 and r = 3");
    }
    ScalarOper kdv_side = miura_transform(m);
    LaxFlow flow = lax_rhs(kdv_side, r, depth);

    int order = working_order(m.chi, 12) + 2;
    DualSeries one{Series::constant(Rational(1), order, chi.pole_floor()), Series(order, chi.pole_floor())};
    std::vector<DualSeries> dchi{DualSeries{chi, chi_t}, DualSeries{-chi, -chi_t}};
    DualPsiDO pushed = miura_product(dchi, one, -1);

    PsiDO residual(depth);
    for (int i = 1; i <= 2; ++i) {
        const DualSeries *c = pushed.find(2 - i);
        Series dq = c ? -c->eps : Series(order);
        residual.set(2 - i, dq - flow.dq[static_cast<std::size_t>(i - 1)]);
    }
    return residual;
}

} // namespace opergr
