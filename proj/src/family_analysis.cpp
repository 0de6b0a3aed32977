#include <lgraph/family_analysis.hpp>
#include <lgraph/tangent_spaces.hpp>

#include <algorithm>

namespace lgraph {

namespace {

Multidegree src(int i, int j) { return Multidegree(VarSet::source, {i, j}); }

}  // namespace

FamilyGerm extract_invariants(const TruncatedPoly& u)
{
    if (u.vars() != VarSet::source) throw usage_error("u must be a jet in (xi, t)");
    for (const auto& [m, c] : u.terms()) {
        if (m[var::t] == 0)
            throw not_tangential_error("u(xi, 0) does not vanish: term " + to_string(m));
        if (m[var::t] == 1)
            throw not_tangential_error("d_t u(xi, 0) does not vanish: term " + to_string(m));
    }
    return FamilyGerm{u, u.coeff(src(0, 2)), u.coeff(src(1, 2)), u.coeff(src(0, 3))};
}

FamilyGerm family_from_invariants(const Rational& k0, const Rational& k1, const Rational& alpha,
                                  const std::optional<TruncatedPoly>& higher, int cap)
{
    TruncatedPoly u(VarSet::source, cap);
    u.add_term(src(0, 2), k0);
    u.add_term(src(0, 3), alpha);
    u.add_term(src(1, 2), k1);
    if (higher) u = add(u, higher->with_cap(cap));
    return extract_invariants(u);
}

MapGerm family_map(const FamilyGerm& g)
{
    const int cap = g.u.cap();
    return MapGerm{add(TruncatedPoly::variable(VarSet::source, var::xi, cap),
                       TruncatedPoly::variable(VarSet::source, var::t, cap)),
                   g.u};
}

MapGerm legendrian_parameterization(const FamilyGerm& g)
{
    const int cap = g.u.cap();
    const auto xi = TruncatedPoly::variable(VarSet::source, var::xi, cap);
    const auto t = TruncatedPoly::variable(VarSet::source, var::t, cap);
    const auto shifted_xi = sub(xi, t);
    return MapGerm{substitute(add(xi, t), shifted_xi, t), substitute(g.u, shifted_xi, t),
                   substitute(derive(g.u, var::t), shifted_xi, t)};
}

std::optional<Rational> invariant_a(const FamilyGerm& g)
{
    if (g.k1 == 0) return std::nullopt;
    Rational a = (g.alpha - g.k1) * (g.k1 - 3 * g.alpha) / (g.k1 * g.k1);
    a.canonicalize();
    return a;
}

std::string to_string(LabelKind kind)
{
    switch (kind) {
    case LabelKind::type_i: return "TypeI";
    case LabelKind::a1_plus: return "A1Plus";
    case LabelKind::a1_minus: return "A1Minus";
    case LabelKind::h_branch: return "HBranch";
    case LabelKind::a_branch: return "ABranch";
    case LabelKind::not_tangential: return "NotTangential";
    case LabelKind::indeterminate: return "IndeterminateAtOrder";
    }
    return "?";
}

SingularityLabel classify(const FamilyGerm& g, int order)
{
    if (order < 1 || order > g.u.cap() - 1)
        throw usage_error("working order must lie in 1..cap-1, got " + std::to_string(order));

    SingularityLabel label;
    label.order = order;
    if (g.k0 != 0) {
        label.kind = LabelKind::type_i;
        label.projection_normal_form_applicable = true;
        return label;
    }

    label.a = invariant_a(g);
    if (label.a) {
        const Rational& a = *label.a;
        label.projection_normal_form_applicable = a != -1 && a != 0 && a < Rational(1, 3);
    }

    if (g.k1 == 0 || g.k1 == g.alpha) {
        label.kind = LabelKind::indeterminate;
        return label;
    }

    const bool h_branch = 2 * g.k1 == 3 * g.alpha;
    const bool a_branch = g.k1 == 3 * g.alpha;
    if (!h_branch && !a_branch) {
        label.kind = *label.a > 0 ? LabelKind::a1_plus : LabelKind::a1_minus;
        return label;
    }

    label.kind = h_branch ? LabelKind::h_branch : LabelKind::a_branch;
    // H_n and S_n (here A_n) both have A_e-codimension n
    const auto T = build_extended(legendrian_parameterization(g), SpaceKind::a_extended, order);
    const auto sat = saturation_degrees(T);
    label.ae_codimension = T.codimension();
    label.branch = BranchIndex{static_cast<int>(T.codimension()),
                               std::all_of(sat.begin(), sat.end(), [&](int d) { return d <= order - 1; })};
    return label;
}

SingularityLabel classify(const TruncatedPoly& u, int order)
{
    try {
        return classify(extract_invariants(u), order);
    } catch (const not_tangential_error&) {
        SingularityLabel label;
        label.kind = LabelKind::not_tangential;
        label.order = order;
        return label;
    }
}

MapGerm normal_form_unchecked(const Rational& a, const Rational& b, int cap)
{
    if (cap < 3) throw usage_error("the normal form needs a cap of at least 3");
    TruncatedPoly x = TruncatedPoly::variable(VarSet::source, var::xi, cap);
    TruncatedPoly y(VarSet::source, cap);
    y.add_term(src(0, 3), 1);
    y.add_term(src(1, 2), 1);
    y.add_term(src(2, 1), a);
    TruncatedPoly z(VarSet::source, cap);
    z.add_term(src(0, 2), 1);
    z.add_term(src(0, 3), b);
    return MapGerm{x, y, z};
}

MapGerm normal_form(const Rational& a, const Rational& b, int cap)
{
    if (a == -1) throw usage_error("normal form parameter a must differ from -1");
    if (a == 0) throw usage_error("normal form parameter a must differ from 0");
    if (a >= Rational(1, 3)) throw usage_error("normal form parameter a must be below 1/3");
    return normal_form_unchecked(a, b, cap);
}

MapGerm fold_normal_form(int cap)
{
    if (cap < 2) throw usage_error("the fold needs a cap of at least 2");
    return MapGerm{TruncatedPoly::variable(VarSet::source, var::xi, cap),
                   TruncatedPoly::monomial(src(0, 2), cap), TruncatedPoly::variable(VarSet::source, var::t, cap)};
}

}  // namespace lgraph
