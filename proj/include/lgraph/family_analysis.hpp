#pragma once

// Tangential families in adapted form f = (xi + t, u(xi, t)) with support the
// x-axis: invariants, Legendrian graph parameterization, classification and
// projection normal forms.

#include <lgraph/jet_algebra.hpp>

#include <optional>
#include <string>

namespace lgraph {

/// Raised when u(xi, 0) or d_t u(xi, 0) does not vanish identically.
class not_tangential_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct FamilyGerm {
    TruncatedPoly u;
    Rational k0;     // coefficient of t^2
    Rational k1;     // coefficient of t^2 xi
    Rational alpha;  // coefficient of t^3
};

FamilyGerm extract_invariants(const TruncatedPoly& u);

/// u = k0 t^2 + alpha t^3 + k1 t^2 xi + higher. Invariants are re-read from
/// the sum, so a tail touching t^2, t^3 or t^2 xi shifts them.
FamilyGerm family_from_invariants(const Rational& k0, const Rational& k1, const Rational& alpha,
                                  const std::optional<TruncatedPoly>& higher = std::nullopt,
                                  int cap = default_cap);

/// The planar family map (xi + t, u).
MapGerm family_map(const FamilyGerm& g);

/// (xi + t, u, d_t u) followed by (xi, t) -> (xi - t, t).
MapGerm legendrian_parameterization(const FamilyGerm& g);

/// (alpha - k1)(k1 - 3 alpha) / k1^2; empty when k1 = 0.
std::optional<Rational> invariant_a(const FamilyGerm& g);

enum class LabelKind { type_i, a1_plus, a1_minus, h_branch, a_branch, not_tangential, indeterminate };

std::string to_string(LabelKind kind);

/// Branch index n of H_n / A_n. When unresolved, `value` is a lower bound.
struct BranchIndex {
    int value = 0;
    bool resolved = false;
};

struct SingularityLabel {
    LabelKind kind = LabelKind::indeterminate;
    std::optional<Rational> a;
    /// Normal form (xi, t^3 + t^2 xi + a t xi^2, t^2 + b t^3) (or the Fold)
    /// applies: a not in {-1, 0} and a < 1/3.
    bool projection_normal_form_applicable = false;
    std::optional<BranchIndex> branch;
    /// Working order used for branch probing / indeterminacy.
    int order = 0;
    /// A_e-codimension of the Legendrian parameterization at `order`.
    std::optional<std::size_t> ae_codimension;
};

SingularityLabel classify(const FamilyGerm& g, int order);
/// As above, but a non-tangential u yields a NotTangential label.
SingularityLabel classify(const TruncatedPoly& u, int order);

/// F_{a,b} = (xi, t^3 + t^2 xi + a t xi^2, t^2 + b t^3); rejects a in {-1, 0}
/// and a >= 1/3.
MapGerm normal_form(const Rational& a, const Rational& b, int cap = default_cap);
/// F_{a,b} without the parameter restrictions.
MapGerm normal_form_unchecked(const Rational& a, const Rational& b, int cap = default_cap);
/// (xi, t^2, t).
MapGerm fold_normal_form(int cap = default_cap);

}  // namespace lgraph
