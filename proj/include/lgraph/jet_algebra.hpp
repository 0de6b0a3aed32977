#pragma once

// Truncated polynomial jets in the source variables (xi, t) and the target
// variables (x, y, z), with exact rational coefficients.

#include <lgraph/rational.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lgraph {

enum class VarSet : std::uint8_t { source, target };

constexpr int arity(VarSet vars) noexcept { return vars == VarSet::source ? 2 : 3; }

/// Variable indices. Source: xi = 0, t = 1. Target: x = 0, y = 1, z = 2.
namespace var {
inline constexpr int xi = 0;
inline constexpr int t = 1;
inline constexpr int x = 0;
inline constexpr int y = 1;
inline constexpr int z = 2;
}  // namespace var

inline constexpr int default_cap = 8;

/// Exponent vector of a monomial. Ordered graded-lexicographically: total
/// degree first, then larger exponent of the earlier variable first, so the
/// degree-2 source monomials come out as xi^2, xi t, t^2.
class Multidegree {
public:
    Multidegree() = default;
    Multidegree(VarSet vars, std::initializer_list<int> exponents);
    Multidegree(VarSet vars, std::span<const int> exponents);

    static Multidegree one(VarSet vars) { return Multidegree(vars, std::array<int, 3>{}); }
    static Multidegree unit(VarSet vars, int variable);

    VarSet vars() const noexcept { return vars_; }
    int size() const noexcept { return arity(vars_); }
    int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
    int total() const noexcept { return exps_[0] + exps_[1] + exps_[2]; }

    Multidegree operator+(const Multidegree& other) const;

    friend bool operator==(const Multidegree& a, const Multidegree& b) = default;
    friend std::strong_ordering operator<=>(const Multidegree& a, const Multidegree& b);

private:
    Multidegree(VarSet vars, std::array<int, 3> exps) : vars_(vars), exps_(exps) {}

    VarSet vars_ = VarSet::source;
    std::array<int, 3> exps_{};
};

/// All multidegrees with lo <= total <= hi, in graded-lex order.
std::vector<Multidegree> monomial_basis(VarSet vars, int lo, int hi);

/// Number of monomials of total degree 0..n in `vars`.
std::size_t jet_dimension(VarSet vars, int n);

/// Polynomial jet truncated at total degree `cap`; canonical sparse form with
/// no zero coefficients.
class TruncatedPoly {
public:
    using Terms = std::map<Multidegree, Rational>;

    TruncatedPoly(VarSet vars, int cap);

    static TruncatedPoly constant(VarSet vars, int cap, const Rational& c);
    static TruncatedPoly monomial(const Multidegree& m, int cap, const Rational& c = 1);
    /// The coordinate function of `variable`.
    static TruncatedPoly variable(VarSet vars, int variable, int cap);

    VarSet vars() const noexcept { return vars_; }
    int cap() const noexcept { return cap_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Coefficient of `m`, zero when absent.
    Rational coeff(const Multidegree& m) const;
    /// Adds `c` to the coefficient of `m`; terms above the cap are discarded.
    void add_term(const Multidegree& m, const Rational& c);

    /// Lowest total degree carrying a nonzero term; cap + 1 for zero.
    int order() const;
    /// Highest total degree carrying a nonzero term; -1 for zero.
    int degree() const;
    /// True when every term has total degree exactly `d`.
    bool is_homogeneous(int d) const;

    /// Same terms, re-truncated at a new cap.
    TruncatedPoly with_cap(int new_cap) const;

    double evaluate(std::span<const double> point) const;

    friend bool operator==(const TruncatedPoly& a, const TruncatedPoly& b);

    TruncatedPoly operator-() const;
    TruncatedPoly& operator*=(const Rational& s);

private:
    VarSet vars_;
    int cap_;
    Terms terms_;
};

TruncatedPoly add(const TruncatedPoly& p, const TruncatedPoly& q);
TruncatedPoly sub(const TruncatedPoly& p, const TruncatedPoly& q);
TruncatedPoly mul(const TruncatedPoly& p, const TruncatedPoly& q);
TruncatedPoly scale(const TruncatedPoly& p, const Rational& s);
TruncatedPoly power(const TruncatedPoly& p, int n);
/// Formal partial derivative. Stored at the same cap; only degrees <= cap-1
/// are trustworthy when `p` itself is a truncation.
TruncatedPoly derive(const TruncatedPoly& p, int variable);
/// Drops every term of total degree > n.
TruncatedPoly jet(const TruncatedPoly& p, int n);

inline TruncatedPoly operator+(const TruncatedPoly& p, const TruncatedPoly& q) { return add(p, q); }
inline TruncatedPoly operator-(const TruncatedPoly& p, const TruncatedPoly& q) { return sub(p, q); }
inline TruncatedPoly operator*(const TruncatedPoly& p, const TruncatedPoly& q) { return mul(p, q); }
inline TruncatedPoly operator*(const Rational& s, const TruncatedPoly& p) { return scale(p, s); }

/// A map germ (R^2, 0) -> (R^k, 0), k in {2, 3}, given by source jets with a
/// common cap and vanishing constant terms.
class MapGerm {
public:
    explicit MapGerm(std::vector<TruncatedPoly> components);
    MapGerm(std::initializer_list<TruncatedPoly> components)
        : MapGerm(std::vector<TruncatedPoly>(components)) {}

    int size() const noexcept { return static_cast<int>(components_.size()); }
    int cap() const noexcept { return components_.front().cap(); }
    const TruncatedPoly& operator[](int i) const { return components_.at(static_cast<std::size_t>(i)); }
    const std::vector<TruncatedPoly>& components() const noexcept { return components_; }

    friend bool operator==(const MapGerm& a, const MapGerm& b) = default;

private:
    std::vector<TruncatedPoly> components_;
};

/// g(f_1, ..., f_k) for g in the target variables, truncated at f's cap.
TruncatedPoly compose(const TruncatedPoly& g, const MapGerm& f);

/// Substitutes source variables by source jets: p(s_xi, s_t). The substitutes
/// must vanish at the origin.
TruncatedPoly substitute(const TruncatedPoly& p, const TruncatedPoly& s_xi, const TruncatedPoly& s_t);

// Text form, e.g. "1 t^3 + 1 t^2 xi + 1/5 t xi^2".

std::string to_string(const Multidegree& m);
std::string to_string(const TruncatedPoly& p);
std::string to_string(const MapGerm& f);

/// Inverse of to_string; also accepts omitted unit coefficients, '*'
/// separators, decimals and the names "ξ"/"xi". Terms above `cap` are dropped.
TruncatedPoly parse_poly(std::string_view text, VarSet vars, int cap = default_cap);

std::string_view variable_name(VarSet vars, int variable);

}  // namespace lgraph
