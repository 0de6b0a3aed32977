#pragma once

// Tangent spaces of map germs (R^2,0) -> (R^3,0) under the left-right group A
// and its fibered subgroup A* (target diffeomorphisms preserving the
// projection (x,y,z) -> (x,y)), realized as exact subspaces of truncated jet
// space.

#include <lgraph/jet_algebra.hpp>
#include <lgraph/row_space.hpp>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lgraph {

/// An element of the free module E^3 over the source ring, modulo the cap.
struct JetVector {
    std::array<TruncatedPoly, 3> slots;

    static JetVector zero(int cap);
    /// `p` in slot `slot`, zero elsewhere.
    static JetVector in_slot(int slot, const TruncatedPoly& p);

    int cap() const { return slots[0].cap(); }
    bool is_zero() const;
    friend bool operator==(const JetVector&, const JetVector&) = default;
};

std::string to_string(const JetVector& v);

/// Coordinates of the jet space J = (jets of degree <= max_degree[s]) over the
/// three slots, flattened slot-major, each slot in graded-lex order.
class JetCoordinates {
public:
    explicit JetCoordinates(std::array<int, 3> max_degree);
    static JetCoordinates uniform(int order) { return JetCoordinates({order, order, order}); }

    const std::array<int, 3>& max_degree() const noexcept { return max_degree_; }
    std::size_t dimension() const noexcept { return offsets_[3]; }
    std::size_t slot_dimension(int slot) const;
    std::size_t index(int slot, const Multidegree& m) const;
    /// (slot, monomial) at a flat index.
    std::pair<int, Multidegree> at(std::size_t index) const;

    /// Coefficients of `v` in these coordinates; terms above the slot's max
    /// degree are dropped.
    std::vector<Rational> flatten(const JetVector& v) const;
    JetVector unflatten(std::span<const Integer> coords, int cap) const;

private:
    std::array<int, 3> max_degree_;
    std::array<std::size_t, 4> offsets_{};
};

enum class SpaceKind { a_extended, astar_extended, astar_reduced };

std::string to_string(SpaceKind kind);

/// Which generator family produced a row.
struct Provenance {
    enum class Family { source_xi, source_t, pullback } family;
    int slot = -1;             // pullback slot, -1 for source rows
    Multidegree multiplier;    // source monomial or target monomial
    friend bool operator==(const Provenance&, const Provenance&) = default;
};

std::string to_string(const Provenance& p);

struct Generator {
    JetVector vector;
    Provenance provenance;
};

/// Default multiplier-degree threshold for the positive-order source part of
/// the reduced tangent space.
inline constexpr int default_reduced_source_degree = 2;

/// Raw generator rows of the tangent space, truncated at `order`:
/// monomial multiples of the partials (multiplier degree >= source_min_degree
/// up to order) and the target pullbacks allowed for `kind`.
std::vector<Generator> tangent_generators(const MapGerm& f, SpaceKind kind, int order,
                                          int source_min_degree);

class TangentSpaceBasis {
public:
    TangentSpaceBasis(SpaceKind kind, MapGerm germ, int order, int source_min_degree);

    SpaceKind kind() const noexcept { return kind_; }
    const MapGerm& germ() const noexcept { return germ_; }
    int order() const noexcept { return order_; }
    /// Multiplier-degree threshold of the source part (0 for extended spaces).
    int source_min_degree() const noexcept { return source_min_degree_; }
    const JetCoordinates& coordinates() const noexcept { return coords_; }
    const RowSpace& space() const noexcept { return space_; }
    /// Provenance of each generator that raised the rank, in insertion order.
    const std::vector<Provenance>& provenances() const noexcept { return provenances_; }

    std::size_t rank() const noexcept { return space_.rank(); }
    std::size_t codimension() const noexcept { return coords_.dimension() - space_.rank(); }
    bool contains(const JetVector& v) const;

private:
    SpaceKind kind_;
    MapGerm germ_;
    int order_;
    int source_min_degree_;
    JetCoordinates coords_;
    RowSpace space_;
    std::vector<Provenance> provenances_;
};

/// T_eA(f) or T_eA*(f) at working order W (W <= cap - 1).
TangentSpaceBasis build_extended(const MapGerm& f, SpaceKind kind, int order);

/// T_rA*(f): positive-order source part plus the M* pullbacks.
TangentSpaceBasis build_reduced(const MapGerm& f, int order,
                                int source_min_degree = default_reduced_source_degree);

struct MonomialTriple {
    int slot;
    Multidegree monomial;
    friend bool operator==(const MonomialTriple&, const MonomialTriple&) = default;
};

std::string to_string(const MonomialTriple& w);

/// Verdict of an ideal-block inclusion m^p x m^q x m^r in T, certified modulo
/// degree order + 1.
struct BlockCertificate {
    bool holds = false;
    std::array<int, 3> block{};
    int order = 0;
    std::optional<MonomialTriple> witness;
};

BlockCertificate contains_ideal_block(const TangentSpaceBasis& T, int p, int q, int r);

/// Per slot, the smallest degree d such that every monomial of degree d..W in
/// that slot lies in T (W + 1 when even degree W is not saturated).
std::array<int, 3> saturation_degrees(const TangentSpaceBasis& T);

/// One jet-sufficiency step: is R in T_rA*(f) modulo
/// m^{p+1} x m^{q+1} x m^{r+1}, R homogeneous of degrees (p, q, r)?
bool jet_sufficiency_step(const MapGerm& f, const JetVector& R, std::array<int, 3> degrees,
                          int source_min_degree = default_reduced_source_degree);

struct MiniversalityVerdict {
    int order = 0;
    std::size_t rank = 0;
    std::size_t codimension = 0;
    std::array<int, 3> saturation{};
    /// Every slot saturated at degrees W-1 and W, so the jet-space quotient is
    /// the full quotient.
    bool saturated = false;
    /// T + span(complement) is the whole jet space.
    bool spans_all = false;
    /// The complement vectors are independent modulo T.
    bool direct = false;
    /// saturated && spans_all && direct.
    bool spans = false;
    /// Indices of complement vectors that are redundant modulo T + earlier ones.
    std::vector<std::size_t> redundant;
    /// Monomial triples completing T + span(complement) to the jet space.
    std::vector<MonomialTriple> defect_basis;
};

MiniversalityVerdict miniversality_check(const MapGerm& f, std::span<const JetVector> complement, int order);

/// Monomial triples spanning a complement of T (lowest degrees first).
std::vector<MonomialTriple> normal_space_monomials(const TangentSpaceBasis& T);

}  // namespace lgraph
