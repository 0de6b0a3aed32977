#include <lgraph/tangent_spaces.hpp>

#include <algorithm>

namespace lgraph {

// ---------------------------------------------------------------------------
// JetVector
// ---------------------------------------------------------------------------

JetVector JetVector::zero(int cap)
{
    TruncatedPoly z(VarSet::source, cap);
    return JetVector{{z, z, z}};
}

JetVector JetVector::in_slot(int slot, const TruncatedPoly& p)
{
    if (slot < 0 || slot > 2) throw usage_error("slot index outside 0..2");
    if (p.vars() != VarSet::source) throw usage_error("jet vector entries are source jets");
    JetVector v = zero(p.cap());
    v.slots[static_cast<std::size_t>(slot)] = p;
    return v;
}

bool JetVector::is_zero() const
{
    return std::all_of(slots.begin(), slots.end(), [](const TruncatedPoly& p) { return p.is_zero(); });
}

std::string to_string(const JetVector& v)
{
    return "(" + to_string(v.slots[0]) + ", " + to_string(v.slots[1]) + ", " + to_string(v.slots[2]) + ")";
}

// ---------------------------------------------------------------------------
// JetCoordinates
// ---------------------------------------------------------------------------

JetCoordinates::JetCoordinates(std::array<int, 3> max_degree) : max_degree_(max_degree)
{
    offsets_[0] = 0;
    for (std::size_t s = 0; s < 3; ++s) offsets_[s + 1] = offsets_[s] + jet_dimension(VarSet::source, max_degree_[s]);
}

std::size_t JetCoordinates::slot_dimension(int slot) const
{
    auto s = static_cast<std::size_t>(slot);
    return offsets_.at(s + 1) - offsets_.at(s);
}

std::size_t JetCoordinates::index(int slot, const Multidegree& m) const
{
    // position of (i, d - i) in graded-lex order: all lower degrees, then xi-heavy first
    const int d = m.total();
    if (d > max_degree_.at(static_cast<std::size_t>(slot))) throw usage_error("monomial above the slot's degree");
    return offsets_[static_cast<std::size_t>(slot)] + jet_dimension(VarSet::source, d - 1) +
           static_cast<std::size_t>(d - m[var::xi]);
}

std::pair<int, Multidegree> JetCoordinates::at(std::size_t index) const
{
    if (index >= dimension()) throw usage_error("coordinate index out of range");
    int slot = 0;
    while (index >= offsets_[static_cast<std::size_t>(slot) + 1]) ++slot;
    std::size_t local = index - offsets_[static_cast<std::size_t>(slot)];
    int d = 0;
    while (jet_dimension(VarSet::source, d) <= local) ++d;
    const int k = static_cast<int>(local - jet_dimension(VarSet::source, d - 1));
    return {slot, Multidegree(VarSet::source, {d - k, k})};
}

std::vector<Rational> JetCoordinates::flatten(const JetVector& v) const
{
    std::vector<Rational> out(dimension());
    for (int s = 0; s < 3; ++s) {
        for (const auto& [m, c] : v.slots[static_cast<std::size_t>(s)].terms()) {
            if (m.total() > max_degree_[static_cast<std::size_t>(s)]) break;
            out[index(s, m)] = c;
        }
    }
    return out;
}

JetVector JetCoordinates::unflatten(std::span<const Integer> coords, int cap) const
{
    if (coords.size() != dimension()) throw usage_error("coordinate vector has the wrong length");
    JetVector v = JetVector::zero(cap);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        auto [slot, m] = at(i);
        v.slots[static_cast<std::size_t>(slot)].add_term(m, Rational(coords[i]));
    }
    return v;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

std::string to_string(SpaceKind kind)
{
    switch (kind) {
    case SpaceKind::a_extended: return "A-extended";
    case SpaceKind::astar_extended: return "A*-extended";
    case SpaceKind::astar_reduced: return "A*-reduced";
    }
    return "?";
}

std::string to_string(const Provenance& p)
{
    switch (p.family) {
    case Provenance::Family::source_xi: return to_string(p.multiplier) + " * d_xi f";
    case Provenance::Family::source_t: return to_string(p.multiplier) + " * d_t f";
    case Provenance::Family::pullback:
        return "slot " + std::to_string(p.slot + 1) + " <- " + to_string(p.multiplier) + " o f";
    }
    return "?";
}

namespace {

bool in_mstar(int slot, const Multidegree& mu)
{
    const int d = mu.total();
    const bool uses_z = mu[var::z] != 0;
    switch (slot) {
    case 0: return !uses_z && (d >= 2 || mu == Multidegree::unit(VarSet::target, var::y));
    case 1: return !uses_z && (d >= 2 || mu == Multidegree::unit(VarSet::target, var::x));
    default: return d >= 2 || (d == 1 && !uses_z);
    }
}

bool allowed_pullback(SpaceKind kind, int slot, const Multidegree& mu)
{
    switch (kind) {
    case SpaceKind::a_extended: return true;
    case SpaceKind::astar_extended: return slot == 2 || mu[var::z] == 0;
    case SpaceKind::astar_reduced: return in_mstar(slot, mu);
    }
    return false;
}

}  // namespace

std::vector<Generator> tangent_generators(const MapGerm& f, SpaceKind kind, int order, int source_min_degree)
{
    if (f.size() != 3) throw usage_error("tangent spaces are built for germs with three components");
    if (order < 0 || order > f.cap()) throw usage_error("working order outside 0..cap");

    const int cap = f.cap();
    std::vector<Generator> out;

    std::array<TruncatedPoly, 3> d_xi{derive(f[0], var::xi), derive(f[1], var::xi), derive(f[2], var::xi)};
    std::array<TruncatedPoly, 3> d_t{derive(f[0], var::t), derive(f[1], var::t), derive(f[2], var::t)};
    for (const auto& m : monomial_basis(VarSet::source, source_min_degree, order)) {
        const auto mono = TruncatedPoly::monomial(m, cap);
        JetVector a{{jet(mul(mono, d_xi[0]), order), jet(mul(mono, d_xi[1]), order), jet(mul(mono, d_xi[2]), order)}};
        JetVector b{{jet(mul(mono, d_t[0]), order), jet(mul(mono, d_t[1]), order), jet(mul(mono, d_t[2]), order)}};
        out.push_back({std::move(a), {Provenance::Family::source_xi, -1, m}});
        out.push_back({std::move(b), {Provenance::Family::source_t, -1, m}});
    }

    // powers[i][k] = f_i^k truncated at `order`; f in m so degree-k pullbacks start at degree k
    std::array<std::vector<TruncatedPoly>, 3> powers;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto fi = jet(f[static_cast<int>(i)], order);
        powers[i].push_back(TruncatedPoly::constant(VarSet::source, cap, 1));
        for (int k = 1; k <= order; ++k) powers[i].push_back(jet(mul(powers[i].back(), fi), order));
    }
    for (const auto& mu : monomial_basis(VarSet::target, 0, order)) {
        bool any = false;
        for (int s = 0; s < 3; ++s) any = any || allowed_pullback(kind, s, mu);
        if (!any) continue;
        auto value = mul(mul(powers[0][static_cast<std::size_t>(mu[0])], powers[1][static_cast<std::size_t>(mu[1])]),
                         powers[2][static_cast<std::size_t>(mu[2])]);
        for (int s = 0; s < 3; ++s) {
            if (!allowed_pullback(kind, s, mu)) continue;
            out.push_back({JetVector::in_slot(s, value), {Provenance::Family::pullback, s, mu}});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// TangentSpaceBasis
// ---------------------------------------------------------------------------

TangentSpaceBasis::TangentSpaceBasis(SpaceKind kind, MapGerm germ, int order, int source_min_degree)
    : kind_(kind),
      germ_(std::move(germ)),
      order_(order),
      source_min_degree_(source_min_degree),
      coords_(JetCoordinates::uniform(order)),
      space_(coords_.dimension())
{
    if (germ_.size() != 3) throw usage_error("tangent spaces are built for germs with three components");
    if (order < 0 || order > germ_.cap() - 1)
        throw usage_error("working order " + std::to_string(order) + " exceeds cap - 1 = " +
                          std::to_string(germ_.cap() - 1));
    for (const auto& g : tangent_generators(germ_, kind_, order_, source_min_degree_)) {
        if (g.vector.is_zero()) continue;
        if (space_.insert(coords_.flatten(g.vector))) provenances_.push_back(g.provenance);
    }
}

bool TangentSpaceBasis::contains(const JetVector& v) const { return space_.contains(coords_.flatten(v)); }

TangentSpaceBasis build_extended(const MapGerm& f, SpaceKind kind, int order)
{
    if (kind == SpaceKind::astar_reduced) throw usage_error("use build_reduced for the reduced tangent space");
    return TangentSpaceBasis(kind, f, order, 0);
}

TangentSpaceBasis build_reduced(const MapGerm& f, int order, int source_min_degree)
{
    if (source_min_degree < 0) throw usage_error("source multiplier degree must be non-negative");
    return TangentSpaceBasis(SpaceKind::astar_reduced, f, order, source_min_degree);
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

std::string to_string(const MonomialTriple& w)
{
    const TruncatedPoly m = TruncatedPoly::monomial(w.monomial, std::max(w.monomial.total(), 0));
    JetVector v = JetVector::zero(m.cap());
    v.slots[static_cast<std::size_t>(w.slot)] = m;
    return to_string(v);
}

namespace {

JetVector unit_vector(int slot, const Multidegree& m, int cap)
{
    return JetVector::in_slot(slot, TruncatedPoly::monomial(m, cap));
}

}  // namespace

BlockCertificate contains_ideal_block(const TangentSpaceBasis& T, int p, int q, int r)
{
    BlockCertificate cert;
    cert.block = {p, q, r};
    cert.order = T.order();
    cert.holds = true;
    const int cap = T.germ().cap();
    for (int s = 0; s < 3; ++s) {
        for (const auto& m : monomial_basis(VarSet::source, cert.block[static_cast<std::size_t>(s)], T.order())) {
            if (!T.contains(unit_vector(s, m, cap))) {
                cert.holds = false;
                cert.witness = MonomialTriple{s, m};
                return cert;
            }
        }
    }
    return cert;
}

std::array<int, 3> saturation_degrees(const TangentSpaceBasis& T)
{
    std::array<int, 3> out{};
    const int cap = T.germ().cap();
    for (int s = 0; s < 3; ++s) {
        int d = T.order() + 1;
        for (int deg = T.order(); deg >= 0; --deg) {
            const auto mons = monomial_basis(VarSet::source, deg, deg);
            const bool full = std::all_of(mons.begin(), mons.end(),
                                          [&](const Multidegree& m) { return T.contains(unit_vector(s, m, cap)); });
            if (!full) break;
            d = deg;
        }
        out[static_cast<std::size_t>(s)] = d;
    }
    return out;
}

bool jet_sufficiency_step(const MapGerm& f, const JetVector& R, std::array<int, 3> degrees, int source_min_degree)
{
    for (std::size_t s = 0; s < 3; ++s) {
        if (degrees[s] < 0) throw usage_error("negative slot degree");
        if (!R.slots[s].is_homogeneous(degrees[s]))
            throw usage_error("slot " + std::to_string(s + 1) + " of R is not homogeneous of degree " +
                              std::to_string(degrees[s]));
    }
    if (R.is_zero()) return true;
    const int order = std::max({degrees[0], degrees[1], degrees[2]});
    if (order > f.cap() - 1) throw usage_error("jet degree exceeds cap - 1");
    const JetCoordinates coords(degrees);
    RowSpace space(coords.dimension());
    for (const auto& g : tangent_generators(f, SpaceKind::astar_reduced, order, source_min_degree))
        space.insert(coords.flatten(g.vector));
    return space.contains(coords.flatten(R));
}

std::vector<MonomialTriple> normal_space_monomials(const TangentSpaceBasis& T)
{
    RowSpace space = T.space();
    const auto& coords = T.coordinates();
    std::vector<std::size_t> order(coords.dimension());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    // lowest degree first, then slot, then graded-lex
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        auto [sa, ma] = coords.at(a);
        auto [sb, mb] = coords.at(b);
        if (ma.total() != mb.total()) return ma.total() < mb.total();
        return sa < sb;
    });
    std::vector<MonomialTriple> out;
    std::vector<Rational> e(coords.dimension());
    for (auto i : order) {
        if (space.rank() == coords.dimension()) break;
        std::fill(e.begin(), e.end(), Rational(0));
        e[i] = 1;
        if (space.insert(e)) {
            auto [s, m] = coords.at(i);
            out.push_back({s, m});
        }
    }
    return out;
}

MiniversalityVerdict miniversality_check(const MapGerm& f, std::span<const JetVector> complement, int order)
{
    const auto T = build_extended(f, SpaceKind::astar_extended, order);
    MiniversalityVerdict v;
    v.order = order;
    v.rank = T.rank();
    v.codimension = T.codimension();
    v.saturation = saturation_degrees(T);
    v.saturated = std::all_of(v.saturation.begin(), v.saturation.end(), [&](int d) { return d <= order - 1; });

    RowSpace sum = T.space();
    for (std::size_t i = 0; i < complement.size(); ++i)
        if (!sum.insert(T.coordinates().flatten(complement[i]))) v.redundant.push_back(i);
    v.direct = v.redundant.empty();
    v.spans_all = sum.rank() == T.coordinates().dimension();

    const auto& coords = T.coordinates();
    std::vector<Rational> e(coords.dimension());
    for (std::size_t i = 0; i < coords.dimension() && sum.rank() < coords.dimension(); ++i) {
        std::fill(e.begin(), e.end(), Rational(0));
        e[i] = 1;
        if (sum.insert(e)) {
            auto [s, m] = coords.at(i);
            v.defect_basis.push_back({s, m});
        }
    }
    v.spans = v.saturated && v.spans_all && v.direct;
    return v;
}

}  // namespace lgraph
