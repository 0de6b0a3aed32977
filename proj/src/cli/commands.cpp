#include <lgraph/cli.hpp>
#include <lgraph/family_analysis.hpp>
#include <lgraph/tangent_spaces.hpp>

#include <cstdio>
#include <random>

namespace lgraph::cli {

using lgraph::to_string;

namespace {

json rational_or_null(const std::optional<Rational>& r) { return r ? json(to_string(*r)) : json(nullptr); }

json grid_json(const GridSpec& g)
{
    return {{"domain", {g.xi_min, g.xi_max, g.t_min, g.t_max}}, {"resolution", {g.nx, g.ny}}};
}

TruncatedPoly poly_field(const json& input, const std::string& key, int cap)
{
    const json& v = input.at(key);
    if (!v.is_string()) throw parse_error("field '" + key + "' must be a polynomial string");
    return parse_poly(v.get<std::string>(), VarSet::source, cap);
}

std::filesystem::path prepare_out(const RunConfig& config)
{
    std::error_code ec;
    std::filesystem::create_directories(config.out, ec);
    if (ec) throw io_error("cannot create output directory '" + config.out.string() + "': " + ec.message());
    return config.out;
}

bool restricted(const Rational& a) { return a == -1 || a == 0 || a >= Rational(1, 3); }

std::string variant_name(const Rational& a)
{
    if (restricted(a)) return "restricted";
    return a > 0 ? to_string(LabelKind::a1_plus) : to_string(LabelKind::a1_minus);
}

}  // namespace

GridSpec resolve_grid(const RunConfig& config, double default_half_width, int default_resolution)
{
    GridSpec g = GridSpec::square(default_half_width, default_resolution);
    if (config.domain) {
        const auto& d = *config.domain;
        g.xi_min = d[0];
        g.xi_max = d[1];
        g.t_min = d[2];
        g.t_max = d[3];
    }
    if (config.resolution) {
        g.nx = (*config.resolution)[0];
        g.ny = (*config.resolution)[1];
    }
    g.validate();
    return g;
}

int resolve_order(const RunConfig& config, int default_order)
{
    if (config.cap < 2) throw usage_error("cap must be at least 2");
    const int order = config.order.value_or(std::min(default_order, config.cap - 1));
    if (order < 1 || order > config.cap - 1)
        throw usage_error("order must lie in 1.." + std::to_string(config.cap - 1) + ", got " + std::to_string(order));
    return order;
}

// --- classify --------------------------------------------------------------

Outcome classify(const json& input, const RunConfig& config)
{
    const int order = resolve_order(config, config.cap - 1);
    std::optional<TruncatedPoly> u;
    if (input.contains("u")) {
        u = poly_field(input, "u", config.cap);
    } else if (input.contains("k0") || input.contains("k1") || input.contains("alpha")) {
        TruncatedPoly sum(VarSet::source, config.cap);
        sum.add_term(Multidegree(VarSet::source, {0, 2}), rational_field(input, "k0"));
        sum.add_term(Multidegree(VarSet::source, {1, 2}), rational_field(input, "k1"));
        sum.add_term(Multidegree(VarSet::source, {0, 3}), rational_field(input, "alpha"));
        if (input.contains("higher")) sum = add(sum, poly_field(input, "higher", config.cap));
        u = sum;
    } else {
        throw parse_error("classify input needs \"u\" or \"k0\", \"k1\", \"alpha\"");
    }

    const SingularityLabel label = classify(*u, order);
    json report;
    report["command"] = "classify";
    report["u"] = to_string(*u);
    report["label"] = to_string(label.kind);
    if (label.kind == LabelKind::not_tangential) {
        report["invariants"] = nullptr;
    } else {
        const FamilyGerm g = extract_invariants(*u);
        report["invariants"] = {{"k0", to_string(g.k0)}, {"k1", to_string(g.k1)}, {"alpha", to_string(g.alpha)}};
    }
    report["a"] = rational_or_null(label.a);
    report["projection_normal_form_applicable"] = label.projection_normal_form_applicable;
    report["branch"] = label.branch ? json{{"n", label.branch->value}, {"resolved", label.branch->resolved}}
                                    : json(nullptr);
    report["ae_codimension"] = label.ae_codimension ? json(*label.ae_codimension) : json(nullptr);
    report["order"] = order;
    report["cap"] = config.cap;
    return {label.kind == LabelKind::indeterminate ? exit_code::indeterminate : exit_code::ok, report};
}

// --- verify ----------------------------------------------------------------

VerifyKind parse_verify_kind(std::string_view name)
{
    if (name == "eq2") return VerifyKind::eq2;
    if (name == "fold-sufficiency") return VerifyKind::fold_sufficiency;
    if (name == "miniversal") return VerifyKind::miniversal;
    throw parse_error("unknown verify kind '" + std::string(name) + "'");
}

std::string to_string(VerifyKind kind)
{
    switch (kind) {
    case VerifyKind::eq2: return "eq2";
    case VerifyKind::fold_sufficiency: return "fold-sufficiency";
    case VerifyKind::miniversal: return "miniversal";
    }
    return "?";
}

Outcome verify(const VerifyParams& params, const RunConfig& config)
{
    json report;
    report["command"] = "verify";
    report["kind"] = to_string(params.kind);

    if (params.kind == VerifyKind::fold_sufficiency) {
        const int order = resolve_order(config, 4);
        const TangentSpaceBasis T = build_reduced(fold_normal_form(config.cap), order);
        const BlockCertificate cert = contains_ideal_block(T, 2, 3, 2);
        report["W"] = order;
        report["rank"] = T.rank();
        report["codimension"] = T.codimension();
        report["source_min_degree"] = T.source_min_degree();
        report["certified_block"] = cert.block;
        report["holds"] = cert.holds;
        report["witness"] = cert.witness ? json(to_string(*cert.witness)) : json(nullptr);
        report["predicted"] = true;
        report["agrees"] = cert.holds;
        return {cert.holds ? exit_code::ok : exit_code::contradiction, report};
    }

    const int order = resolve_order(config, 6);
    const MapGerm F = normal_form_unchecked(params.a, params.b, config.cap);
    report["a"] = to_string(params.a);
    report["b"] = to_string(params.b);
    report["W"] = order;

    if (params.kind == VerifyKind::eq2) {
        const TangentSpaceBasis T = build_extended(F, SpaceKind::astar_extended, order);
        const BlockCertificate cert = contains_ideal_block(T, 3, 5, 4);
        const bool predicted = !(params.a == -1 || params.a == 0 || params.a == Rational(1, 3));
        report["rank"] = T.rank();
        report["codimension"] = T.codimension();
        report["certified_block"] = cert.block;
        report["holds"] = cert.holds;
        report["witness"] = cert.witness ? json(to_string(*cert.witness)) : json(nullptr);
        report["predicted"] = predicted;
        report["agrees"] = cert.holds == predicted;
        return {cert.holds == predicted ? exit_code::ok : exit_code::contradiction, report};
    }

    // miniversal: complement {(0, t, 0), (z o F, 0, 0), (0, z o F, 0)}
    const int cap = config.cap;
    const TruncatedPoly t = TruncatedPoly::variable(VarSet::source, var::t, cap);
    const TruncatedPoly z = F[2];
    const std::vector<JetVector> complement{JetVector::in_slot(1, t), JetVector::in_slot(0, z),
                                            JetVector::in_slot(1, z)};
    const MiniversalityVerdict v = miniversality_check(F, complement, order);
    const TangentSpaceBasis T = build_extended(F, SpaceKind::astar_extended, order);
    const BlockCertificate cert = contains_ideal_block(T, 3, 5, 4);
    const bool predicted = params.b != 0 && !restricted(params.a);

    json comp = json::array();
    for (const auto& c : complement) comp.push_back(to_string(c));
    json redundant = json::array();
    for (std::size_t i : v.redundant) redundant.push_back(to_string(complement[i]));
    json normal = json::array();
    for (const auto& m : normal_space_monomials(T)) normal.push_back(to_string(m));
    json defect = json::array();
    for (const auto& m : v.defect_basis) defect.push_back(to_string(m));

    report["rank"] = v.rank;
    report["codimension"] = v.codimension;
    report["certified_block"] = cert.block;
    report["block_holds"] = cert.holds;
    report["saturation"] = v.saturation;
    report["saturated"] = v.saturated;
    report["complement"] = comp;
    report["spans_all"] = v.spans_all;
    report["direct"] = v.direct;
    report["spans"] = v.spans;
    report["redundant"] = redundant;
    report["defect"] = defect;
    report["normal_space"] = normal;
    report["predicted"] = predicted;
    report["agrees"] = v.spans == predicted;
    return {v.spans == predicted ? exit_code::ok : exit_code::contradiction, report};
}

// --- envelope --------------------------------------------------------------

Outcome envelope(const json& input, const RunConfig& config, bool write_obj)
{
    const int cap = config.cap;
    std::optional<PlanarMap> f;
    json map;
    if (input.contains("u")) {
        const TruncatedPoly u = poly_field(input, "u", cap);
        const TruncatedPoly x = add(TruncatedPoly::variable(VarSet::source, var::xi, cap),
                                    TruncatedPoly::variable(VarSet::source, var::t, cap));
        f.emplace(RealPoly::from_jet(x), RealPoly::from_jet(u));
        map = {{"x", to_string(x)}, {"y", to_string(u)}};
    } else if (input.contains("x") && input.contains("y")) {
        const TruncatedPoly x = poly_field(input, "x", cap);
        const TruncatedPoly y = poly_field(input, "y", cap);
        f.emplace(RealPoly::from_jet(x), RealPoly::from_jet(y));
        map = {{"x", to_string(x)}, {"y", to_string(y)}};
    } else {
        throw parse_error("envelope input needs \"u\" or both \"x\" and \"y\"");
    }

    const GridSpec grid = resolve_grid(config, 1.0, 512);
    const PlaneCurveSet criminant = trace_criminant(*f, grid);
    const CuspReport cusps = count_cusps(*f, criminant);
    PlaneCurveSet env = envelope(*f, criminant);
    for (const auto& c : cusps.cusps) env.cusps.push_back(c.target);

    const auto dir = prepare_out(config);
    emit_svg(env, dir / "envelope.svg", {512, 512, "envelope"});

    json report;
    report["command"] = "envelope";
    report["map"] = map;
    report["grid"] = grid_json(grid);
    report["criminant_empty"] = criminant.empty();
    if (criminant.empty()) report["note"] = "no criminant: the Jacobian determinant has no zero on the grid";
    report["branch_count"] = env.branches.size();
    json branches = json::array();
    json fitted = nullptr;
    for (const auto& b : env.branches) {
        json entry{{"tag", b.tag}, {"points", b.points.size()}};
        try {
            const double c = fit_cubic_coefficient(b);
            entry["cubic_fit"] = c;
            if (b.tag == "branch" && fitted.is_null()) fitted = c;
        } catch (const usage_error&) {
            entry["cubic_fit"] = nullptr;
        }
        branches.push_back(entry);
    }
    report["branches"] = branches;
    report["fitted_c"] = fitted;
    report["nodes"] = criminant.nodes.size();
    report["cusps"] = cusps.count();
    report["degenerate_tangencies"] = cusps.degenerate_tangencies;
    report["svg"] = "envelope.svg";
    if (write_obj) {
        const LiftGrid lift = legendrian_lift(*f, grid);
        emit_obj(lift, dir / "lift.obj");
        std::size_t reciprocal = 0;
        for (const auto& s : lift.samples)
            if (s.valid && s.chart == Chart::reciprocal) ++reciprocal;
        report["obj"] = "lift.obj";
        report["lift"] = {{"samples", lift.samples.size()},
                          {"invalid", lift.invalid_count},
                          {"reciprocal_chart", reciprocal}};
    } else {
        report["obj"] = nullptr;
    }
    return {exit_code::ok, report};
}

// --- sweep -----------------------------------------------------------------

Outcome sweep(const SweepParams& params, const RunConfig& config)
{
    if (params.frames < 1) throw usage_error("a sweep needs at least one frame");
    if (!(params.lambda_max >= params.lambda_min)) throw usage_error("lambda range is reversed");
    const MapGerm base = normal_form(params.a, params.b, config.cap);
    const GridSpec grid = resolve_grid(config, 2.0, 512);
    const auto dir = prepare_out(config);

    json manifest;
    manifest["command"] = "sweep";
    manifest["a"] = to_string(params.a);
    manifest["b"] = to_string(params.b);
    manifest["variant"] = variant_name(params.a);
    manifest["mode"] = params.mode == DeformationMode::beaks ? "beaks" : "versal";
    manifest["grid"] = grid_json(grid);
    manifest["theta_c_deg"] = default_cusp_angle_deg;
    json frames = json::array();
    json counts = json::array();
    const int n = params.frames;
    for (int k = 0; k < n; ++k) {
        // endpoints hit exactly, interior values as (n-1-k) lo + k hi over n-1
        const double lambda =
            n == 1 ? params.lambda_min : (params.lambda_min * (n - 1 - k) + params.lambda_max * k) / (n - 1);
        DeformationParams d{lambda, params.mu1, params.mu2};
        if (params.mode == DeformationMode::beaks) d.mu1 = d.mu2 = 0.0;
        const PlanarMap f = apply_deformation(base, d, params.mode).projection();
        const PlaneCurveSet criminant = trace_criminant(f, grid);
        const CuspReport cusps = count_cusps(f, criminant);
        PlaneCurveSet env = envelope(f, criminant);
        for (const auto& c : cusps.cusps) env.cusps.push_back(c.target);

        std::array<char, 32> name{};
        std::snprintf(name.data(), name.size(), "frame_%03d.svg", k);
        emit_svg(env, dir / name.data(), {512, 512, std::string("lambda = ") + json(lambda).dump()});
        frames.push_back({{"index", k},
                          {"file", name.data()},
                          {"params", {{"lambda", d.lambda}, {"mu1", d.mu1}, {"mu2", d.mu2}}},
                          {"branches", env.branches.size()},
                          {"nodes", criminant.nodes.size()},
                          {"cusps", cusps.count()},
                          {"degenerate_tangencies", cusps.degenerate_tangencies}});
        counts.push_back(cusps.count());
    }
    manifest["frames"] = frames;
    manifest["cusp_counts"] = counts;
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");

    json report = manifest;
    report["manifest"] = "manifest.json";
    return {exit_code::ok, report};
}

// --- properties ------------------------------------------------------------

namespace {

class JetSampler {
public:
    JetSampler(std::uint64_t seed, int cap) : rng_(seed), cap_(cap) {}

    TruncatedPoly poly(VarSet vars, int min_degree)
    {
        TruncatedPoly p(vars, cap_);
        const int terms = uniform(1, 4);
        for (int k = 0; k < terms; ++k) {
            const int degree = uniform(min_degree, cap_);
            std::array<int, 3> e{};
            int left = degree;
            for (int v = 0; v + 1 < arity(vars); ++v) {
                e[static_cast<std::size_t>(v)] = uniform(0, left);
                left -= e[static_cast<std::size_t>(v)];
            }
            e[static_cast<std::size_t>(arity(vars) - 1)] = left;
            int num = uniform(-5, 4);
            if (num >= 0) ++num;
            p.add_term(Multidegree(vars, std::span<const int>(e.data(), static_cast<std::size_t>(arity(vars)))),
                       Rational(num, uniform(1, 4)));
        }
        return p;
    }

    MapGerm germ() { return MapGerm{poly(VarSet::source, 1), poly(VarSet::source, 1), poly(VarSet::source, 1)}; }

private:
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    std::mt19937_64 rng_;
    int cap_;
};

}  // namespace

Outcome properties(int count, const RunConfig& config)
{
    if (count < 1) throw usage_error("count must be positive");
    const int N = config.cap;
    if (N < 2) throw usage_error("cap must be at least 2");
    JetSampler sample(config.seed, N);
    std::size_t ring = 0, leibniz = 0, chain = 0, functorial = 0;

    for (int it = 0; it < count; ++it) {
        const TruncatedPoly p = sample.poly(VarSet::source, 0);
        const TruncatedPoly q = sample.poly(VarSet::source, 0);
        const TruncatedPoly r = sample.poly(VarSet::source, 0);
        const bool ring_ok = p + q == q + p && p * q == q * p && (p + q) + r == p + (q + r) &&
                             (p * q) * r == p * (q * r) && p * (q + r) == p * q + p * r;
        if (!ring_ok) ++ring;

        bool leibniz_ok = true;
        for (int v : {var::xi, var::t})
            leibniz_ok = leibniz_ok &&
                         jet(derive(p * q, v), N - 1) == jet(derive(p, v) * q + p * derive(q, v), N - 1);
        if (!leibniz_ok) ++leibniz;

        const MapGerm f = sample.germ();
        const TruncatedPoly g = sample.poly(VarSet::target, 0);
        bool chain_ok = true;
        for (int v : {var::xi, var::t}) {
            TruncatedPoly rhs(VarSet::source, N);
            for (int i = 0; i < 3; ++i) rhs = rhs + compose(derive(g, i), f) * derive(f[i], v);
            chain_ok = chain_ok && jet(derive(compose(g, f), v), N - 1) == jet(rhs, N - 1);
        }
        if (!chain_ok) ++chain;

        const TruncatedPoly g2 = sample.poly(VarSet::target, 0);
        if (!(compose(g * g2, f) == compose(g, f) * compose(g2, f))) ++functorial;
    }

    json report;
    report["command"] = "properties";
    report["cap"] = N;
    report["seed"] = config.seed;
    report["count"] = count;
    report["failures"] = {{"ring_laws", ring}, {"leibniz", leibniz}, {"chain_rule", chain}, {"functoriality", functorial}};
    const std::size_t total = ring + leibniz + chain + functorial;
    report["total_failures"] = total;
    return {total == 0 ? exit_code::ok : exit_code::contradiction, report};
}

}  // namespace lgraph::cli
