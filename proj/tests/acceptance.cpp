// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include "oracle.hpp"

#include <lgraph/cli.hpp>
#include <lgraph/family_analysis.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

using namespace lgraph;

namespace {

struct Result {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Result()> run;
};

TruncatedPoly src(const char* text) { return parse_poly(text, VarSet::source, default_cap); }

Result representatives()
{
    const int W = default_cap - 1;
    const auto I = classify(src("t^2"), W);
    const auto II = classify(src("t^2 xi"), W);
    // k0 = 0, k1 = 1, alpha = 1/2
    const auto plus = classify(src("t^2 xi + 1/2 t^3"), W);
    std::ostringstream d;
    d << "t^2 -> " << to_string(I.kind) << "; t^2 xi -> " << to_string(II.kind) << " a="
      << (II.a ? to_string(*II.a) : "-") << " flag=" << II.projection_normal_form_applicable << "; (0,1,1/2) -> "
      << to_string(plus.kind) << " a=" << (plus.a ? to_string(*plus.a) : "-");
    const bool ok = I.kind == LabelKind::type_i && II.kind == LabelKind::a1_minus && II.a == Rational(-1) &&
                    !II.projection_normal_form_applicable && plus.kind == LabelKind::a1_plus &&
                    plus.a == Rational(1, 4);
    return {ok, d.str()};
}

Result eq2_suite()
{
    std::ostringstream d;
    bool ok = true;
    auto check = [&](Rational a, Rational b, bool expected) {
        const auto T = build_extended(normal_form_unchecked(a, b), SpaceKind::astar_extended, 6);
        const auto cert = contains_ideal_block(T, 3, 5, 4);
        const bool agrees = cert.holds == expected && (cert.holds || cert.witness.has_value());
        if (!agrees) {
            d << "a=" << to_string(a) << ",b=" << to_string(b) << ": holds=" << cert.holds << " (expected "
              << expected << "); ";
        }
        ok = ok && agrees;
    };
    for (Rational a : {Rational(-1, 2), Rational(1, 5), Rational(1, 4)})
        for (Rational b : {Rational(-1), Rational(1)}) check(a, b, true);
    for (Rational a : {Rational(-1), Rational(0), Rational(1, 3)}) check(a, 1, false);
    if (ok) d << "9 parameter pairs agree";
    return {ok, d.str()};
}

Result fold_sufficiency()
{
    const auto cert = contains_ideal_block(build_reduced(fold_normal_form(), 4), 2, 3, 2);
    return {cert.holds, cert.holds ? "m^2 x m^3 x m^2 contained" : "witness " + to_string(*cert.witness)};
}

Result miniversality()
{
    const auto F = normal_form(Rational(1, 5), 1);
    const std::vector<JetVector> complement{JetVector::in_slot(1, src("t")), JetVector::in_slot(0, src("t^2 + t^3")),
                                            JetVector::in_slot(1, src("t^2 + t^3"))};
    const auto v = miniversality_check(F, complement, 6);
    const auto v0 = miniversality_check(normal_form(Rational(1, 5), 0), complement, 6);
    std::ostringstream d;
    d << "b=1: codim=" << v.codimension << " saturated=" << v.saturated << " spans_all=" << v.spans_all
      << " direct=" << v.direct;
    if (!v.redundant.empty()) d << " redundant=" << to_string(complement[v.redundant.front()]);
    d << "; b=0: spans=" << v0.spans;
    return {v.codimension == 3 && v.spans && !v0.spans, d.str()};
}

Result self_tangency()
{
    const PlanarMap f = PlanarMap::from_germ(MapGerm{src("xi + t"), src("t^2 xi")});
    const auto criminant = trace_criminant(f, GridSpec::square(1.0, 512));
    const auto env = envelope(f, criminant);
    std::ostringstream d;
    d << "branches=" << env.branches.size();
    if (env.branches.size() != 2) return {false, d.str()};
    double c = 0.0;
    for (const auto& b : env.branches)
        if (b.tag != "support") c = fit_cubic_coefficient(b);
    d << " c=" << c << " |c-4/27|=" << std::abs(c - 4.0 / 27.0);
    return {std::abs(c - 4.0 / 27.0) <= 1e-3, d.str()};
}

struct SweepCounts {
    std::string variant;
    std::vector<int> counts;
};

SweepCounts sweep_counts(Rational a, int resolution)
{
    cli::SweepParams p;
    p.a = a;
    p.lambda_min = -0.1;
    p.lambda_max = 0.1;
    p.frames = 3;
    cli::RunConfig config;
    config.resolution = std::array<int, 2>{resolution, resolution};
    auto tag = to_string(a);
    std::replace(tag.begin(), tag.end(), '/', '_');
    config.out = std::filesystem::temp_directory_path() /
                 ("lgraph_acceptance_sweep_" + tag + "_" + std::to_string(resolution));
    const auto r = cli::sweep(p, config);
    SweepCounts out{r.report["variant"].get<std::string>(), {}};
    for (const auto& f : r.report["frames"]) {
        // -1 marks a degenerate middle frame
        const bool degenerate = f["degenerate_tangencies"].get<int>() > 0 && f["params"]["lambda"] == 0.0;
        out.counts.push_back(degenerate ? -1 : f["cusps"].get<int>());
    }
    return out;
}

Result beaks()
{
    std::ostringstream d;
    bool ok = true;
    for (Rational a : {Rational(-1, 2), Rational(1, 4)}) {
        const auto [variant, fine] = sweep_counts(a, 512);
        const auto coarse = sweep_counts(a, 256).counts;
        // the middle frame may be 0 or degenerate (-1 here)
        const bool jump = std::abs(fine[0] - fine[2]) == 2 && std::min(fine[0], fine[2]) == 0 &&
                          (fine[1] == 0 || fine[1] == -1);
        const bool stable = fine == coarse;
        d << "a=" << to_string(a) << " (" << variant << "): " << fine[0] << "," << fine[1] << ","
          << fine[2] << (stable ? " stable" : " unstable") << "; ";
        ok = ok && jump && stable;
    }
    return {ok, d.str()};
}

Result properties()
{
    cli::RunConfig config;
    config.cap = 8;
    config.seed = 1;
    const auto r = cli::properties(1000, config);
    return {r.report["total_failures"] == 0, "failures " + r.report["failures"].dump()};
}

Result oracle_equivalence()
{
    std::mt19937_64 rng(8);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int W = 3;
    int mismatches = 0, compared = 0;
    for (int n = 0; n < 20; ++n) {
        std::array<TruncatedPoly, 3> c{TruncatedPoly(VarSet::source, default_cap),
                                       TruncatedPoly(VarSet::source, default_cap),
                                       TruncatedPoly(VarSet::source, default_cap)};
        for (auto& p : c) {
            const int terms = uniform(2, 3);
            while (static_cast<int>(p.terms().size()) < terms) {
                const int d = uniform(1, 4), i = uniform(0, d);
                int num = uniform(-4, 3);
                if (num >= 0) ++num;
                Rational q(num, uniform(1, 3));
                q.canonicalize();
                p.add_term(Multidegree(VarSet::source, {i, d - i}), q);
            }
        }
        const MapGerm f{c[0], c[1], c[2]};
        for (auto kind : {SpaceKind::a_extended, SpaceKind::astar_extended, SpaceKind::astar_reduced}) {
            const bool reduced = kind == SpaceKind::astar_reduced;
            const auto T = reduced ? build_reduced(f, W) : build_extended(f, kind, W);
            mismatches += T.rank() != oracle::rank(f, kind, W, reduced ? default_reduced_source_degree : 0);
            ++compared;
        }
    }
    return {mismatches == 0, std::to_string(compared) + " ranks compared, " + std::to_string(mismatches) +
                                 " mismatches"};
}

}  // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "representative classification", 1, representatives},
        {2, "ideal-block inclusion suite", 30, eq2_suite},
        {3, "fold sufficiency", 5, fold_sufficiency},
        {4, "miniversality", 30, miniversality},
        {5, "envelope self-tangency", 5, self_tangency},
        {6, "beaks perestroika", 20, beaks},
        {7, "jet-algebra properties", 30, properties},
        {8, "oracle equivalence", 30, oracle_equivalence},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Result r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool pass = r.pass && s <= c.budget_s;
        if (r.pass && !pass) r.detail += " (over time budget)";
        std::printf("%s %d %s [%.2fs / %.0fs] %s\n", pass ? "PASS" : "FAIL", c.id, c.name, s, c.budget_s,
                    r.detail.c_str());
        failed += !pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
