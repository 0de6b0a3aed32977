#include "helpers.hpp"

#include <lgraph/envelope_geometry.hpp>
#include <lgraph/family_analysis.hpp>

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lgraph;
using testing::src;

namespace {

PlanarMap planar(const char* x, const char* y) { return PlanarMap(RealPoly::from_jet(src(x)), RealPoly::from_jet(src(y))); }

std::size_t count_substr(const std::string& s, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("lgraph_unit_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("exact Jacobian determinants")
{
    CHECK(jacobian_det(src("xi + t"), src("t^2 xi")) == src("2 t xi - t^2"));
    CHECK(jacobian_det(src("xi + t"), src("t^2")) == src("2 t"));
    const auto F = normal_form(Rational(1, 5), 1);
    CHECK(jacobian_det(F[0], F[1]) == src("3 t^2 + 2 t xi + 1/5 xi^2"));
}

TEST_CASE("float determinant agrees with central differences")
{
    testing::RandomJets rj(17, 5);
    std::uniform_real_distribution<double> coord(-0.9, 0.9);
    for (int i = 0; i < 20; ++i) {
        const MapGerm g = rj.germ(2, 4);
        const PlanarMap f = PlanarMap::from_germ(g);
        // same polynomials at a cap high enough that the product is not truncated
        const auto x = parse_poly(to_string(g[0]), VarSet::source, 10);
        const auto y = parse_poly(to_string(g[1]), VarSet::source, 10);
        const RealPoly exact = RealPoly::from_jet(jacobian_det(x, y));
        for (int k = 0; k < 5; ++k) {
            const double xi = coord(rj.engine()), t = coord(rj.engine());
            const double h = 1e-5;
            const Point2 a = f(xi + h, t), b = f(xi - h, t), c = f(xi, t + h), d = f(xi, t - h);
            const double fd = ((a.x - b.x) * (c.y - d.y) - (c.x - d.x) * (a.y - b.y)) / (4 * h * h);
            const double v = f.det()(xi, t);
            CHECK(exact(xi, t) == doctest::Approx(v).epsilon(1e-12));
            CHECK(std::abs(fd - v) <= 1e-6 * std::max(1.0, std::abs(v)));
        }
    }
}

TEST_CASE("criminant of the two representatives")
{
    const GridSpec grid;  // [-1,1]^2 at 512
    const auto I = trace_criminant(planar("xi + t", "t^2"), grid);
    REQUIRE(I.branches.size() == 1);
    CHECK(I.branches[0].tag == "support");
    for (const auto& p : I.branches[0].points) CHECK(std::abs(p.y) < 1e-12);

    const PlanarMap f2 = planar("xi + t", "t^2 xi");
    const auto II = trace_criminant(f2, grid);
    REQUIRE(II.branches.size() == 2);
    CHECK(II.nodes.size() == 1);
    CHECK(II.branches[0].tag == "support");
    CHECK(II.branches[1].tag == "branch");
    for (const auto& p : II.branches[1].points) CHECK(p.y == doctest::Approx(2 * p.x).epsilon(1e-9));

    CHECK(trace_criminant(planar("xi", "t"), grid).empty());
}

TEST_CASE("criminant vertices satisfy the cell residual bound")
{
    const PlanarMap f = PlanarMap::from_germ(normal_form(Rational(-1, 2), 1));
    const GridSpec grid = GridSpec::square(1.0, 256);
    const auto c = trace_criminant(f, grid);
    const double h = grid.step_xi();
    for (const auto& b : c.branches) {
        CHECK(b.points.size() >= 2);
        for (const auto& p : b.points) {
            const double g = std::hypot(f.det_xi()(p.x, p.y), f.det_t()(p.x, p.y));
            CHECK(std::abs(f.det()(p.x, p.y)) <= h * (g + 10 * h));
        }
    }
}

TEST_CASE("envelope of the type II family has an order-2 self-tangency")
{
    const PlanarMap f = planar("xi + t", "t^2 xi");
    const auto env = envelope(f, trace_criminant(f, GridSpec{}));
    REQUIRE(env.branches.size() == 2);
    for (const auto& p : env.branches[0].points) CHECK(std::abs(p.y) < 1e-12);
    CHECK(std::abs(fit_cubic_coefficient(env.branches[1]) - 4.0 / 27.0) <= 1e-3);
    for (const auto& p : env.branches[1].points) CHECK(p.y == doctest::Approx(4.0 / 27.0 * p.x * p.x * p.x).epsilon(1e-9));
    CHECK(envelope(f, PlaneCurveSet{}).empty());
}

TEST_CASE("refinement keeps branch counts")
{
    for (const char* y : {"t^2", "t^2 xi"}) {
        const PlanarMap f = planar("xi + t", y);
        CHECK(trace_criminant(f, GridSpec::square(1, 256)).branches.size() ==
              trace_criminant(f, GridSpec::square(1, 512)).branches.size());
    }
}

TEST_CASE("Legendrian lift")
{
    const PlanarMap I = planar("xi + t", "t^2");
    const auto lift = legendrian_lift(I, GridSpec::square(1, 33));
    CHECK(lift.invalid_count == 0);
    for (const auto& s : lift.samples) {
        CHECK(s.chart == Chart::affine);
        CHECK(s.slope == doctest::Approx(2 * s.t));
    }

    const PlanarMap II = planar("xi + t", "t^2 xi");
    CHECK(lift_at(II, 0.5, 0.25).slope == doctest::Approx(2 * 0.25 * 0.5));

    const PlanarMap vertical = planar("t^2", "t");
    const auto s0 = lift_at(vertical, 0.3, 0.0);
    CHECK(s0.valid);
    CHECK(s0.chart == Chart::reciprocal);
    CHECK(s0.slope == 0.0);
    const auto s1 = lift_at(vertical, 0.3, 0.5);
    CHECK(s1.chart == Chart::affine);
    CHECK(s1.slope == doctest::Approx(1.0));

    const auto grid = legendrian_lift(vertical, GridSpec::square(1, 41));
    for (const auto& s : grid.samples)
        if (s.p && s.q) CHECK(std::abs(*s.p * *s.q - 1.0) <= 1e-9);

    const PlanarMap flat = planar("xi", "xi^2");
    CHECK_FALSE(lift_at(flat, 0.1, 0.1).valid);
    CHECK(legendrian_lift(flat, GridSpec::square(1, 4)).invalid_count == 16);
}

TEST_CASE("deformations")
{
    const MapGerm F = normal_form(Rational(-1, 2), 1);
    const SurfaceMap base = SurfaceMap::from_germ(F);
    const SurfaceMap same = apply_deformation(F, {0, 0, 0}, DeformationMode::versal);
    for (double xi : {-0.7, 0.2})
        for (double t : {-0.4, 0.9}) {
            CHECK(same.x(xi, t) == base.x(xi, t));
            CHECK(same.y(xi, t) == base.y(xi, t));
        }
    const SurfaceMap beaks = apply_deformation(F, {0.1, 5, 5}, DeformationMode::beaks);
    CHECK(beaks.x(0.3, 0.2) == doctest::Approx(0.3));
    CHECK(beaks.y(0.3, 0.2) == doctest::Approx(base.y(0.3, 0.2) + 0.1 * 0.2));
    const SurfaceMap versal = apply_deformation(F, {0, 0.1, 0}, DeformationMode::versal);
    CHECK(versal.x(0.3, 0.2) == doctest::Approx(0.3 + 0.1 * (0.04 + 0.008)));
}

TEST_CASE("cusp counts")
{
    const MapGerm F = normal_form(Rational(-1, 2), 1);
    CHECK(count_cusps(SurfaceMap::from_germ(F).projection(), GridSpec::square(1.5, 256)).count() == 0);
    CHECK(count_cusps(planar("xi", "t"), GridSpec::square(1, 64)).count() == 0);
    for (Rational a : {Rational(-1, 2), Rational(1, 4)}) {
        for (int res : {256, 512}) {
            auto cusps = [&](double lambda) {
                const auto s = apply_deformation(normal_form(a, 1), {lambda, 0, 0}, DeformationMode::beaks);
                return count_cusps(s.projection(), GridSpec::square(1.5, res));
            };
            const auto before = cusps(-0.1), at = cusps(0.0), after = cusps(0.1);
            CHECK(before.count() == 0);
            CHECK(at.count() == 0);
            REQUIRE(after.count() == 2);
            // cusps sit at xi^2 = lambda / (1/3 - a), t = -xi/3
            const double xi = std::sqrt(0.1 / (1.0 / 3.0 - a.get_d()));
            for (const auto& c : after.cusps) {
                CHECK(std::abs(std::abs(c.source.x) - xi) < 0.02);
                CHECK(std::abs(c.source.y + c.source.x / 3) < 0.02);
            }
        }
    }
}

TEST_CASE("svg output")
{
    const std::string empty = render_svg(PlaneCurveSet{});
    CHECK(empty.find("<svg") != std::string::npos);
    CHECK(count_substr(empty, "<path") == 0);

    const PlanarMap f = planar("xi + t", "t^2 xi");
    auto env = envelope(f, trace_criminant(f, GridSpec::square(1, 128)));
    env.cusps.push_back({0.1, 0.1});
    const std::string svg = render_svg(env, {300, 200, "a<b"});
    CHECK(count_substr(svg, "<path") == 2);
    CHECK(count_substr(svg, "<circle") == 1);
    CHECK(svg.find("a&lt;b") != std::string::npos);
    CHECK(svg.find("-0.000") == std::string::npos);
    CHECK(render_svg(env, {300, 200, "a<b"}) == svg);

    CHECK_THROWS_AS(emit_svg(env, ""), io_error);
    CHECK_THROWS_AS(emit_svg(env, "/nonexistent-dir/x/y.svg"), io_error);
}

TEST_CASE("obj mesh of the type I lift")
{
    const auto lift = legendrian_lift(planar("xi + t", "t^2"), GridSpec::square(1, 4));
    const std::string obj = render_obj(lift);
    std::istringstream in(obj);
    std::string line;
    std::size_t v = 0, f = 0, other = 0;
    while (std::getline(in, line)) {
        if (line.rfind("v ", 0) == 0) ++v;
        else if (line.rfind("f ", 0) == 0) ++f;
        else ++other;
    }
    CHECK(v == 16);
    CHECK(f == 18);
    CHECK(other == 0);

    const auto dir = scratch_dir("obj");
    emit_obj(lift, dir / "lift.obj");
    std::ifstream file(dir / "lift.obj");
    std::stringstream buf;
    buf << file.rdbuf();
    CHECK(buf.str() == obj);
}

TEST_CASE("grid validation")
{
    CHECK_THROWS_AS(GridSpec::square(1, 1).validate(), usage_error);
    GridSpec g;
    g.xi_max = g.xi_min;
    CHECK_THROWS_AS(g.validate(), usage_error);
    CHECK_THROWS_AS(trace_criminant(planar("xi", "t^2"), g), usage_error);
}
