#include <lgraph/envelope_geometry.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lgraph {

namespace {

struct VertexState {
    bool usable = false;
    double sine = 0.0;  // sin of the angle between the kernel and the criminant tangent
};

}  // namespace

CuspReport count_cusps(const PlanarMap& f, const PlaneCurveSet& criminant, double theta_c_deg)
{
    CuspReport report;
    const double sin_c = std::sin(theta_c_deg * std::numbers::pi / 180.0);

    for (std::size_t b = 0; b < criminant.branches.size(); ++b) {
        const auto& branch = criminant.branches[b];
        const auto& pts = branch.points;
        std::vector<VertexState> state(pts.size());
        double kx_prev = 0.0, kt_prev = 0.0;
        bool have_prev = false;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            if (std::binary_search(branch.singular.begin(), branch.singular.end(), k)) continue;
            const double xi = pts[k].x, t = pts[k].y;
            const Jacobian2 J = f.jacobian(xi, t);
            // kernel from whichever Jacobian row is larger
            double kx = J.x_t, kt = -J.x_xi;
            if (std::hypot(J.y_t, J.y_xi) > std::hypot(kx, kt)) {
                kx = J.y_t;
                kt = -J.y_xi;
            }
            const double kn = std::hypot(kx, kt);
            const double gx = f.det_xi()(xi, t), gt = f.det_t()(xi, t);
            const double gn = std::hypot(gx, gt);
            if (kn == 0.0 || gn == 0.0) continue;
            if (have_prev && kx * kx_prev + kt * kt_prev < 0.0) {
                kx = -kx;
                kt = -kt;
            }
            kx_prev = kx;
            kt_prev = kt;
            have_prev = true;
            // the gradient is normal to the criminant, so this is the sine of
            // the kernel's angle to the tangent line
            state[k] = {true, (gx * kx + gt * kt) / (gn * kn)};
        }

        bool in_run = false;
        bool run_crossed = false;
        auto close_run = [&] {
            if (in_run && !run_crossed) ++report.degenerate_tangencies;
            in_run = false;
        };
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const auto& c = state[k];
            if (!c.usable) {
                close_run();
                continue;
            }
            bool crossed = false;
            if (k > 0 && state[k - 1].usable && (state[k - 1].sine < 0.0) != (c.sine < 0.0)) {
                const auto& a = state[k - 1];
                const double s = a.sine / (a.sine - c.sine);
                const Point2 src{pts[k - 1].x + s * (pts[k].x - pts[k - 1].x),
                                 pts[k - 1].y + s * (pts[k].y - pts[k - 1].y)};
                report.cusps.push_back({src, f(src.x, src.y), b});
                crossed = true;
            }
            if (std::abs(c.sine) < sin_c) {
                if (!in_run) {
                    in_run = true;
                    run_crossed = false;
                }
                run_crossed = run_crossed || crossed;
            } else {
                run_crossed = run_crossed || crossed;
                close_run();
            }
        }
        close_run();
    }
    return report;
}

CuspReport count_cusps(const PlanarMap& f, const GridSpec& grid, double theta_c_deg)
{
    return count_cusps(f, trace_criminant(f, grid), theta_c_deg);
}

}  // namespace lgraph
