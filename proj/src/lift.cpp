#include <lgraph/envelope_geometry.hpp>

#include <cmath>

namespace lgraph {

LiftSample lift_at(const PlanarMap& f, double xi, double t, double epsilon)
{
    LiftSample s;
    s.xi = xi;
    s.t = t;
    const Point2 p = f(xi, t);
    s.x = p.x;
    s.y = p.y;
    const Jacobian2 J = f.jacobian(xi, t);
    const double dx = J.x_t, dy = J.y_t;
    if (dx == 0.0 && dy == 0.0) {
        s.valid = false;
        return s;
    }
    if (dx != 0.0) s.p = dy / dx;
    if (dy != 0.0) s.q = dx / dy;
    if (std::abs(dx) < epsilon * std::abs(dy)) {
        s.chart = Chart::reciprocal;
        s.slope = *s.q;
    } else {
        s.chart = Chart::affine;
        s.slope = *s.p;
    }
    return s;
}

LiftGrid legendrian_lift(const PlanarMap& f, const GridSpec& grid, double epsilon)
{
    grid.validate();
    LiftGrid out;
    out.grid = grid;
    out.samples.reserve(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny));
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            out.samples.push_back(lift_at(f, grid.xi_at(i), grid.t_at(j), epsilon));
            if (!out.samples.back().valid) ++out.invalid_count;
        }
    return out;
}

}  // namespace lgraph
