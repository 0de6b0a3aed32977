#include <lgraph/envelope_geometry.hpp>

#include <cmath>

namespace lgraph {

RealPoly RealPoly::from_jet(const TruncatedPoly& p)
{
    if (p.vars() != VarSet::source) throw usage_error("real polynomials are built from source jets");
    RealPoly r;
    for (const auto& [m, c] : p.terms()) r.add_term(m[var::xi], m[var::t], c.get_d());
    return r;
}

RealPoly RealPoly::constant(double c)
{
    RealPoly r;
    r.add_term(0, 0, c);
    return r;
}

RealPoly RealPoly::xi()
{
    RealPoly r;
    r.add_term(1, 0, 1.0);
    return r;
}

RealPoly RealPoly::t()
{
    RealPoly r;
    r.add_term(0, 1, 1.0);
    return r;
}

void RealPoly::add_term(int xi_exp, int t_exp, double c)
{
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace({xi_exp, t_exp}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

double RealPoly::operator()(double xi, double t) const
{
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double v = c;
        for (int k = 0; k < e.first; ++k) v *= xi;
        for (int k = 0; k < e.second; ++k) v *= t;
        sum += v;
    }
    return sum;
}

RealPoly RealPoly::derive(int variable) const
{
    RealPoly r;
    for (const auto& [e, c] : terms_) {
        if (variable == var::xi && e.first > 0) r.add_term(e.first - 1, e.second, c * e.first);
        if (variable == var::t && e.second > 0) r.add_term(e.first, e.second - 1, c * e.second);
    }
    return r;
}

RealPoly operator+(const RealPoly& a, const RealPoly& b)
{
    RealPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e.first, e.second, c);
    return r;
}

RealPoly operator-(const RealPoly& a, const RealPoly& b) { return a + (-1.0) * b; }

RealPoly operator*(const RealPoly& a, const RealPoly& b)
{
    RealPoly r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
    return r;
}

RealPoly operator*(double s, const RealPoly& a)
{
    RealPoly r;
    for (const auto& [e, c] : a.terms_) r.add_term(e.first, e.second, s * c);
    return r;
}

PlanarMap::PlanarMap(RealPoly x, RealPoly y)
    : x_(std::move(x)),
      y_(std::move(y)),
      x_xi_(x_.derive(var::xi)),
      x_t_(x_.derive(var::t)),
      y_xi_(y_.derive(var::xi)),
      y_t_(y_.derive(var::t)),
      det_(x_xi_ * y_t_ - x_t_ * y_xi_),
      det_xi_(det_.derive(var::xi)),
      det_t_(det_.derive(var::t))
{
}

PlanarMap PlanarMap::from_germ(const MapGerm& f) { return PlanarMap(RealPoly::from_jet(f[0]), RealPoly::from_jet(f[1])); }

Jacobian2 PlanarMap::jacobian(double xi, double t) const
{
    return {x_xi_(xi, t), x_t_(xi, t), y_xi_(xi, t), y_t_(xi, t)};
}

SurfaceMap SurfaceMap::from_germ(const MapGerm& f)
{
    if (f.size() != 3) throw usage_error("surface maps need three components");
    return {RealPoly::from_jet(f[0]), RealPoly::from_jet(f[1]), RealPoly::from_jet(f[2])};
}

TruncatedPoly jacobian_det(const TruncatedPoly& x, const TruncatedPoly& y)
{
    return sub(mul(derive(x, var::xi), derive(y, var::t)), mul(derive(x, var::t), derive(y, var::xi)));
}

void GridSpec::validate() const
{
    if (nx < 2 || ny < 2) throw usage_error("grid resolution must be at least 2 per axis");
    if (!(xi_max > xi_min) || !(t_max > t_min) || !std::isfinite(xi_min) || !std::isfinite(xi_max) ||
        !std::isfinite(t_min) || !std::isfinite(t_max))
        throw usage_error("grid rectangle is degenerate");
}

GridSpec GridSpec::square(double half_width, int resolution)
{
    return GridSpec{-half_width, half_width, -half_width, half_width, resolution, resolution};
}

SurfaceMap apply_deformation(const MapGerm& base, const DeformationParams& d, DeformationMode mode)
{
    if (base.size() != 3) throw usage_error("deformations act on three-component germs");
    SurfaceMap s = SurfaceMap::from_germ(base);
    const double mu1 = mode == DeformationMode::beaks ? 0.0 : d.mu1;
    const double mu2 = mode == DeformationMode::beaks ? 0.0 : d.mu2;
    s.x = s.x + mu1 * s.z;
    s.y = s.y + d.lambda * RealPoly::t() + mu2 * s.z;
    return s;
}

}  // namespace lgraph
