#pragma once

// Floating-point geometry of families and their projections: criminant
// tracing by marching squares, envelopes, Legendrian lifts, deformations of
// the projection normal form, cusp detection and SVG/OBJ output.

#include <lgraph/jet_algebra.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lgraph {

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point2&, const Point2&) = default;
};

/// Polynomial in (xi, t) with double coefficients.
class RealPoly {
public:
    using Terms = std::map<std::pair<int, int>, double>;

    RealPoly() = default;
    static RealPoly from_jet(const TruncatedPoly& p);
    static RealPoly constant(double c);
    static RealPoly xi();
    static RealPoly t();

    void add_term(int xi_exp, int t_exp, double c);
    const Terms& terms() const noexcept { return terms_; }

    double operator()(double xi, double t) const;
    RealPoly derive(int variable) const;

    friend RealPoly operator+(const RealPoly& a, const RealPoly& b);
    friend RealPoly operator-(const RealPoly& a, const RealPoly& b);
    friend RealPoly operator*(const RealPoly& a, const RealPoly& b);
    friend RealPoly operator*(double s, const RealPoly& a);

private:
    Terms terms_;
};

struct Jacobian2 {
    double x_xi, x_t, y_xi, y_t;
    double det() const { return x_xi * y_t - x_t * y_xi; }
};

/// A map (xi, t) -> (x, y) with polynomial components.
class PlanarMap {
public:
    PlanarMap(RealPoly x, RealPoly y);
    /// First two components of a germ.
    static PlanarMap from_germ(const MapGerm& f);

    const RealPoly& x() const noexcept { return x_; }
    const RealPoly& y() const noexcept { return y_; }

    Point2 operator()(double xi, double t) const { return {x_(xi, t), y_(xi, t)}; }
    Jacobian2 jacobian(double xi, double t) const;
    /// Jacobian determinant as a polynomial, with its gradient.
    const RealPoly& det() const noexcept { return det_; }
    const RealPoly& det_xi() const noexcept { return det_xi_; }
    const RealPoly& det_t() const noexcept { return det_t_; }

private:
    RealPoly x_, y_;
    RealPoly x_xi_, x_t_, y_xi_, y_t_;
    RealPoly det_, det_xi_, det_t_;
};

/// A map (xi, t) -> (x, y, z); z is the slope coordinate of a lift or the
/// third coordinate of a normal form.
struct SurfaceMap {
    RealPoly x, y, z;
    PlanarMap projection() const { return PlanarMap(x, y); }
    static SurfaceMap from_germ(const MapGerm& f);
};

/// Exact Jacobian determinant d_xi x * d_t y - d_t x * d_xi y.
TruncatedPoly jacobian_det(const TruncatedPoly& x, const TruncatedPoly& y);

struct GridSpec {
    double xi_min = -1.0, xi_max = 1.0;
    double t_min = -1.0, t_max = 1.0;
    int nx = 512, ny = 512;

    void validate() const;
    double step_xi() const { return (xi_max - xi_min) / (nx - 1); }
    double step_t() const { return (t_max - t_min) / (ny - 1); }
    double xi_at(int i) const { return xi_min + i * step_xi(); }
    double t_at(int j) const { return t_min + j * step_t(); }

    static GridSpec square(double half_width, int resolution);
};

struct Polyline {
    std::vector<Point2> points;
    /// "support" for the t = 0 branch of an adapted family, "branch" otherwise.
    std::string tag = "branch";
    /// Indices of vertices that are crossing points of the curve set.
    std::vector<std::size_t> singular;
};

struct PlaneCurveSet {
    std::vector<Polyline> branches;
    std::vector<Point2> cusps;
    /// Crossing points where branches meet.
    std::vector<Point2> nodes;
    bool empty() const { return branches.empty(); }
};

/// Zero level set of the Jacobian determinant in source coordinates.
PlaneCurveSet trace_criminant(const PlanarMap& f, const GridSpec& grid);

/// Image of a criminant under f; tags and singular indices carry over.
PlaneCurveSet envelope(const PlanarMap& f, const PlaneCurveSet& criminant);

/// Least-squares c in y = c x^3 over the points of `branch`.
double fit_cubic_coefficient(const Polyline& branch);

// --- Legendrian lift -------------------------------------------------------

enum class Chart { affine, reciprocal };

struct LiftSample {
    double xi = 0.0, t = 0.0;
    double x = 0.0, y = 0.0;
    Chart chart = Chart::affine;
    /// p = d_t y / d_t x in the affine chart, q = d_t x / d_t y otherwise.
    double slope = 0.0;
    bool valid = true;
    std::optional<double> p, q;
};

inline constexpr double default_chart_epsilon = 1e-8;

LiftSample lift_at(const PlanarMap& f, double xi, double t, double epsilon = default_chart_epsilon);

struct LiftGrid {
    GridSpec grid;
    /// Row-major, t outer, xi inner.
    std::vector<LiftSample> samples;
    std::size_t invalid_count = 0;
    const LiftSample& at(int i, int j) const { return samples[static_cast<std::size_t>(j * grid.nx + i)]; }
};

LiftGrid legendrian_lift(const PlanarMap& f, const GridSpec& grid, double epsilon = default_chart_epsilon);

// --- Deformations and cusps ------------------------------------------------

struct DeformationParams {
    double lambda = 0.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
};

enum class DeformationMode { versal, beaks };

/// base + (mu1 z, lambda t + mu2 z, 0) with z the third component of base;
/// beaks mode ignores mu1, mu2.
SurfaceMap apply_deformation(const MapGerm& base, const DeformationParams& d, DeformationMode mode);

struct Cusp {
    Point2 source;
    Point2 target;
    std::size_t branch = 0;
};

struct CuspReport {
    std::vector<Cusp> cusps;
    /// Runs where the kernel stays within theta_c of the tangent without crossing it.
    std::size_t degenerate_tangencies = 0;
    std::size_t count() const { return cusps.size(); }
};

inline constexpr double default_cusp_angle_deg = 2.0;

/// Criminant points where the kernel of df is tangent to the criminant.
CuspReport count_cusps(const PlanarMap& f, const PlaneCurveSet& criminant,
                       double theta_c_deg = default_cusp_angle_deg);
CuspReport count_cusps(const PlanarMap& f, const GridSpec& grid, double theta_c_deg = default_cusp_angle_deg);

// --- Output ----------------------------------------------------------------

struct SvgOptions {
    int width = 512;
    int height = 512;
    std::string title;
};

std::string render_svg(const PlaneCurveSet& curves, const SvgOptions& options = {});
void emit_svg(const PlaneCurveSet& curves, const std::filesystem::path& path, const SvgOptions& options = {});

std::string render_obj(const LiftGrid& lift);
void emit_obj(const LiftGrid& lift, const std::filesystem::path& path);

}  // namespace lgraph
