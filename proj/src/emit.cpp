#include <lgraph/envelope_geometry.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace lgraph {

namespace {

std::string fixed(double v, int digits = 3)
{
    std::array<char, 64> buf{};
    if (std::abs(v) < 0.5 * std::pow(10.0, -digits)) v = 0.0;  // no "-0.000"
    std::snprintf(buf.data(), buf.size(), "%.*f", digits, v);
    return buf.data();
}

std::string escape_xml(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    if (path.empty()) throw io_error("empty output path");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw io_error("failed writing '" + path.string() + "'");
}

constexpr std::array<const char*, 6> palette{"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};

}  // namespace

std::string render_svg(const PlaneCurveSet& curves, const SvgOptions& options)
{
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    auto grow = [&](const Point2& p) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    };
    for (const auto& b : curves.branches)
        for (const auto& p : b.points) grow(p);
    for (const auto& c : curves.cusps) grow(c);
    if (!(xmax >= xmin)) {
        xmin = ymin = -1.0;
        xmax = ymax = 1.0;
    }
    if (xmax - xmin < 1e-12) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    if (ymax - ymin < 1e-12) {
        ymin -= 1.0;
        ymax += 1.0;
    }

    const double margin = 16.0;
    const double w = options.width, h = options.height;
    const double sx = (w - 2 * margin) / (xmax - xmin);
    const double sy = (h - 2 * margin) / (ymax - ymin);
    auto px = [&](double x) { return margin + (x - xmin) * sx; };
    auto py = [&](double y) { return h - margin - (y - ymin) * sy; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.width << "\" height=\""
        << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n";
    if (!options.title.empty()) out << "  <title>" << escape_xml(options.title) << "</title>\n";
    out << "  <desc>x in [" << fixed(xmin, 6) << ", " << fixed(xmax, 6) << "], y in [" << fixed(ymin, 6) << ", "
        << fixed(ymax, 6) << "]</desc>\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
        << "\" fill=\"white\"/>\n";
    out << "  <g id=\"branches\" fill=\"none\" stroke-width=\"1.5\" stroke-linejoin=\"round\">\n";
    for (std::size_t i = 0; i < curves.branches.size(); ++i) {
        const auto& b = curves.branches[i];
        out << "    <path id=\"branch-" << i << "\" class=\"" << escape_xml(b.tag) << "\" stroke=\""
            << palette[i % palette.size()] << "\" d=\"";
        for (std::size_t k = 0; k < b.points.size(); ++k)
            out << (k == 0 ? "M" : " L") << fixed(px(b.points[k].x)) << ' ' << fixed(py(b.points[k].y));
        out << "\"/>\n";
    }
    out << "  </g>\n";
    out << "  <g id=\"cusps\" fill=\"#d62728\">\n";
    for (const auto& c : curves.cusps)
        out << "    <circle cx=\"" << fixed(px(c.x)) << "\" cy=\"" << fixed(py(c.y)) << "\" r=\"3\"/>\n";
    out << "  </g>\n";
    out << "</svg>\n";
    return out.str();
}

void emit_svg(const PlaneCurveSet& curves, const std::filesystem::path& path, const SvgOptions& options)
{
    write_file(path, render_svg(curves, options));
}

std::string render_obj(const LiftGrid& lift)
{
    std::ostringstream out;
    std::array<char, 128> buf{};
    for (const auto& s : lift.samples) {
        const double z = s.valid && s.chart == Chart::affine ? s.slope : 0.0;
        std::snprintf(buf.data(), buf.size(), "v %.9g %.9g %.9g\n", s.x, s.y, z);
        out << buf.data();
    }
    auto usable = [&](int i, int j) {
        const auto& s = lift.at(i, j);
        return s.valid && s.chart == Chart::affine;
    };
    auto id = [&](int i, int j) { return j * lift.grid.nx + i + 1; };
    for (int j = 0; j + 1 < lift.grid.ny; ++j)
        for (int i = 0; i + 1 < lift.grid.nx; ++i) {
            if (usable(i, j) && usable(i + 1, j) && usable(i + 1, j + 1))
                out << "f " << id(i, j) << ' ' << id(i + 1, j) << ' ' << id(i + 1, j + 1) << '\n';
            if (usable(i, j) && usable(i + 1, j + 1) && usable(i, j + 1))
                out << "f " << id(i, j) << ' ' << id(i + 1, j + 1) << ' ' << id(i, j + 1) << '\n';
        }
    return out.str();
}

void emit_obj(const LiftGrid& lift, const std::filesystem::path& path) { write_file(path, render_obj(lift)); }

}  // namespace lgraph
