#include <lgraph/envelope_geometry.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>

namespace lgraph {

namespace {

using VertexId = std::int64_t;

// Undirected segment graph produced by marching squares. Vertices are edge
// crossings (keyed by grid edge) and crossing nodes (keyed by cell).
class SegmentGraph {
public:
    void add_vertex(VertexId id, Point2 p, bool node = false)
    {
        auto [it, inserted] = vertices_.try_emplace(id, Vertex{p, {}, node});
        if (!inserted && node) it->second.node = true;
    }
    void connect(VertexId a, VertexId b)
    {
        vertices_.at(a).adj.push_back(b);
        vertices_.at(b).adj.push_back(a);
    }

    struct Vertex {
        Point2 p;
        std::vector<VertexId> adj;
        bool node = false;
    };

    const std::unordered_map<VertexId, Vertex>& vertices() const { return vertices_; }

private:
    std::unordered_map<VertexId, Vertex> vertices_;
};

struct Chain {
    std::vector<VertexId> ids;
};

class MarchingSquares {
public:
    MarchingSquares(const PlanarMap& f, const GridSpec& g) : f_(f), g_(g)
    {
        values_.resize(static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny));
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) values_[idx(i, j)] = f.det()(g.xi_at(i), g.t_at(j));
        horizontal_edges_ = static_cast<VertexId>(g.ny) * (g.nx - 1);
        vertical_edges_ = static_cast<VertexId>(g.ny - 1) * g.nx;
    }

    SegmentGraph run()
    {
        SegmentGraph graph;
        owned_.assign(static_cast<std::size_t>(g_.nx - 1) * static_cast<std::size_t>(g_.ny - 1), false);
        for (int j = 0; j + 1 < g_.ny; ++j)
            for (int i = 0; i + 1 < g_.nx; ++i)
                if (!owned_[cell_index(i, j)] && gradient_may_vanish(i, j))
                    if (auto node = crossing_node(i, j)) attach_node(graph, i, j, *node);
        for (int j = 0; j + 1 < g_.ny; ++j)
            for (int i = 0; i + 1 < g_.nx; ++i)
                if (!owned_[cell_index(i, j)]) cell(graph, i, j);
        return graph;
    }

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * g_.nx + i; }
    std::size_t cell_index(int i, int j) const { return static_cast<std::size_t>(j) * (g_.nx - 1) + i; }
    double value(int i, int j) const { return values_[idx(i, j)]; }
    static bool positive(double v) { return v >= 0.0; }

    VertexId h_edge(int i, int j) const { return static_cast<VertexId>(j) * (g_.nx - 1) + i; }
    VertexId v_edge(int i, int j) const { return horizontal_edges_ + static_cast<VertexId>(j) * g_.nx + i; }
    VertexId cell_id(int i, int j) const
    {
        return horizontal_edges_ + vertical_edges_ + static_cast<VertexId>(j) * (g_.nx - 1) + i;
    }

    // Zero of det on a grid edge with a sign change, by regula falsi
    // (Illinois variant) started from the linear interpolant.
    Point2 interpolate(int i0, int j0, int i1, int j1) const
    {
        const Point2 p0{g_.xi_at(i0), g_.t_at(j0)}, p1{g_.xi_at(i1), g_.t_at(j1)};
        auto at = [&](double s) { return Point2{p0.x + s * (p1.x - p0.x), p0.y + s * (p1.y - p0.y)}; };
        double lo = 0.0, hi = 1.0;
        double flo = value(i0, j0), fhi = value(i1, j1);
        if (flo == 0.0) return p0;
        int side = 0;
        double s = flo / (flo - fhi);
        for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
            s = (lo * fhi - hi * flo) / (fhi - flo);
            const Point2 p = at(s);
            const double fs = f_.det()(p.x, p.y);
            if (fs == 0.0) break;
            if ((fs >= 0.0) == (flo >= 0.0)) {
                lo = s;
                flo = fs;
                if (side == -1) fhi *= 0.5;
                side = -1;
            } else {
                hi = s;
                fhi = fs;
                if (side == 1) flo *= 0.5;
                side = 1;
            }
        }
        return at(s);
    }

    // Critical point of det inside the cell with a near-zero value: the
    // criminant crosses itself there.
    std::optional<Point2> crossing_node(int i, int j) const
    {
        const double hx = g_.step_xi(), ht = g_.step_t();
        double xi = g_.xi_at(i) + 0.5 * hx, t = g_.t_at(j) + 0.5 * ht;
        const RealPoly& dx = f_.det_xi();
        const RealPoly& dt = f_.det_t();
        const RealPoly dxx = dx.derive(var::xi), dxt = dx.derive(var::t), dtt = dt.derive(var::t);
        double hess_norm = 0.0;
        for (int it = 0; it < 12; ++it) {
            const double gx = dx(xi, t), gt = dt(xi, t);
            const double a = dxx(xi, t), b = dxt(xi, t), c = dtt(xi, t);
            hess_norm = std::sqrt(a * a + 2 * b * b + c * c);
            const double det = a * c - b * b;
            if (det == 0.0) return std::nullopt;
            const double sx = (c * gx - b * gt) / det;
            const double st = (a * gt - b * gx) / det;
            xi -= sx;
            t -= st;
            if (std::abs(sx) < 1e-14 * (1 + std::abs(xi)) && std::abs(st) < 1e-14 * (1 + std::abs(t))) break;
        }
        const double margin = 1e-6;
        if (xi < g_.xi_at(i) - margin * hx || xi > g_.xi_at(i + 1) + margin * hx || t < g_.t_at(j) - margin * ht ||
            t > g_.t_at(j + 1) + margin * ht)
            return std::nullopt;
        const double h = std::max(hx, ht);
        if (std::abs(f_.det()(xi, t)) > 1e-2 * h * h * hess_norm) return std::nullopt;
        // a definite Hessian means an isolated zero, not a crossing
        if (dxx(xi, t) * dtt(xi, t) - dxt(xi, t) * dxt(xi, t) > 0.0) return std::nullopt;
        return Point2{xi, t};
    }

    // Both gradient components change sign (or vanish) over the cell corners.
    bool gradient_may_vanish(int i, int j) const
    {
        auto straddles = [&](const RealPoly& g) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (int dj = 0; dj < 2; ++dj)
                for (int di = 0; di < 2; ++di) {
                    const double v = g(g_.xi_at(i + di), g_.t_at(j + dj));
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            return lo <= 0.0 && hi >= 0.0;
        };
        return straddles(f_.det_xi()) && straddles(f_.det_t());
    }

    // A node can hide inside a cell whose corners all share a sign (two
    // branches cross the same edge). Claim a block of cells around it, grown
    // until its boundary shows at least four crossings, and wire those
    // crossings straight to the node.
    void attach_node(SegmentGraph& graph, int i, int j, Point2 node)
    {
        constexpr int max_radius = 8;
        for (int r = 1; r <= max_radius; ++r) {
            const int i0 = i - r, i1 = i + r + 1, j0 = j - r, j1 = j + r + 1;  // vertex range
            if (i0 < 0 || j0 < 0 || i1 >= g_.nx || j1 >= g_.ny) return;
            std::vector<std::pair<VertexId, Point2>> ring;
            auto edge = [&](VertexId id, int a0, int b0, int a1, int b1) {
                if (positive(value(a0, b0)) != positive(value(a1, b1))) ring.push_back({id, interpolate(a0, b0, a1, b1)});
            };
            for (int a = i0; a < i1; ++a) {
                edge(h_edge(a, j0), a, j0, a + 1, j0);
                edge(h_edge(a, j1), a, j1, a + 1, j1);
            }
            for (int b = j0; b < j1; ++b) {
                edge(v_edge(i0, b), i0, b, i0, b + 1);
                edge(v_edge(i1, b), i1, b, i1, b + 1);
            }
            if (ring.size() < 4) continue;
            for (int b = j0; b < j1; ++b)
                for (int a = i0; a < i1; ++a) owned_[cell_index(a, b)] = true;
            const VertexId center = cell_id(i, j);
            graph.add_vertex(center, node, true);
            for (const auto& [id, p] : ring) {
                graph.add_vertex(id, p);
                graph.connect(id, center);
            }
            return;
        }
    }

    void cell(SegmentGraph& graph, int i, int j)
    {
        const bool c0 = positive(value(i, j)), c1 = positive(value(i + 1, j));
        const bool c2 = positive(value(i + 1, j + 1)), c3 = positive(value(i, j + 1));
        // edges: 0 bottom, 1 right, 2 top, 3 left
        std::array<std::optional<VertexId>, 4> e;
        if (c0 != c1) {
            e[0] = h_edge(i, j);
            graph.add_vertex(*e[0], interpolate(i, j, i + 1, j));
        }
        if (c1 != c2) {
            e[1] = v_edge(i + 1, j);
            graph.add_vertex(*e[1], interpolate(i + 1, j, i + 1, j + 1));
        }
        if (c3 != c2) {
            e[2] = h_edge(i, j + 1);
            graph.add_vertex(*e[2], interpolate(i, j + 1, i + 1, j + 1));
        }
        if (c0 != c3) {
            e[3] = v_edge(i, j);
            graph.add_vertex(*e[3], interpolate(i, j, i, j + 1));
        }
        const int crossings = static_cast<int>(std::count_if(e.begin(), e.end(), [](const auto& v) { return v.has_value(); }));
        if (crossings == 0) return;
        if (crossings == 2) {
            std::array<VertexId, 2> ends{};
            int k = 0;
            for (const auto& v : e)
                if (v) ends[static_cast<std::size_t>(k++)] = *v;
            graph.connect(ends[0], ends[1]);
            return;
        }
        // saddle: c0 == c2 != c1 == c3
        const double center = f_.det()(g_.xi_at(i) + 0.5 * g_.step_xi(), g_.t_at(j) + 0.5 * g_.step_t());
        if (positive(center) == c0) {
            // c0 and c2 joined through the middle; cut off corners 1 and 3
            graph.connect(*e[0], *e[1]);
            graph.connect(*e[2], *e[3]);
        } else {
            graph.connect(*e[0], *e[3]);
            graph.connect(*e[1], *e[2]);
        }
    }

    const PlanarMap& f_;
    const GridSpec& g_;
    std::vector<double> values_;
    std::vector<bool> owned_;
    VertexId horizontal_edges_ = 0;
    VertexId vertical_edges_ = 0;
};

// Maximal paths between vertices of degree != 2, plus closed loops.
std::vector<Chain> extract_chains(const SegmentGraph& graph)
{
    const auto& verts = graph.vertices();
    std::vector<VertexId> ids;
    ids.reserve(verts.size());
    for (const auto& [id, v] : verts) ids.push_back(id);
    std::sort(ids.begin(), ids.end());

    auto edge_key = [](VertexId a, VertexId b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
    struct PairHash {
        std::size_t operator()(const std::pair<VertexId, VertexId>& p) const
        {
            return std::hash<VertexId>()(p.first * 1000003 + p.second);
        }
    };
    std::unordered_map<std::pair<VertexId, VertexId>, bool, PairHash> visited;

    auto walk = [&](VertexId start, VertexId next) {
        Chain c;
        c.ids.push_back(start);
        VertexId prev = start, cur = next;
        visited[edge_key(prev, cur)] = true;
        while (true) {
            c.ids.push_back(cur);
            const auto& v = verts.at(cur);
            if (v.adj.size() != 2 || cur == start) break;
            const VertexId nxt = v.adj[0] == prev ? v.adj[1] : v.adj[0];
            if (visited[edge_key(cur, nxt)]) break;
            visited[edge_key(cur, nxt)] = true;
            prev = cur;
            cur = nxt;
        }
        return c;
    };

    std::vector<Chain> chains;
    for (VertexId id : ids) {
        const auto& v = verts.at(id);
        if (v.adj.size() == 2) continue;
        auto adj = v.adj;
        std::sort(adj.begin(), adj.end());
        for (VertexId n : adj)
            if (!visited[edge_key(id, n)]) chains.push_back(walk(id, n));
    }
    for (VertexId id : ids) {
        const auto& v = verts.at(id);
        if (v.adj.size() != 2) continue;
        auto adj = v.adj;
        std::sort(adj.begin(), adj.end());
        if (!visited[edge_key(id, adj[0])]) chains.push_back(walk(id, adj[0]));
    }
    return chains;
}

Point2 unit(Point2 from, Point2 to)
{
    const double dx = to.x - from.x, dy = to.y - from.y;
    const double n = std::hypot(dx, dy);
    return n > 0 ? Point2{dx / n, dy / n} : Point2{0, 0};
}

// Joins chains through crossing nodes, pairing the chain ends at each node by
// most nearly opposite direction, and returns polylines as vertex id lists.
std::vector<std::vector<VertexId>> join_through_nodes(const SegmentGraph& graph, std::vector<Chain> chains)
{
    const auto& verts = graph.vertices();
    struct End {
        std::size_t chain;
        bool at_start;
    };
    std::unordered_map<VertexId, std::vector<End>> ends_at_node;
    for (std::size_t c = 0; c < chains.size(); ++c) {
        const auto& ids = chains[c].ids;
        if (ids.front() == ids.back()) continue;
        if (verts.at(ids.front()).node) ends_at_node[ids.front()].push_back({c, true});
        if (verts.at(ids.back()).node) ends_at_node[ids.back()].push_back({c, false});
    }

    // link[c][0] = partner of chain c's start, link[c][1] = partner of its end
    std::vector<std::array<std::optional<End>, 2>> link(chains.size());
    std::vector<VertexId> nodes;
    for (const auto& [id, ends] : ends_at_node) nodes.push_back(id);
    std::sort(nodes.begin(), nodes.end());
    for (VertexId node : nodes) {
        auto ends = ends_at_node[node];
        const Point2 p = verts.at(node).p;
        auto direction = [&](const End& e) {
            const auto& ids = chains[e.chain].ids;
            const std::size_t k = std::min<std::size_t>(4, ids.size() - 1);
            const VertexId far = e.at_start ? ids[k] : ids[ids.size() - 1 - k];
            return unit(p, verts.at(far).p);
        };
        std::vector<bool> taken(ends.size(), false);
        while (true) {
            double best = 2.0;
            std::size_t ba = 0, bb = 0;
            for (std::size_t a = 0; a < ends.size(); ++a)
                for (std::size_t b = a + 1; b < ends.size(); ++b) {
                    if (taken[a] || taken[b] || ends[a].chain == ends[b].chain) continue;
                    const Point2 da = direction(ends[a]), db = direction(ends[b]);
                    const double dot = da.x * db.x + da.y * db.y;
                    if (dot < best) {
                        best = dot;
                        ba = a;
                        bb = b;
                    }
                }
            if (best > 1.0) break;
            taken[ba] = taken[bb] = true;
            link[ends[ba].chain][ends[ba].at_start ? 0 : 1] = ends[bb];
            link[ends[bb].chain][ends[bb].at_start ? 0 : 1] = ends[ba];
        }
    }

    std::vector<bool> done(chains.size(), false);
    std::vector<std::vector<VertexId>> out;
    auto follow = [&](std::size_t c, bool forward) {
        std::vector<VertexId> ids;
        while (!done[c]) {
            done[c] = true;
            auto part = chains[c].ids;
            if (!forward) std::reverse(part.begin(), part.end());
            ids.insert(ids.end(), ids.empty() ? part.begin() : part.begin() + 1, part.end());
            const auto& next = link[c][forward ? 1 : 0];
            if (!next) break;
            c = next->chain;
            forward = next->at_start;
        }
        return ids;
    };
    // open polylines first: start from chain ends that have no partner
    for (std::size_t c = 0; c < chains.size(); ++c) {
        if (done[c]) continue;
        if (!link[c][0]) out.push_back(follow(c, true));
        else if (!link[c][1]) out.push_back(follow(c, false));
    }
    for (std::size_t c = 0; c < chains.size(); ++c)
        if (!done[c]) out.push_back(follow(c, true));
    return out;
}

bool point_less(const Point2& a, const Point2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }

}  // namespace

PlaneCurveSet trace_criminant(const PlanarMap& f, const GridSpec& grid)
{
    grid.validate();
    MarchingSquares ms(f, grid);
    const SegmentGraph graph = ms.run();
    const auto polylines = join_through_nodes(graph, extract_chains(graph));
    const auto& verts = graph.vertices();

    PlaneCurveSet out;
    for (const auto& [id, v] : verts)
        if (v.node) out.nodes.push_back(v.p);
    std::sort(out.nodes.begin(), out.nodes.end(), point_less);

    for (const auto& ids : polylines) {
        if (ids.size() < 2) continue;
        Polyline pl;
        for (VertexId id : ids) pl.points.push_back(verts.at(id).p);
        if (point_less(pl.points.back(), pl.points.front())) std::reverse(pl.points.begin(), pl.points.end());
        for (std::size_t k = 0; k < pl.points.size(); ++k)
            if (std::binary_search(out.nodes.begin(), out.nodes.end(), pl.points[k], point_less))
                pl.singular.push_back(k);
        const double tol = grid.step_t();
        if (std::all_of(pl.points.begin(), pl.points.end(), [&](const Point2& p) { return std::abs(p.y) <= tol; }))
            pl.tag = "support";
        out.branches.push_back(std::move(pl));
    }
    std::sort(out.branches.begin(), out.branches.end(),
              [](const Polyline& a, const Polyline& b) { return point_less(a.points.front(), b.points.front()); });
    return out;
}

PlaneCurveSet envelope(const PlanarMap& f, const PlaneCurveSet& criminant)
{
    PlaneCurveSet out;
    for (const auto& b : criminant.branches) {
        Polyline pl;
        pl.tag = b.tag;
        pl.singular = b.singular;
        pl.points.reserve(b.points.size());
        for (const auto& p : b.points) pl.points.push_back(f(p.x, p.y));
        out.branches.push_back(std::move(pl));
    }
    for (const auto& c : criminant.cusps) out.cusps.push_back(f(c.x, c.y));
    for (const auto& n : criminant.nodes) out.nodes.push_back(f(n.x, n.y));
    return out;
}

double fit_cubic_coefficient(const Polyline& branch)
{
    double num = 0.0, den = 0.0;
    for (const auto& p : branch.points) {
        const double x3 = p.x * p.x * p.x;
        num += p.y * x3;
        den += x3 * x3;
    }
    if (den == 0.0) throw usage_error("cannot fit y = c x^3 on a branch concentrated at x = 0");
    return num / den;
}

}  // namespace lgraph
