#include "polyvem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "polyvem/errors.hpp"

namespace polyvem {

Polygon Mesh::cell_polygon(int c) const {
    std::vector<Point2> pts;
    pts.reserve(cells[static_cast<size_t>(c)].size());
    for (int vi : cells[static_cast<size_t>(c)]) pts.push_back(vertices[static_cast<size_t>(vi)]);
    return Polygon(std::move(pts));
}

int MeshTopology::edge_id(int va, int vb) const {
    const std::pair<int, int> key{std::min(va, vb), std::max(va, vb)};
    auto it = std::lower_bound(index_.begin(), index_.end(), key,
                               [](const auto& e, const auto& k) { return e.first < k; });
    if (it == index_.end() || it->first != key) return -1;
    return it->second;
}

MeshTopology build_topology(const Mesh& mesh) {
    std::map<std::pair<int, int>, int> ids;
    MeshTopology topo;
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const auto& loop = mesh.cells[static_cast<size_t>(c)];
        const size_t k = loop.size();
        if (k < 3) throw NonconformingMeshError("cell " + std::to_string(c) + " has fewer than 3 vertices");
        for (size_t i = 0; i < k; ++i) {
            const int va = loop[i];
            const int vb = loop[(i + 1) % k];
            if (va < 0 || vb < 0 || va >= mesh.num_vertices() || vb >= mesh.num_vertices())
                throw NonconformingMeshError("cell " + std::to_string(c) + " references a missing vertex");
            if (va == vb) throw NonconformingMeshError("cell " + std::to_string(c) + " repeats vertex " + std::to_string(va));
            const std::pair<int, int> key{std::min(va, vb), std::max(va, vb)};
            auto [it, inserted] = ids.try_emplace(key, static_cast<int>(topo.edges.size()));
            if (inserted) topo.edges.push_back({key.first, key.second, {c}});
            else topo.edges[static_cast<size_t>(it->second)].cells.push_back(c);
        }
    }

    topo.vertex_on_boundary.assign(static_cast<size_t>(mesh.num_vertices()), false);
    topo.edge_on_boundary.assign(topo.edges.size(), false);
    for (size_t e = 0; e < topo.edges.size(); ++e) {
        const MeshEdge& edge = topo.edges[e];
        if (edge.cells.size() > 2)
            throw NonconformingMeshError("edge (" + std::to_string(edge.a) + "," + std::to_string(edge.b) +
                                         ") is shared by " + std::to_string(edge.cells.size()) +
                                         " cells; a conforming mesh allows at most two");
        if (edge.cells.size() == 1) {
            topo.edge_on_boundary[e] = true;
            topo.vertex_on_boundary[static_cast<size_t>(edge.a)] = true;
            topo.vertex_on_boundary[static_cast<size_t>(edge.b)] = true;
        }
    }

    topo.index_.reserve(topo.edges.size());
    for (size_t e = 0; e < topo.edges.size(); ++e)
        topo.index_.push_back({{topo.edges[e].a, topo.edges[e].b}, static_cast<int>(e)});
    std::sort(topo.index_.begin(), topo.index_.end());
    return topo;
}

namespace {

// strict crossing: endpoints touching does not count
bool proper_crossing(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const double o1 = cross(b - a, c - a);
    const double o2 = cross(b - a, d - a);
    const double o3 = cross(d - c, a - c);
    const double o4 = cross(d - c, b - c);
    return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}

bool centroid_sees_boundary(const Polygon& poly) {
    const Point2 c = poly.centroid();
    const int n = poly.num_vertices();
    for (int e = 0; e < n; ++e) {
        const Point2 a = poly.edge_start(e);
        const Point2 b = poly.edge_end(e);
        for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const Point2 s = a + t * (b - a);
            for (int f = 0; f < n; ++f) {
                if (f == e) continue;
                if (proper_crossing(c, s, poly.edge_start(f), poly.edge_end(f))) return false;
            }
        }
    }
    return true;
}

} // namespace

ShapeReport validate_mesh(const Mesh& mesh) {
    const MeshTopology topo = build_topology(mesh);

    ShapeReport report;
    report.cells.reserve(static_cast<size_t>(mesh.num_cells()));
    for (int c = 0; c < mesh.num_cells(); ++c) {
        Polygon poly = mesh.cell_polygon(c);  // throws InvalidGeometryError on bad cells
        CellShape shape;
        shape.area = poly.area();
        shape.diameter = poly.diameter();
        shape.d2_ratio = poly.min_edge_length() / poly.diameter();
        shape.star_shaped_wrt_centroid = centroid_sees_boundary(poly);
        report.cell_area_sum += shape.area;
        report.cells.push_back(shape);
    }

    for (size_t e = 0; e < topo.edges.size(); ++e)
        (topo.edge_on_boundary[e] ? report.boundary_edge_count : report.interior_edge_count)++;

    // directed boundary edges of each cell, signed shoelace; interior edges
    // cancel pairwise, so this telescopes to the area of the covered region
    double twice = 0.0;
    for (const auto& loop : mesh.cells) {
        const size_t k = loop.size();
        for (size_t i = 0; i < k; ++i) {
            const int va = loop[i];
            const int vb = loop[(i + 1) % k];
            const int eid = topo.edge_id(va, vb);
            if (topo.edge_on_boundary[static_cast<size_t>(eid)])
                twice += cross(mesh.vertices[static_cast<size_t>(va)], mesh.vertices[static_cast<size_t>(vb)]);
        }
    }
    report.boundary_loop_area = 0.5 * twice;

    if (std::abs(report.cell_area_sum - report.boundary_loop_area) >
        1e-10 * std::max(report.cell_area_sum, 1.0))
        throw NonconformingMeshError("cell areas do not tile the enclosed region (overlap or gap)");
    return report;
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

Mesh square_mesh(int n) {
    if (n < 1) throw Error("square_mesh needs n >= 1");
    Mesh mesh;
    const double h = 1.0 / n;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) mesh.vertices.push_back({i * h, j * h});
    auto vid = [n](int i, int j) { return j * (n + 1) + i; };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            mesh.cells.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
    return mesh;
}

namespace {

// Sutherland-Hodgman clip of a convex loop against dot(x, nrm) <= offset.
std::vector<Point2> clip_halfplane(const std::vector<Point2>& pts, const Point2& nrm, double offset) {
    std::vector<Point2> out;
    const size_t n = pts.size();
    for (size_t i = 0; i < n; ++i) {
        const Point2& cur = pts[i];
        const Point2& nxt = pts[(i + 1) % n];
        const double dc = dot(cur, nrm) - offset;
        const double dn = dot(nxt, nrm) - offset;
        if (dc <= 0.0) {
            out.push_back(cur);
            if (dn > 0.0) out.push_back(cur + (dc / (dc - dn)) * (nxt - cur));
        } else if (dn <= 0.0) {
            out.push_back(cur + (dc / (dc - dn)) * (nxt - cur));
        }
    }
    return out;
}

std::vector<Point2> voronoi_cell(const std::vector<Point2>& seeds, size_t i) {
    std::vector<Point2> cell{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    const Point2 si = seeds[i];
    for (size_t j = 0; j < seeds.size() && !cell.empty(); ++j) {
        if (j == i) continue;
        const Point2 d = seeds[j] - si;
        // keep the side of the bisector closer to seed i
        cell = clip_halfplane(cell, d, dot(d, si) + 0.5 * dot(d, d));
    }
    return cell;
}

// Merges coincident vertices (1e-9 box) while collecting cell loops.
class MeshAssembler {
public:
    int vertex_id(const Point2& p) {
        const long long gx = std::llround(p.x / kTol);
        const long long gy = std::llround(p.y / kTol);
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = grid_.find({gx + dx, gy + dy});
                if (it != grid_.end() &&
                    std::abs(mesh_.vertices[static_cast<size_t>(it->second)].x - p.x) <= kTol &&
                    std::abs(mesh_.vertices[static_cast<size_t>(it->second)].y - p.y) <= kTol)
                    return it->second;
            }
        const int id = mesh_.num_vertices();
        mesh_.vertices.push_back(p);
        grid_[{gx, gy}] = id;
        return id;
    }

    void add_cell(const std::vector<Point2>& loop) {
        std::vector<int> cell;
        for (const Point2& p : loop) {
            const int id = vertex_id(p);
            if (cell.empty() || cell.back() != id) cell.push_back(id);
        }
        while (cell.size() > 1 && cell.back() == cell.front()) cell.pop_back();
        if (cell.size() >= 3) mesh_.cells.push_back(std::move(cell));
    }

    Mesh take() { return std::move(mesh_); }

private:
    static constexpr double kTol = 1e-9;
    Mesh mesh_;
    std::map<std::pair<long long, long long>, int> grid_;
};

Point2 loop_centroid_area_weighted(const std::vector<Point2>& loop) {
    double a2 = 0.0, cx = 0.0, cy = 0.0;
    const size_t n = loop.size();
    for (size_t i = 0; i < n; ++i) {
        const Point2& p = loop[i];
        const Point2& q = loop[(i + 1) % n];
        const double w = cross(p, q);
        a2 += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    return {cx / (3.0 * a2), cy / (3.0 * a2)};
}

Mesh voronoi_mesh(const std::vector<Point2>& seeds) {
    MeshAssembler assembler;
    for (size_t i = 0; i < seeds.size(); ++i) {
        const std::vector<Point2> cell = voronoi_cell(seeds, i);
        if (cell.size() >= 3 && shoelace_area(cell) > 1e-14) assembler.add_cell(cell);
    }
    return assembler.take();
}

} // namespace

Mesh voronoi_lloyd_mesh(std::vector<Point2> seeds, int iterations) {
    if (seeds.size() < 2) throw Error("voronoi mesh needs at least 2 seeds");
    for (size_t i = 0; i < seeds.size(); ++i)
        for (size_t j = i + 1; j < seeds.size(); ++j)
            if (distance(seeds[i], seeds[j]) < 1e-12)
                throw Error("coincident Voronoi seeds " + std::to_string(i) + " and " + std::to_string(j));

    for (int it = 0; it < iterations; ++it) {
        double max_move = 0.0;
        std::vector<Point2> next(seeds.size());
        for (size_t i = 0; i < seeds.size(); ++i) {
            const std::vector<Point2> cell = voronoi_cell(seeds, i);
            if (cell.size() < 3) throw Error("empty Voronoi cell during Lloyd relaxation");
            next[i] = loop_centroid_area_weighted(cell);
            max_move = std::max(max_move, distance(next[i], seeds[i]));
        }
        seeds = std::move(next);
        if (max_move < 1e-8) break;
    }
    return voronoi_mesh(seeds);
}

Mesh voronoi_lloyd_mesh(int n_seeds, int iterations, std::uint64_t rng_seed) {
    if (n_seeds < 2) throw Error("voronoi mesh needs at least 2 seeds");
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> unif(0.05, 0.95);

    for (int attempt = 0; attempt < 16; ++attempt) {
        std::vector<Point2> seeds(static_cast<size_t>(n_seeds));
        for (auto& s : seeds) s = {unif(rng), unif(rng)};
        bool distinct = true;
        for (size_t i = 0; i < seeds.size() && distinct; ++i)
            for (size_t j = i + 1; j < seeds.size() && distinct; ++j)
                if (distance(seeds[i], seeds[j]) < 1e-6) distinct = false;
        if (!distinct) continue;  // redraw, deterministic via the shared rng
        return voronoi_lloyd_mesh(std::move(seeds), iterations);
    }
    throw Error("could not draw distinct Voronoi seeds after 16 attempts");
}

Mesh hexagonal_mesh(int n) {
    if (n < 1) throw Error("hexagonal_mesh needs n >= 1");
    const double a = 1.0 / n;             // lattice spacing
    const double row_h = a * std::sqrt(3.0) / 2.0;
    const double margin = 2.0 * a;

    std::vector<Point2> seeds;
    const int jmax = static_cast<int>(std::ceil((0.5 + margin) / row_h));
    for (int j = -jmax; j <= jmax; ++j) {
        const double y = 0.5 + j * row_h;
        const double x0 = (j % 2 == 0) ? 0.5 : 0.5 + 0.5 * a;
        const int imax = static_cast<int>(std::ceil((0.5 + margin) / a)) + 1;
        for (int i = -imax; i <= imax; ++i) {
            const Point2 p{x0 + i * a, y};
            if (p.x >= -margin && p.x <= 1.0 + margin && p.y >= -margin && p.y <= 1.0 + margin)
                seeds.push_back(p);
        }
    }
    return voronoi_mesh(seeds);
}

Mesh single_cell_mesh(const Polygon& polygon) {
    Mesh mesh;
    mesh.vertices = polygon.vertices();
    std::vector<int> loop(static_cast<size_t>(polygon.num_vertices()));
    for (size_t i = 0; i < loop.size(); ++i) loop[i] = static_cast<int>(i);
    mesh.cells.push_back(std::move(loop));
    return mesh;
}

// ---------------------------------------------------------------------------
// degenerate element families
// ---------------------------------------------------------------------------

Polygon collapsing_hexagon(int i) {
    if (i < 1) throw Error("collapsing_hexagon needs i >= 1");
    const double h = std::ldexp(1.0, 1 - i);  // 2^{1-i}
    return Polygon({{1.0, 0.0}, {2.0, h}, {1.0, 2.0 * h}, {0.0, h}, {-1.0, h}, {0.0, 0.0}});
}

Polygon hanging_square(int i) {
    if (i < 1) throw Error("hanging_square needs i >= 1");
    const double c = std::ldexp(1.0, -i);  // 2^{-i}
    return Polygon({{1.0, 0.0}, {1.0, 1.0}, {c, 1.0}, {0.0, 1.0}, {0.0, 0.0}});
}

} // namespace polyvem
