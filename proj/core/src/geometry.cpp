#include "polyvem/geometry.hpp"

#include <algorithm>
#include <limits>

#include "polyvem/errors.hpp"

namespace polyvem {

double shoelace_area(const std::vector<Point2>& loop) {
    double twice = 0.0;
    const size_t n = loop.size();
    for (size_t i = 0; i < n; ++i) {
        const Point2& a = loop[i];
        const Point2& b = loop[(i + 1) % n];
        twice += cross(a, b);
    }
    return 0.5 * twice;
}

namespace {

Point2 loop_centroid(const std::vector<Point2>& loop, double area) {
    // area-weighted first moment of the shoelace decomposition
    double cx = 0.0, cy = 0.0;
    const size_t n = loop.size();
    for (size_t i = 0; i < n; ++i) {
        const Point2& a = loop[i];
        const Point2& b = loop[(i + 1) % n];
        const double w = cross(a, b);
        cx += (a.x + b.x) * w;
        cy += (a.y + b.y) * w;
    }
    return {cx / (6.0 * area), cy / (6.0 * area)};
}

bool strictly_between(double lo, double v, double hi) {
    return (lo < v && v < hi) || (hi < v && v < lo);
}

// 1 left / -1 right / 0 collinear, with respect to directed line ab
int orient(const Point2& a, const Point2& b, const Point2& c) {
    const double d = cross(b - a, c - a);
    if (d > 0.0) return 1;
    if (d < 0.0) return -1;
    return 0;
}

} // namespace

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const int o1 = orient(a, b, c);
    const int o2 = orient(a, b, d);
    const int o3 = orient(c, d, a);
    const int o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    auto on_segment = [](const Point2& p, const Point2& q, const Point2& r) {
        return orient(p, q, r) == 0 &&
               std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
               std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
    };
    return on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b);
}

Polygon::Polygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    const size_t n = vertices_.size();
    if (n < 3) throw InvalidGeometryError("polygon needs at least 3 vertices");

    for (size_t i = 0; i < n; ++i) {
        if (distance(vertices_[i], vertices_[(i + 1) % n]) == 0.0)
            throw InvalidGeometryError("polygon has a zero-length edge");
    }

    // non-adjacent edges must not touch
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_intersect(vertices_[i], vertices_[(i + 1) % n],
                                   vertices_[j], vertices_[(j + 1) % n]))
                throw InvalidGeometryError("polygon is self-intersecting");
        }
    }

    area_ = shoelace_area(vertices_);
    if (!(area_ > 0.0))
        throw InvalidGeometryError("polygon has nonpositive signed area (need counterclockwise orientation)");
    centroid_ = loop_centroid(vertices_, area_);

    diameter_ = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            diameter_ = std::max(diameter_, distance(vertices_[i], vertices_[j]));
}

Point2 Polygon::outward_normal(int e) const {
    const Point2 t = edge_end(e) - edge_start(e);
    const double len = norm(t);
    return {t.y / len, -t.x / len};  // ccw loop: right-hand normal points outside
}

double Polygon::min_edge_length() const {
    double m = std::numeric_limits<double>::infinity();
    for (int e = 0; e < num_vertices(); ++e) m = std::min(m, edge_length(e));
    return m;
}

bool Polygon::contains(const Point2& p) const {
    const size_t n = vertices_.size();
    for (size_t i = 0; i < n; ++i) {
        const Point2& a = vertices_[i];
        const Point2& b = vertices_[(i + 1) % n];
        if (orient(a, b, p) == 0 &&
            std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
            std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y))
            return true;  // on the boundary
    }
    // crossing number against a horizontal ray
    bool inside = false;
    for (size_t i = 0; i < n; ++i) {
        const Point2& a = vertices_[i];
        const Point2& b = vertices_[(i + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

namespace {

bool point_in_triangle_strict(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
    return orient(a, b, p) > 0 && orient(b, c, p) > 0 && orient(c, a, p) > 0;
}

} // namespace

std::vector<Triangle> triangulate(const Polygon& polygon) {
    std::vector<int> idx(static_cast<size_t>(polygon.num_vertices()));
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    const auto& v = polygon.vertices();

    std::vector<Triangle> tris;
    tris.reserve(idx.size() - 2);

    auto is_ear = [&](size_t k, bool allow_degenerate) {
        const size_t m = idx.size();
        const Point2& a = v[static_cast<size_t>(idx[(k + m - 1) % m])];
        const Point2& b = v[static_cast<size_t>(idx[k])];
        const Point2& c = v[static_cast<size_t>(idx[(k + 1) % m])];
        const int o = orient(a, b, c);
        if (o < 0) return false;
        if (o == 0) return allow_degenerate;  // collinear corner, zero-area ear
        for (size_t j = 0; j < m; ++j) {
            if (j == k || j == (k + m - 1) % m || j == (k + 1) % m) continue;
            if (point_in_triangle_strict(v[static_cast<size_t>(idx[j])], a, b, c)) return false;
        }
        return true;
    };

    while (idx.size() > 3) {
        const size_t m = idx.size();
        size_t ear = m;
        for (size_t k = 0; k < m && ear == m; ++k)
            if (is_ear(k, false)) ear = k;
        for (size_t k = 0; k < m && ear == m; ++k)
            if (is_ear(k, true)) ear = k;
        if (ear == m) throw InvalidGeometryError("ear clipping failed (degenerate polygon)");

        const size_t prev = (ear + m - 1) % m;
        const size_t next = (ear + 1) % m;
        const Triangle t{v[static_cast<size_t>(idx[prev])],
                         v[static_cast<size_t>(idx[ear])],
                         v[static_cast<size_t>(idx[next])]};
        if (triangle_area(t) > 0.0) tris.push_back(t);
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(ear));
    }
    const Triangle last{v[static_cast<size_t>(idx[0])],
                        v[static_cast<size_t>(idx[1])],
                        v[static_cast<size_t>(idx[2])]};
    if (triangle_area(last) > 0.0) tris.push_back(last);
    return tris;
}

} // namespace polyvem
