#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace polyvem {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2() = default;
    Point2(double px, double py) : x(px), y(py) {}

    Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(double s) const { return {x * s, y * s}; }
    Point2& operator+=(const Point2& o) { x += o.x; y += o.y; return *this; }
};

inline Point2 operator*(double s, const Point2& p) { return p * s; }
inline double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point2& p) { return std::hypot(p.x, p.y); }
inline double distance(const Point2& a, const Point2& b) { return norm(a - b); }

using Triangle = std::array<Point2, 3>;

inline double triangle_area(const Triangle& t) {
    return 0.5 * cross(t[1] - t[0], t[2] - t[0]);
}

/// Simple closed polygon, counterclockwise, at least 3 vertices.
/// Area, centroid and diameter are computed once at construction.
class Polygon {
public:
    explicit Polygon(std::vector<Point2> vertices);

    const std::vector<Point2>& vertices() const { return vertices_; }
    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    const Point2& vertex(int i) const { return vertices_[static_cast<size_t>(i)]; }

    double area() const { return area_; }
    Point2 centroid() const { return centroid_; }
    double diameter() const { return diameter_; }

    // Edge e runs from vertex e to vertex (e+1) mod N.
    Point2 edge_start(int e) const { return vertices_[static_cast<size_t>(e)]; }
    Point2 edge_end(int e) const { return vertices_[(static_cast<size_t>(e) + 1) % vertices_.size()]; }
    double edge_length(int e) const { return distance(edge_start(e), edge_end(e)); }
    Point2 outward_normal(int e) const;
    double min_edge_length() const;

    bool contains(const Point2& p) const;  // boundary counts as inside

private:
    std::vector<Point2> vertices_;
    double area_ = 0.0;
    Point2 centroid_;
    double diameter_ = 0.0;
};

double shoelace_area(const std::vector<Point2>& loop);

/// Ear-clipping triangulation. Handles nonconvex input and collinear
/// vertices (zero-area ears are clipped last). Triangle areas sum to the
/// polygon area.
std::vector<Triangle> triangulate(const Polygon& polygon);

/// Proper or endpoint-touching intersection test between segments ab and cd.
bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

} // namespace polyvem
