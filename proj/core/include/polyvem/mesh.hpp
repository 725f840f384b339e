#pragma once

#include <cstdint>
#include <vector>

#include "polyvem/geometry.hpp"

namespace polyvem {

/// Conforming polygonal mesh: shared vertex list plus per-cell ccw index loops.
struct Mesh {
    std::vector<Point2> vertices;
    std::vector<std::vector<int>> cells;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_cells() const { return static_cast<int>(cells.size()); }
    Polygon cell_polygon(int c) const;
};

/// Undirected edge record; a < b, cells lists the incident cell ids.
struct MeshEdge {
    int a = 0;
    int b = 0;
    std::vector<int> cells;
};

/// Edge/boundary structure. Construction enforces the conformity rule:
/// every edge belongs to one (boundary) or two (interior) cells.
struct MeshTopology {
    std::vector<MeshEdge> edges;
    std::vector<bool> vertex_on_boundary;
    std::vector<bool> edge_on_boundary;

    int num_edges() const { return static_cast<int>(edges.size()); }
    int edge_id(int va, int vb) const;  // -1 if absent

private:
    friend MeshTopology build_topology(const Mesh& mesh);
    std::vector<std::pair<std::pair<int, int>, int>> index_;  // sorted (a,b) -> edge id
};

MeshTopology build_topology(const Mesh& mesh);

struct CellShape {
    double d2_ratio = 0.0;  // min edge length / diameter
    bool star_shaped_wrt_centroid = false;
    double diameter = 0.0;
    double area = 0.0;
};

struct ShapeReport {
    std::vector<CellShape> cells;
    int interior_edge_count = 0;
    int boundary_edge_count = 0;
    double cell_area_sum = 0.0;
    double boundary_loop_area = 0.0;  // shoelace over the directed boundary edges
};

/// Checks conformity (exactly-two-cells rule), per-cell polygon validity,
/// and that cell areas tile the region enclosed by the boundary edges
/// (1e-10 relative). Returns the per-cell shape metrics.
ShapeReport validate_mesh(const Mesh& mesh);

// ---- generators (all on the unit square) ----

Mesh square_mesh(int n);

/// Regular-hexagon tiling clipped to the unit square: the Voronoi diagram of
/// a triangular lattice with spacing 1/n centered on the square.
Mesh hexagonal_mesh(int n);

Mesh voronoi_lloyd_mesh(int n_seeds, int iterations, std::uint64_t rng_seed);
Mesh voronoi_lloyd_mesh(std::vector<Point2> seeds, int iterations);

Mesh single_cell_mesh(const Polygon& polygon);

// ---- degenerate element families ----

/// Hexagon with collapsing bulk: A=(1,0), B=(2,2^{1-i}), C=(1,2^{2-i}),
/// D=(0,2^{1-i}), E=(-1,2^{1-i}), F=(0,0).
Polygon collapsing_hexagon(int i);

/// Unit square with a hanging node sliding towards a corner:
/// A=(1,0), B=(1,1), C=(2^{-i},1), D=(0,1), E=(0,0).
Polygon hanging_square(int i);

} // namespace polyvem
