#include "polyvem/dof_map.hpp"

#include "polyvem/errors.hpp"
#include "polyvem/local_ops.hpp"
#include "polyvem/monomials.hpp"
#include "polyvem/quadrature.hpp"

namespace polyvem {

int DofMap::interior_count() const {
    int n = 0;
    for (bool b : on_boundary)
        if (!b) ++n;
    return n;
}

DofMap build_dof_map(const Mesh& mesh, const MeshTopology& topology, int p) {
    if (p < 1) throw UnsupportedDegreeError("degree of accuracy must be >= 1");

    DofMap map;
    map.degree = p;
    const int nv = mesh.num_vertices();
    const int ne = topology.num_edges();
    const int nc = mesh.num_cells();
    const int per_edge = p - 1;
    const int per_cell = poly_space_dim(p - 2);
    map.total = nv + ne * per_edge + nc * per_cell;

    map.on_boundary.assign(static_cast<size_t>(map.total), false);
    map.position.resize(static_cast<size_t>(map.total));

    for (int v = 0; v < nv; ++v) {
        map.on_boundary[static_cast<size_t>(v)] = topology.vertex_on_boundary[static_cast<size_t>(v)];
        map.position[static_cast<size_t>(v)] = mesh.vertices[static_cast<size_t>(v)];
    }

    const QuadratureRule1D gl = gauss_lobatto(p);
    for (int e = 0; e < ne; ++e) {
        const MeshEdge& edge = topology.edges[static_cast<size_t>(e)];
        const Point2 a = mesh.vertices[static_cast<size_t>(edge.a)];  // edge.a < edge.b
        const Point2 b = mesh.vertices[static_cast<size_t>(edge.b)];
        for (int k = 1; k <= per_edge; ++k) {
            const int gid = nv + e * per_edge + (k - 1);
            map.on_boundary[static_cast<size_t>(gid)] = topology.edge_on_boundary[static_cast<size_t>(e)];
            const double t = 0.5 * (gl.nodes[static_cast<size_t>(k)] + 1.0);
            map.position[static_cast<size_t>(gid)] = a + t * (b - a);
        }
    }

    map.cell_to_global.resize(static_cast<size_t>(nc));
    for (int c = 0; c < nc; ++c) {
        const auto& loop = mesh.cells[static_cast<size_t>(c)];
        const int k = static_cast<int>(loop.size());
        std::vector<int>& local = map.cell_to_global[static_cast<size_t>(c)];
        local.reserve(static_cast<size_t>(k * p + per_cell));
        for (int v = 0; v < k; ++v) local.push_back(loop[static_cast<size_t>(v)]);
        for (int e = 0; e < k; ++e) {
            const int va = loop[static_cast<size_t>(e)];
            const int vb = loop[static_cast<size_t>((e + 1) % k)];
            const int eid = topology.edge_id(va, vb);
            // walking va -> vb; global order runs from min(va, vb)
            for (int j = 1; j <= per_edge; ++j) {
                const int jj = va < vb ? j : p - j;  // Gauss-Lobatto nodes are symmetric
                local.push_back(nv + eid * per_edge + (jj - 1));
            }
        }
        const Point2 centroid = mesh.cell_polygon(c).centroid();
        for (int b = 0; b < per_cell; ++b) {
            const int gid = nv + ne * per_edge + c * per_cell + b;
            map.position[static_cast<size_t>(gid)] = centroid;
            local.push_back(gid);
        }
    }
    return map;
}

} // namespace polyvem
