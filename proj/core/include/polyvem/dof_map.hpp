#pragma once

#include <vector>

#include "polyvem/mesh.hpp"

namespace polyvem {

/// Global dof numbering: vertices, then (p-1) dofs per edge, then n_{p-2}
/// internal moments per cell. Edge dofs are ordered from the lower global
/// vertex index so both incident cells agree on them; internal moments are
/// cell-private.
struct DofMap {
    int degree = 1;
    int total = 0;
    std::vector<std::vector<int>> cell_to_global;  // local layout order -> global id
    std::vector<bool> on_boundary;                 // Dirichlet class per global dof
    std::vector<Point2> position;                  // dof location (cell centroid for moments)

    int interior_count() const;
};

DofMap build_dof_map(const Mesh& mesh, const MeshTopology& topology, int p);

} // namespace polyvem
