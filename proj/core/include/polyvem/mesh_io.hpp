#pragma once

#include <iosfwd>
#include <string>

#include "polyvem/mesh.hpp"

namespace polyvem {

/// Line-oriented mesh text format:
///   vempoly 1
///   <nv> <nc>
///   x y                 (nv lines)
///   <k> i1 ... ik       (nc lines, 0-based ccw vertex indices)
/// Coordinates are written with 17 significant digits so that a
/// write-then-read round-trip is bitwise exact.
Mesh read_mesh(std::istream& in);
Mesh read_mesh_file(const std::string& path);

void write_mesh(const Mesh& mesh, std::ostream& out);
void write_mesh_file(const Mesh& mesh, const std::string& path);

} // namespace polyvem
