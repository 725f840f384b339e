#include "polyvem/mesh_io.hpp"

#include <fstream>
#include <sstream>

#include "polyvem/errors.hpp"

namespace polyvem {

namespace {

std::string next_line(std::istream& in, long& line_no) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("unexpected end of mesh file", line_no + 1);
    ++line_no;
    return line;
}

} // namespace

Mesh read_mesh(std::istream& in) {
    long line_no = 0;

    {
        std::istringstream header(next_line(in, line_no));
        std::string magic;
        int version = 0;
        if (!(header >> magic >> version) || magic != "vempoly" || version != 1)
            throw ParseError("expected header 'vempoly 1'", line_no);
    }

    long nv = 0, nc = 0;
    {
        std::istringstream counts(next_line(in, line_no));
        if (!(counts >> nv >> nc) || nv < 3 || nc < 1)
            throw ParseError("expected '<nv> <nc>' with nv >= 3, nc >= 1", line_no);
    }

    Mesh mesh;
    mesh.vertices.reserve(static_cast<size_t>(nv));
    for (long i = 0; i < nv; ++i) {
        std::istringstream coords(next_line(in, line_no));
        double x = 0.0, y = 0.0;
        if (!(coords >> x >> y)) throw ParseError("expected vertex line 'x y'", line_no);
        mesh.vertices.push_back({x, y});
    }

    mesh.cells.reserve(static_cast<size_t>(nc));
    for (long c = 0; c < nc; ++c) {
        std::istringstream cell_line(next_line(in, line_no));
        long k = 0;
        if (!(cell_line >> k) || k < 3) throw ParseError("expected cell line '<k> i1 ... ik' with k >= 3", line_no);
        std::vector<int> loop;
        loop.reserve(static_cast<size_t>(k));
        for (long j = 0; j < k; ++j) {
            long idx = 0;
            if (!(cell_line >> idx)) throw ParseError("cell line has fewer indices than its count", line_no);
            if (idx < 0 || idx >= nv)
                throw ParseError("vertex index " + std::to_string(idx) + " out of range [0, " + std::to_string(nv - 1) + "]",
                                 line_no);
            loop.push_back(static_cast<int>(idx));
        }
        long extra = 0;
        if (cell_line >> extra) throw ParseError("cell line has more indices than its count", line_no);
        mesh.cells.push_back(std::move(loop));
    }
    return mesh;
}

Mesh read_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open mesh file: " + path);
    return read_mesh(in);
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
    out << "vempoly 1\n" << mesh.num_vertices() << ' ' << mesh.num_cells() << '\n';
    char buf[64];
    for (const Point2& p : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g", p.x, p.y);
        out << buf << '\n';
    }
    for (const auto& cell : mesh.cells) {
        out << cell.size();
        for (int v : cell) out << ' ' << v;
        out << '\n';
    }
}

void write_mesh_file(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open mesh file for writing: " + path);
    write_mesh(mesh, out);
    if (!out) throw Error("failed writing mesh file: " + path);
}

} // namespace polyvem
