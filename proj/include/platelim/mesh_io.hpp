#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "platelim/mesh.hpp"

namespace platelim {

enum class MeshFormat { triangle_node_ele, msh2_ascii };

inline MeshFormat mesh_format_from_string(const std::string& s) {
    if (s == "triangle_node_ele") return MeshFormat::triangle_node_ele;
    if (s == "msh2_ascii") return MeshFormat::msh2_ascii;
    throw std::invalid_argument("unknown mesh format: " + s);
}

class MeshParseError : public std::runtime_error {
  public:
    MeshParseError(const std::string& path, int line, const std::string& what)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + what) {}
};

namespace detail {

// Line reader that skips blanks and '#' comments and tracks line numbers.
struct LineReader {
    std::ifstream in;
    std::string path;
    int line_no = 0;

    explicit LineReader(const std::string& p) : in(p), path(p) {
        if (!in) throw std::runtime_error("cannot open mesh file: " + p);
    }

    bool next(std::string& out) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            size_t b = line.find_first_not_of(" \t\r\n");
            if (b == std::string::npos) continue;
            size_t e = line.find_last_not_of(" \t\r\n");
            out = line.substr(b, e - b + 1);
            return true;
        }
        return false;
    }

    std::string need(const std::string& what) {
        std::string s;
        if (!next(s)) throw MeshParseError(path, line_no, "unexpected end of file, expected " + what);
        return s;
    }

    [[noreturn]] void fail(const std::string& what) { throw MeshParseError(path, line_no, what); }
};

inline Mesh finish_import(Mesh mesh, const std::string& path) {
    // Normalize orientation; reject exactly degenerate triangles.
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        auto& tri = mesh.triangles[t];
        const int o = orient2d(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]);
        if (o == 0)
            throw MeshError(path + ": triangle " + std::to_string(t) + " is degenerate");
        if (o < 0) std::swap(tri[1], tri[2]);
    }
    mesh.build_edges();
    mesh.validate();
    return mesh;
}

}  // namespace detail

// Triangle tool .node/.ele pair (indices 1-based by convention, 0-based
// accepted as the tool does). `path` names the .node file or the common stem.
inline Mesh import_mesh_triangle(const std::string& path) {
    std::string stem = path;
    if (stem.size() > 5 && stem.substr(stem.size() - 5) == ".node") stem = stem.substr(0, stem.size() - 5);
    detail::LineReader nodes(stem + ".node");
    Mesh mesh;

    std::istringstream hdr(nodes.need("node header"));
    long np = 0, dim = 0, nattr = 0, nmark = 0;
    if (!(hdr >> np >> dim >> nattr >> nmark) || np <= 0) nodes.fail("bad .node header");
    if (dim != 2) nodes.fail(".node dimension must be 2");

    std::map<long, int> index_of;
    for (long i = 0; i < np; ++i) {
        std::istringstream ls(nodes.need("node line"));
        long idx;
        double x, y;
        if (!(ls >> idx >> x >> y)) nodes.fail("bad node line");
        if (index_of.count(idx)) nodes.fail("duplicate node index " + std::to_string(idx));
        index_of[idx] = mesh.vertex_count();
        mesh.vertices.push_back({x, y});
    }

    detail::LineReader eles(stem + ".ele");
    std::istringstream ehdr(eles.need("ele header"));
    long nt = 0, npe = 0, nattr2 = 0;
    if (!(ehdr >> nt >> npe >> nattr2) || nt <= 0) eles.fail("bad .ele header");
    if (npe != 3) eles.fail("only 3-node triangles are supported");
    for (long t = 0; t < nt; ++t) {
        std::istringstream ls(eles.need("ele line"));
        long idx, a, b, c;
        if (!(ls >> idx >> a >> b >> c)) eles.fail("bad element line");
        std::array<int, 3> tri;
        for (int k = 0; k < 3; ++k) {
            const long v = k == 0 ? a : (k == 1 ? b : c);
            auto it = index_of.find(v);
            if (it == index_of.end()) eles.fail("element references unknown node " + std::to_string(v));
            tri[k] = it->second;
        }
        mesh.triangles.push_back(tri);
    }
    return detail::finish_import(std::move(mesh), stem + ".ele");
}

// Gmsh MSH 2.2 ASCII subset: $Nodes, $Elements with 2-node lines (boundary
// tags from the first/physical tag) and 3-node triangles.
inline Mesh import_mesh_msh2(const std::string& path) {
    detail::LineReader rd(path);
    Mesh mesh;
    std::map<long, int> index_of;
    std::map<std::pair<int, int>, std::string> line_tags;
    std::vector<std::array<int, 3>> seen;

    std::string line;
    while (rd.next(line)) {
        if (line == "$MeshFormat") {
            std::istringstream ls(rd.need("format line"));
            double version;
            int file_type = 0, data_size = 0;
            if (!(ls >> version >> file_type >> data_size)) rd.fail("bad $MeshFormat line");
            if (file_type != 0) rd.fail("binary msh is not supported");
            if (version >= 3.0) rd.fail("only MSH 2.x ASCII is supported");
            if (rd.need("$EndMeshFormat") != "$EndMeshFormat") rd.fail("expected $EndMeshFormat");
        } else if (line == "$Nodes") {
            long n = std::stol(rd.need("node count"));
            for (long i = 0; i < n; ++i) {
                std::istringstream ls(rd.need("node line"));
                long idx;
                double x, y, z;
                if (!(ls >> idx >> x >> y >> z)) rd.fail("bad node line");
                if (index_of.count(idx)) rd.fail("duplicate node " + std::to_string(idx));
                index_of[idx] = mesh.vertex_count();
                mesh.vertices.push_back({x, y});
            }
            if (rd.need("$EndNodes") != "$EndNodes") rd.fail("expected $EndNodes");
        } else if (line == "$Elements") {
            long n = std::stol(rd.need("element count"));
            for (long i = 0; i < n; ++i) {
                std::istringstream ls(rd.need("element line"));
                long idx, type, ntags;
                if (!(ls >> idx >> type >> ntags)) rd.fail("bad element line");
                long physical = 0;
                for (long k = 0; k < ntags; ++k) {
                    long tag;
                    if (!(ls >> tag)) rd.fail("bad element tags");
                    if (k == 0) physical = tag;
                }
                auto node = [&](long v) {
                    auto it = index_of.find(v);
                    if (it == index_of.end()) rd.fail("element references unknown node " + std::to_string(v));
                    return it->second;
                };
                if (type == 1) {
                    long a, b;
                    if (!(ls >> a >> b)) rd.fail("bad line element");
                    const int ia = node(a), ib = node(b);
                    line_tags[{std::min(ia, ib), std::max(ia, ib)}] = "phys" + std::to_string(physical);
                } else if (type == 2) {
                    long a, b, c;
                    if (!(ls >> a >> b >> c)) rd.fail("bad triangle element");
                    std::array<int, 3> tri{node(a), node(b), node(c)};
                    std::array<int, 3> key = tri;
                    std::sort(key.begin(), key.end());
                    for (const auto& s : seen)
                        if (s == key) rd.fail("duplicated element " + std::to_string(idx));
                    seen.push_back(key);
                    mesh.triangles.push_back(tri);
                } else {
                    rd.fail("unsupported element type " + std::to_string(type));
                }
            }
            if (rd.need("$EndElements") != "$EndElements") rd.fail("expected $EndElements");
        }
        // Other sections ($PhysicalNames, ...) are skipped.
    }

    Mesh out = detail::finish_import(std::move(mesh), path);
    for (int e = 0; e < out.edge_count(); ++e) {
        if (!out.edges[e].boundary()) continue;
        auto it = line_tags.find({out.edges[e].v[0], out.edges[e].v[1]});
        if (it != line_tags.end()) out.boundary_tags[e] = it->second;
    }
    return out;
}

inline Mesh import_mesh(const std::string& path, MeshFormat format) {
    return format == MeshFormat::triangle_node_ele ? import_mesh_triangle(path) : import_mesh_msh2(path);
}

}  // namespace platelim
