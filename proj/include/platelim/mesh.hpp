#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "platelim/geometry.hpp"

namespace platelim {

class MeshError : public std::runtime_error {
  public:
    explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

// Edge of a conforming triangulation. Vertex indices are stored sorted
// (v[0] < v[1]). tri[1] < 0 marks a boundary edge. The canonical normal
// points from tri[0] into tri[1] for interior edges (tri[0] < tri[1]) and
// outward for boundary edges.
struct Edge {
    std::array<int, 2> v{-1, -1};
    std::array<int, 2> tri{-1, -1};
    bool boundary() const { return tri[1] < 0; }
};

struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;  // counter-clockwise
    std::vector<Edge> edges;
    std::map<int, std::string> boundary_tags;  // boundary edge index -> region label

    // Derived per-triangle edge indices, same local order as fem convention:
    // local edge 0 = (v0,v1), 1 = (v1,v2), 2 = (v2,v0).
    std::vector<std::array<int, 3>> triangle_edges;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    double triangle_area(int t) const {
        const auto& tri = triangles[t];
        return 0.5 * signed_area2(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
    }

    double triangle_diameter(int t) const {
        const auto& tri = triangles[t];
        const Vec2& a = vertices[tri[0]];
        const Vec2& b = vertices[tri[1]];
        const Vec2& c = vertices[tri[2]];
        return std::max({(a - b).norm(), (b - c).norm(), (c - a).norm()});
    }

    Vec2 triangle_centroid(int t) const {
        const auto& tri = triangles[t];
        return (vertices[tri[0]] + vertices[tri[1]] + vertices[tri[2]]) / 3.0;
    }

    double edge_length(int e) const {
        return (vertices[edges[e].v[0]] - vertices[edges[e].v[1]]).norm();
    }

    Vec2 edge_midpoint(int e) const {
        return (vertices[edges[e].v[0]] + vertices[edges[e].v[1]]) * 0.5;
    }

    // Unit normal in the canonical direction (lower to higher triangle index
    // for interior edges, outward for boundary edges).
    Vec2 edge_normal(int e) const {
        const Edge& ed = edges[e];
        const Vec2 a = vertices[ed.v[0]];
        const Vec2 b = vertices[ed.v[1]];
        const Vec2 t = (b - a) / (b - a).norm();
        Vec2 n{t.y, -t.x};
        // Orient away from the first adjacent triangle.
        const Vec2 cen = triangle_centroid(ed.tri[0]);
        if (n.dot(cen - a) > 0.0) n = n * -1.0;
        return n;
    }

    double total_area() const {
        double s = 0.0;
        for (int t = 0; t < triangle_count(); ++t) s += triangle_area(t);
        return s;
    }

    double diameter() const {
        double d = 0.0;
        for (size_t i = 0; i < vertices.size(); ++i)
            for (size_t j = i + 1; j < vertices.size(); ++j)
                d = std::max(d, (vertices[i] - vertices[j]).norm());
        return d;
    }

    void build_edges();
    void validate(double domain_area = -1.0) const;
};

inline void Mesh::build_edges() {
    edges.clear();
    triangle_edges.assign(triangles.size(), {-1, -1, -1});
    std::map<std::pair<int, int>, int> edge_of;
    for (int t = 0; t < triangle_count(); ++t) {
        for (int k = 0; k < 3; ++k) {
            int a = triangles[t][k];
            int b = triangles[t][(k + 1) % 3];
            std::pair<int, int> key{std::min(a, b), std::max(a, b)};
            auto it = edge_of.find(key);
            if (it == edge_of.end()) {
                Edge e;
                e.v = {key.first, key.second};
                e.tri = {t, -1};
                edge_of.emplace(key, edge_count());
                triangle_edges[t][k] = edge_count();
                edges.push_back(e);
            } else {
                Edge& e = edges[it->second];
                if (e.tri[1] >= 0)
                    throw MeshError("edge (" + std::to_string(key.first) + "," +
                                    std::to_string(key.second) + ") has more than two incident triangles");
                e.tri[1] = t;
                if (e.tri[0] > e.tri[1]) std::swap(e.tri[0], e.tri[1]);
                triangle_edges[t][k] = it->second;
            }
        }
    }
}

inline void Mesh::validate(double domain_area) const {
    if (triangles.empty()) throw MeshError("mesh has no triangles");
    for (int t = 0; t < triangle_count(); ++t) {
        for (int v : triangles[t]) {
            if (v < 0 || v >= vertex_count())
                throw MeshError("triangle " + std::to_string(t) + " references invalid vertex");
        }
        const auto& tri = triangles[t];
        if (orient2d(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]) <= 0)
            throw MeshError("triangle " + std::to_string(t) + " is degenerate or clockwise");
    }
    for (int e = 0; e < edge_count(); ++e) {
        if (edges[e].tri[0] < 0) throw MeshError("edge " + std::to_string(e) + " has no triangle");
        if (!(edge_length(e) > 0.0)) throw MeshError("edge " + std::to_string(e) + " has zero length");
    }

    // Conformity: no vertex in the open interior of an edge. Vertices are
    // bucketed on a uniform grid so only nearby candidates are tested.
    double max_len = 0.0;
    for (int e = 0; e < edge_count(); ++e) max_len = std::max(max_len, edge_length(e));
    if (max_len <= 0.0) throw MeshError("mesh has a zero-length edge");
    const double cell = max_len;
    auto cell_key = [cell](const Vec2& p) {
        return std::pair<int64_t, int64_t>{static_cast<int64_t>(std::floor(p.x / cell)),
                                           static_cast<int64_t>(std::floor(p.y / cell))};
    };
    std::map<std::pair<int64_t, int64_t>, std::vector<int>> buckets;
    for (int v = 0; v < vertex_count(); ++v) buckets[cell_key(vertices[v])].push_back(v);
    for (int e = 0; e < edge_count(); ++e) {
        const Vec2 a = vertices[edges[e].v[0]];
        const Vec2 b = vertices[edges[e].v[1]];
        const auto ka = cell_key(a);
        const auto kb = cell_key(b);
        const int64_t ix0 = std::min(ka.first, kb.first) - 1, ix1 = std::max(ka.first, kb.first) + 1;
        const int64_t iy0 = std::min(ka.second, kb.second) - 1, iy1 = std::max(ka.second, kb.second) + 1;
        for (int64_t ix = ix0; ix <= ix1; ++ix) {
            for (int64_t iy = iy0; iy <= iy1; ++iy) {
                auto it = buckets.find({ix, iy});
                if (it == buckets.end()) continue;
                for (int v : it->second) {
                    if (v == edges[e].v[0] || v == edges[e].v[1]) continue;
                    if (point_in_open_segment(vertices[v], a, b))
                        throw MeshError("hanging node: vertex " + std::to_string(v) +
                                        " lies inside edge " + std::to_string(e));
                }
            }
        }
    }

    // Euler relation for a simply connected triangulated domain.
    const long long euler = static_cast<long long>(vertex_count()) - edge_count() + triangle_count();
    if (euler != 1)
        throw MeshError("Euler relation violated: V-E+F = " + std::to_string(euler) + " (expected 1)");

    if (domain_area > 0.0) {
        const double total = total_area();
        if (std::abs(total - domain_area) > 1e-12 * domain_area)
            throw MeshError("triangle areas do not sum to the domain area");
    }

    for (const auto& [e, tag] : boundary_tags) {
        if (e < 0 || e >= edge_count() || !edges[e].boundary())
            throw MeshError("boundary tag attached to non-boundary edge " + std::to_string(e));
    }
}

enum class RectPattern { diag, crossed };

// Structured triangulation of [0,width] x [0,height] with nx-by-ny cells.
// "diag" splits each cell along its north-west diagonal into 2 triangles,
// "crossed" into 4 through the cell center. Boundary edges are tagged
// left/right/bottom/top.
inline Mesh generate_rect_mesh(double width, double height, int nx, int ny, RectPattern pattern) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("generate_rect_mesh: nx and ny must be >= 1");
    if (!(width > 0.0) || !(height > 0.0))
        throw std::invalid_argument("generate_rect_mesh: width and height must be positive");

    Mesh mesh;
    const double dx = width / nx;
    const double dy = height / ny;
    auto grid = [&](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            mesh.vertices.push_back({i == nx ? width : i * dx, j == ny ? height : j * dy});

    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int v00 = grid(i, j), v10 = grid(i + 1, j);
            const int v01 = grid(i, j + 1), v11 = grid(i + 1, j + 1);
            if (pattern == RectPattern::diag) {
                // Split along the (i+1,j)-(i,j+1) diagonal.
                mesh.triangles.push_back({v00, v10, v01});
                mesh.triangles.push_back({v10, v11, v01});
            } else {
                const int vc = mesh.vertex_count();
                mesh.vertices.push_back({(i + 0.5) * dx, (j + 0.5) * dy});
                mesh.triangles.push_back({v00, v10, vc});
                mesh.triangles.push_back({v10, v11, vc});
                mesh.triangles.push_back({v11, v01, vc});
                mesh.triangles.push_back({v01, v00, vc});
            }
        }
    }
    mesh.build_edges();

    for (int e = 0; e < mesh.edge_count(); ++e) {
        if (!mesh.edges[e].boundary()) continue;
        const Vec2 a = mesh.vertices[mesh.edges[e].v[0]];
        const Vec2 b = mesh.vertices[mesh.edges[e].v[1]];
        std::string tag;
        if (a.x == 0.0 && b.x == 0.0) tag = "left";
        else if (a.x == width && b.x == width) tag = "right";
        else if (a.y == 0.0 && b.y == 0.0) tag = "bottom";
        else if (a.y == height && b.y == height) tag = "top";
        else throw MeshError("internal: boundary edge not on a rectangle side");
        mesh.boundary_tags[e] = tag;
    }
    return mesh;
}

// Minimum over triangles of (incircle diameter) / (triangle diameter),
// the nondegeneracy measure of the triangulation family.
inline double nondegeneracy_ratio(const Mesh& mesh) {
    if (mesh.triangles.empty()) throw MeshError("nondegeneracy_ratio: empty mesh");
    double worst = 1.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tri = mesh.triangles[t];
        const double la = (mesh.vertices[tri[1]] - mesh.vertices[tri[2]]).norm();
        const double lb = (mesh.vertices[tri[2]] - mesh.vertices[tri[0]]).norm();
        const double lc = (mesh.vertices[tri[0]] - mesh.vertices[tri[1]]).norm();
        const double area = mesh.triangle_area(t);
        if (!(area > 0.0)) throw MeshError("nondegeneracy_ratio: degenerate triangle " + std::to_string(t));
        const double incircle_diam = 4.0 * area / (la + lb + lc);
        worst = std::min(worst, incircle_diam / std::max({la, lb, lc}));
    }
    return worst;
}

// Maximum triangle diameter relative to the domain diameter.
inline double mesh_size(const Mesh& mesh, double domain_diameter) {
    if (mesh.triangles.empty()) throw MeshError("mesh_size: empty mesh");
    if (!(domain_diameter > 0.0)) throw std::invalid_argument("mesh_size: domain diameter must be positive");
    double h = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) h = std::max(h, mesh.triangle_diameter(t));
    return h / domain_diameter;
}

// Regular (red) refinement: each triangle is split into four via its edge
// midpoints. Boundary tags are inherited by the two child edges.
inline Mesh refine_uniform(const Mesh& mesh) {
    Mesh fine;
    fine.vertices = mesh.vertices;
    std::vector<int> midpoint(mesh.edge_count());
    for (int e = 0; e < mesh.edge_count(); ++e) {
        midpoint[e] = fine.vertex_count();
        fine.vertices.push_back(mesh.edge_midpoint(e));
    }
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tri = mesh.triangles[t];
        const int m01 = midpoint[mesh.triangle_edges[t][0]];
        const int m12 = midpoint[mesh.triangle_edges[t][1]];
        const int m20 = midpoint[mesh.triangle_edges[t][2]];
        fine.triangles.push_back({tri[0], m01, m20});
        fine.triangles.push_back({m01, tri[1], m12});
        fine.triangles.push_back({m20, m12, tri[2]});
        fine.triangles.push_back({m01, m12, m20});
    }
    fine.build_edges();

    std::map<std::pair<int, int>, std::string> tag_of;
    for (const auto& [e, tag] : mesh.boundary_tags) {
        const Edge& ed = mesh.edges[e];
        const int m = midpoint[e];
        tag_of[{std::min(ed.v[0], m), std::max(ed.v[0], m)}] = tag;
        tag_of[{std::min(ed.v[1], m), std::max(ed.v[1], m)}] = tag;
    }
    for (int e = 0; e < fine.edge_count(); ++e) {
        if (!fine.edges[e].boundary()) continue;
        auto it = tag_of.find({fine.edges[e].v[0], fine.edges[e].v[1]});
        if (it != tag_of.end()) fine.boundary_tags[e] = it->second;
    }
    return fine;
}

enum class BoundaryKind { dirichlet, clamped, free_edge, symmetry };

inline BoundaryKind boundary_kind_from_string(const std::string& s) {
    if (s == "dirichlet") return BoundaryKind::dirichlet;
    if (s == "clamped") return BoundaryKind::clamped;
    if (s == "free") return BoundaryKind::free_edge;
    if (s == "symmetry") return BoundaryKind::symmetry;
    throw std::invalid_argument("unknown boundary kind: " + s);
}

inline std::string to_string(BoundaryKind k) {
    switch (k) {
        case BoundaryKind::dirichlet: return "dirichlet";
        case BoundaryKind::clamped: return "clamped";
        case BoundaryKind::free_edge: return "free";
        case BoundaryKind::symmetry: return "symmetry";
    }
    return "?";
}

// Region label -> condition kind. Every boundary edge of the mesh must be
// covered by exactly one entry through its tag.
struct BoundaryConditions {
    std::map<std::string, BoundaryKind> by_region;

    BoundaryKind kind_of(const Mesh& mesh, int edge_index) const {
        auto tag_it = mesh.boundary_tags.find(edge_index);
        const std::string tag = tag_it == mesh.boundary_tags.end() ? "untagged" : tag_it->second;
        auto it = by_region.find(tag);
        if (it == by_region.end())
            throw std::invalid_argument("no boundary condition for region '" + tag + "'");
        return it->second;
    }

    bool imposes_dirichlet(BoundaryKind k) const {
        return k == BoundaryKind::dirichlet || k == BoundaryKind::clamped;
    }
    bool imposes_rotation_penalty(BoundaryKind k) const {
        return k == BoundaryKind::clamped || k == BoundaryKind::symmetry;
    }
};

}  // namespace platelim
