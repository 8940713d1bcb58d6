#include <gtest/gtest.h>

#include <cmath>

#include "platelim/mesh.hpp"

using namespace platelim;

TEST(Mesh, SingleCrossedCellCounts) {
    Mesh m = generate_rect_mesh(1.0, 1.0, 1, 1, RectPattern::crossed);
    EXPECT_EQ(m.triangle_count(), 4);
    EXPECT_EQ(m.vertex_count(), 5);
    EXPECT_EQ(m.edge_count(), 8);
    int boundary = 0;
    for (const Edge& e : m.edges) boundary += e.boundary() ? 1 : 0;
    EXPECT_EQ(boundary, 4);
    EXPECT_NO_THROW(m.validate(1.0));
}

TEST(Mesh, DiagTwoByTwoCounts) {
    Mesh m = generate_rect_mesh(1.0, 1.0, 2, 2, RectPattern::diag);
    EXPECT_EQ(m.triangle_count(), 8);
    EXPECT_EQ(m.vertex_count(), 9);
    EXPECT_EQ(m.edge_count(), 16);  // Euler: E = V + F - 1
    EXPECT_NO_THROW(m.validate(1.0));
}

TEST(Mesh, DiagCellAreas) {
    Mesh m = generate_rect_mesh(1.5, 1.0, 3, 2, RectPattern::diag);
    for (int t = 0; t < m.triangle_count(); ++t) EXPECT_NEAR(m.triangle_area(t), 0.125, 1e-15);
}

TEST(Mesh, GenerateRejectsBadArguments) {
    EXPECT_THROW(generate_rect_mesh(1.0, 1.0, 0, 1, RectPattern::diag), std::invalid_argument);
    EXPECT_THROW(generate_rect_mesh(1.0, 1.0, 1, 0, RectPattern::crossed), std::invalid_argument);
    EXPECT_THROW(generate_rect_mesh(-1.0, 1.0, 1, 1, RectPattern::diag), std::invalid_argument);
    EXPECT_THROW(generate_rect_mesh(1.0, 0.0, 1, 1, RectPattern::diag), std::invalid_argument);
}

TEST(Mesh, GeneratedMeshesSatisfyInvariants) {
    for (RectPattern pat : {RectPattern::diag, RectPattern::crossed}) {
        for (int n : {1, 3, 7}) {
            Mesh m = generate_rect_mesh(2.0, 1.0, n, n, pat);
            EXPECT_NO_THROW(m.validate(2.0));
            for (int t = 0; t < m.triangle_count(); ++t) EXPECT_GT(m.triangle_area(t), 0.0);
            EXPECT_EQ(m.vertex_count() - m.edge_count() + m.triangle_count(), 1);
            for (const auto& [e, tag] : m.boundary_tags) {
                EXPECT_TRUE(tag == "left" || tag == "right" || tag == "bottom" || tag == "top");
            }
        }
    }
}

TEST(Mesh, GenerateIsDeterministic) {
    Mesh a = generate_rect_mesh(1.0, 1.0, 5, 4, RectPattern::crossed);
    Mesh b = generate_rect_mesh(1.0, 1.0, 5, 4, RectPattern::crossed);
    ASSERT_EQ(a.vertex_count(), b.vertex_count());
    for (int v = 0; v < a.vertex_count(); ++v) {
        EXPECT_EQ(a.vertices[v].x, b.vertices[v].x);
        EXPECT_EQ(a.vertices[v].y, b.vertices[v].y);
    }
    EXPECT_EQ(a.triangles, b.triangles);
}

static Mesh single_triangle_mesh(Vec2 a, Vec2 b, Vec2 c) {
    Mesh m;
    m.vertices = {a, b, c};
    m.triangles = {{0, 1, 2}};
    m.build_edges();
    return m;
}

TEST(Mesh, NondegeneracyEquilateral) {
    Mesh m = single_triangle_mesh({0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0});
    EXPECT_NEAR(nondegeneracy_ratio(m), 1.0 / std::sqrt(3.0), 1e-12);
}

TEST(Mesh, NondegeneracyRightIsosceles) {
    Mesh m = single_triangle_mesh({0, 0}, {1, 0}, {0, 1});
    // inradius (2 - sqrt 2)/2, diameter sqrt 2
    EXPECT_NEAR(nondegeneracy_ratio(m), (2.0 - std::sqrt(2.0)) / std::sqrt(2.0), 1e-12);
}

TEST(Mesh, NondegeneracyScaleInvariantAcrossRefinement) {
    const double base = nondegeneracy_ratio(generate_rect_mesh(1, 1, 1, 1, RectPattern::diag));
    for (int n : {2, 4, 9}) {
        Mesh m = generate_rect_mesh(1, 1, n, n, RectPattern::diag);
        EXPECT_NEAR(nondegeneracy_ratio(m), base, 1e-12);
    }
}

TEST(Mesh, NondegeneracyRigidMotionInvariant) {
    Mesh m = generate_rect_mesh(1.0, 1.0, 3, 3, RectPattern::crossed);
    const double base = nondegeneracy_ratio(m);
    const double ct = std::cos(0.7), st = std::sin(0.7);
    Mesh moved = m;
    for (Vec2& v : moved.vertices)
        v = {3.0 * (ct * v.x - st * v.y) + 11.0, 3.0 * (st * v.x + ct * v.y) - 4.0};
    EXPECT_NEAR(nondegeneracy_ratio(moved), base, 1e-12);
}

TEST(Mesh, MeshSizeSingleCrossedCell) {
    Mesh m = generate_rect_mesh(1.0, 1.0, 1, 1, RectPattern::crossed);
    EXPECT_NEAR(mesh_size(m, std::sqrt(2.0)), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Mesh, MeshSizeHalvesUnderRefinement) {
    const double diam = std::sqrt(2.0);
    const double h4 = mesh_size(generate_rect_mesh(1, 1, 4, 4, RectPattern::diag), diam);
    const double h8 = mesh_size(generate_rect_mesh(1, 1, 8, 8, RectPattern::diag), diam);
    EXPECT_NEAR(h4 / h8, 2.0, 1e-12);
}

TEST(Mesh, MeshSizeEmptyMeshThrows) {
    Mesh empty;
    EXPECT_THROW(mesh_size(empty, 1.0), MeshError);
    EXPECT_THROW(nondegeneracy_ratio(empty), MeshError);
}

TEST(Mesh, ValidateDetectsHangingNode) {
    // Two triangles sharing the edge (0,0)-(1,0), plus a vertex in its middle
    // used by a third triangle only on one side.
    Mesh m;
    m.vertices = {{0, 0}, {1, 0}, {0.5, 0.0}, {0, -1}, {0.5, 1.0}};
    m.triangles = {{0, 1, 4}, {0, 3, 2}, {2, 3, 1}};
    m.build_edges();
    EXPECT_THROW(m.validate(), MeshError);
}

TEST(Mesh, EdgeNormalConventions) {
    Mesh m = generate_rect_mesh(1.0, 1.0, 1, 1, RectPattern::diag);
    for (int e = 0; e < m.edge_count(); ++e) {
        const Edge& ed = m.edges[e];
        const Vec2 n = m.edge_normal(e);
        EXPECT_NEAR(n.norm(), 1.0, 1e-14);
        const Vec2 mid = m.edge_midpoint(e);
        const Vec2 away = mid - m.triangle_centroid(ed.tri[0]);
        EXPECT_GT(n.dot(away), 0.0);  // points away from the first triangle
        if (!ed.boundary()) EXPECT_LT(ed.tri[0], ed.tri[1]);
    }
}

TEST(Mesh, RefineUniformPreservesInvariants) {
    Mesh coarse = generate_rect_mesh(1.5, 1.0, 2, 2, RectPattern::crossed);
    Mesh fine = refine_uniform(coarse);
    EXPECT_EQ(fine.triangle_count(), 4 * coarse.triangle_count());
    EXPECT_NO_THROW(fine.validate(1.5));
    int coarse_tagged = 0, fine_tagged = 0;
    for (const auto& kv : coarse.boundary_tags) (void)kv, ++coarse_tagged;
    for (const auto& kv : fine.boundary_tags) (void)kv, ++fine_tagged;
    EXPECT_EQ(fine_tagged, 2 * coarse_tagged);
}
