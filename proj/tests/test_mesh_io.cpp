#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "platelim/mesh_io.hpp"

using namespace platelim;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
    fs::path dir = fs::temp_directory_path() / "platelim_mesh_io";
    fs::create_directories(dir);
    fs::path p = dir / name;
    std::ofstream out(p);
    out << content;
    return p;
}

}  // namespace

TEST(MeshIo, TriangleNodeEleUnitSquare) {
    write_temp("square.node",
               "# unit square\n"
               "4 2 0 1\n"
               "1 0.0 0.0 1\n"
               "2 1.0 0.0 1\n"
               "3 1.0 1.0 1\n"
               "4 0.0 1.0 1\n");
    fs::path ele = write_temp("square.ele",
                              "2 3 0\n"
                              "1 1 2 3\n"
                              "2 1 3 4\n");
    Mesh m = import_mesh((ele.parent_path() / "square.node").string(), MeshFormat::triangle_node_ele);
    EXPECT_EQ(m.triangle_count(), 2);
    EXPECT_EQ(m.vertex_count(), 4);
    int interior = 0;
    for (const Edge& e : m.edges) interior += e.boundary() ? 0 : 1;
    EXPECT_EQ(interior, 1);
    // untagged boundary edges
    EXPECT_TRUE(m.boundary_tags.empty());
}

TEST(MeshIo, TriangleImportFixesOrientation) {
    write_temp("cw.node",
               "3 2 0 0\n"
               "1 0.0 0.0\n"
               "2 1.0 0.0\n"
               "3 0.0 1.0\n");
    fs::path ele = write_temp("cw.ele", "1 3 0\n1 1 3 2\n");
    Mesh m = import_mesh((ele.parent_path() / "cw.node").string(), MeshFormat::triangle_node_ele);
    EXPECT_GT(m.triangle_area(0), 0.0);
}

TEST(MeshIo, TriangleHangingNodeRejected) {
    write_temp("hang.node",
               "5 2 0 0\n"
               "1 0.0 0.0\n"
               "2 1.0 0.0\n"
               "3 0.5 0.0\n"
               "4 0.0 -1.0\n"
               "5 0.5 1.0\n");
    fs::path ele = write_temp("hang.ele",
                              "3 3 0\n"
                              "1 1 2 5\n"
                              "2 1 4 3\n"
                              "3 3 4 2\n");
    try {
        import_mesh((ele.parent_path() / "hang.node").string(), MeshFormat::triangle_node_ele);
        FAIL() << "expected MeshError";
    } catch (const MeshError& err) {
        EXPECT_NE(std::string(err.what()).find("vertex 2"), std::string::npos) << err.what();
    }
}

TEST(MeshIo, TriangleParseErrorHasLineNumber) {
    write_temp("bad.node",
               "2 2 0 0\n"
               "1 0.0 zero\n");
    fs::path node = write_temp("bad.ele", "1 3 0\n1 1 2 3\n");
    try {
        import_mesh((node.parent_path() / "bad.node").string(), MeshFormat::triangle_node_ele);
        FAIL() << "expected MeshParseError";
    } catch (const MeshParseError& err) {
        EXPECT_NE(std::string(err.what()).find(":2:"), std::string::npos) << err.what();
    }
}

namespace {

std::string msh2_square(bool duplicate_element) {
    std::string s =
        "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n"
        "$Nodes\n4\n"
        "1 0 0 0\n"
        "2 1 0 0\n"
        "3 1 1 0\n"
        "4 0 1 0\n"
        "$EndNodes\n"
        "$Elements\n";
    s += duplicate_element ? "7\n" : "6\n";
    s +=
        "1 1 2 7 1 1 2\n"
        "2 1 2 7 2 2 3\n"
        "3 1 2 8 3 3 4\n"
        "4 1 2 8 4 4 1\n"
        "5 2 2 1 1 1 2 3\n"
        "6 2 2 1 1 1 3 4\n";
    if (duplicate_element) s += "7 2 2 1 1 1 2 3\n";
    s += "$EndElements\n";
    return s;
}

}  // namespace

TEST(MeshIo, Msh2ImportWithPhysicalTags) {
    fs::path p = write_temp("square.msh", msh2_square(false));
    Mesh m = import_mesh(p.string(), MeshFormat::msh2_ascii);
    EXPECT_EQ(m.triangle_count(), 2);
    EXPECT_EQ(m.boundary_tags.size(), 4u);
    int phys7 = 0, phys8 = 0;
    for (const auto& [e, tag] : m.boundary_tags) {
        if (tag == "phys7") ++phys7;
        if (tag == "phys8") ++phys8;
    }
    EXPECT_EQ(phys7, 2);
    EXPECT_EQ(phys8, 2);
}

TEST(MeshIo, Msh2DuplicateElementRejected) {
    fs::path p = write_temp("dup.msh", msh2_square(true));
    EXPECT_THROW(import_mesh(p.string(), MeshFormat::msh2_ascii), MeshParseError);
}
