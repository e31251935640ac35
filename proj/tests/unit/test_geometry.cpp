#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "anisofem/errors.hpp"
#include "anisofem/field.hpp"
#include "anisofem/geometry.hpp"

using namespace anisofem;

TEST(QuadMesh, SingleElement) {
    const Mesh m = build_quad_mesh(1, 1);
    EXPECT_EQ(m.num_nodes(), 4);
    EXPECT_EQ(m.num_elements(), 1);
    EXPECT_NEAR(m.h(), std::sqrt(2.0), 1e-15);
}

TEST(QuadMesh, Counts) {
    const Mesh m = build_quad_mesh(2, 2);
    EXPECT_EQ(m.num_nodes(), 9);
    EXPECT_EQ(m.num_elements(), 4);
    const Mesh big = build_quad_mesh(100, 100);
    EXPECT_EQ(big.num_nodes(), 10201);
    EXPECT_NEAR(big.h(), std::sqrt(2.0) / 100, 1e-15);
}

TEST(QuadMesh, ElementsAreCounterClockwise) {
    const Mesh m = build_quad_mesh(3, 2, 2.0, 1.0);
    for (int e = 0; e < m.num_elements(); ++e) {
        const auto v = m.element(e);
        double area2 = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Point a = m.node(v[i]);
            const Point b = m.node(v[(i + 1) % v.size()]);
            area2 += a.x * b.y - b.x * a.y;
        }
        EXPECT_NEAR(area2 / 2.0, m.dx() * m.dy(), 1e-14);
    }
}

TEST(QuadMesh, BoundaryEdgesBelongToOneElement) {
    const Mesh m = build_quad_mesh(4, 3);
    EXPECT_EQ(m.boundary_edges().size(), 2u * (4 + 3));
    for (const BoundaryEdge& be : m.boundary_edges()) {
        const auto v = m.element(be.element);
        int hits = 0;
        for (int node : v) {
            hits += (node == be.nodes[0] || node == be.nodes[1]) ? 1 : 0;
        }
        EXPECT_EQ(hits, 2);
    }
}

TEST(QuadMesh, RejectsNonPositiveSizes) {
    EXPECT_THROW(build_quad_mesh(0, 1), Error);
    EXPECT_THROW(build_quad_mesh(1, 1, -1.0, 1.0), Error);
}

TEST(TriMesh, Counts) {
    const Mesh one = build_tri_mesh(1);
    EXPECT_EQ(one.num_nodes(), 4);
    EXPECT_EQ(one.num_elements(), 2);
    const Mesh four = build_tri_mesh(4);
    EXPECT_EQ(four.num_nodes(), 25);
    EXPECT_EQ(four.num_elements(), 32);
    const Mesh eight = build_tri_mesh(8);
    EXPECT_EQ(eight.num_nodes(), 81);
    EXPECT_EQ(eight.num_elements(), 128);
}

TEST(TriMesh, AreasSumToDomain) {
    const Mesh m = build_tri_mesh(5, 2.0, 3.0);
    double total = 0.0;
    for (int e = 0; e < m.num_elements(); ++e) {
        const auto v = m.element(e);
        const Point a = m.node(v[0]), b = m.node(v[1]), c = m.node(v[2]);
        const double area = 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
        EXPECT_GT(area, 0.0);
        total += area;
    }
    EXPECT_NEAR(total, 6.0, 1e-12);
}

TEST(Mesh, LocateFindsContainingElement) {
    const Mesh m = build_quad_mesh(4, 4);
    const int e = m.locate({0.6, 0.3});
    const auto cell = m.cell_of(e);
    EXPECT_EQ(cell[0], 2);
    EXPECT_EQ(cell[1], 1);
}

namespace {
int count_side(const Mesh& m, const BoundaryTags& t, Side side, BoundaryTag tag) {
    int c = 0;
    for (std::size_t i = 0; i < m.boundary_edges().size(); ++i) {
        c += (m.boundary_edges()[i].side == side && t.edge_tags[i] == tag) ? 1 : 0;
    }
    return c;
}
}  // namespace

TEST(Classify, VariableAlphaTwo) {
    const Mesh m = build_quad_mesh(6, 6);
    const BoundaryTags t = classify_boundary(m, FieldSpec::variable_alpha(2.0));
    EXPECT_EQ(count_side(m, t, Side::Bottom, BoundaryTag::Dirichlet), 6);
    EXPECT_EQ(count_side(m, t, Side::Top, BoundaryTag::Dirichlet), 6);
    EXPECT_EQ(count_side(m, t, Side::Left, BoundaryTag::Inflow), 6);
    EXPECT_EQ(count_side(m, t, Side::Right, BoundaryTag::Outflow), 6);
}

TEST(Classify, AlphaZeroSameTags) {
    const Mesh m = build_quad_mesh(3, 3);
    const BoundaryTags t = classify_boundary(m, FieldSpec::variable_alpha(0.0));
    EXPECT_EQ(t.count(BoundaryTag::Dirichlet), 6);
    EXPECT_EQ(t.count(BoundaryTag::Inflow), 3);
    EXPECT_EQ(t.count(BoundaryTag::Outflow), 3);
}

TEST(Classify, AlignedFieldOnPiSquare) {
    const Mesh m = build_tri_mesh(4, std::numbers::pi, std::numbers::pi);
    const BoundaryTags t = classify_boundary(m, FieldSpec::aligned_e2());
    EXPECT_EQ(count_side(m, t, Side::Left, BoundaryTag::Dirichlet), 4);
    EXPECT_EQ(count_side(m, t, Side::Right, BoundaryTag::Dirichlet), 4);
    EXPECT_EQ(count_side(m, t, Side::Bottom, BoundaryTag::Inflow), 4);
    EXPECT_EQ(count_side(m, t, Side::Top, BoundaryTag::Outflow), 4);
}

TEST(Mesh, TextListingHasHeader) {
    std::ostringstream os;
    write_mesh_text(build_quad_mesh(1, 1), os);
    EXPECT_FALSE(os.str().empty());
    EXPECT_NE(os.str().find('\n'), std::string::npos);
}
