#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "anisofem/types.hpp"

namespace anisofem {

struct FieldSpec;

enum class ElementKind { Quad, Triangle };

enum class Side : std::uint8_t { Bottom, Right, Top, Left };

/// One edge of the domain boundary. `index` counts edges along the side in the
/// direction of increasing x (bottom/top) or y (left/right).
struct BoundaryEdge {
    std::array<int, 2> nodes{};
    int element = 0;
    Side side = Side::Bottom;
    int index = 0;
};

/// Structured mesh of a rectangle [0, lx] x [0, ly] made of nx x ny cells.
/// Quad cells are single elements; triangle cells are cut along their
/// lower-left to upper-right diagonal. Nodes are numbered lexicographically
/// with x running fastest. Immutable once built.
class Mesh {
public:
    [[nodiscard]] ElementKind kind() const { return kind_; }
    [[nodiscard]] int nx() const { return nx_; }
    [[nodiscard]] int ny() const { return ny_; }
    [[nodiscard]] double lx() const { return lx_; }
    [[nodiscard]] double ly() const { return ly_; }
    [[nodiscard]] double dx() const { return lx_ / nx_; }
    [[nodiscard]] double dy() const { return ly_ / ny_; }
    /// Largest element diameter.
    [[nodiscard]] double h() const;

    [[nodiscard]] int num_nodes() const { return static_cast<int>(nodes_.size()); }
    [[nodiscard]] int num_elements() const {
        return static_cast<int>(connectivity_.size()) / vertices_per_element();
    }
    [[nodiscard]] int vertices_per_element() const { return kind_ == ElementKind::Quad ? 4 : 3; }

    [[nodiscard]] const std::vector<Point>& nodes() const { return nodes_; }
    [[nodiscard]] const Point& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    /// Counter-clockwise vertex list of element `e`.
    [[nodiscard]] std::span<const int> element(int e) const;
    /// Lattice cell (i, j) that contains element `e`.
    [[nodiscard]] std::array<int, 2> cell_of(int e) const;
    /// For triangles: 0 for the lower-right half of the cell, 1 for the upper-left half.
    [[nodiscard]] int half_of(int e) const { return kind_ == ElementKind::Quad ? 0 : e % 2; }
    [[nodiscard]] int node_id(int i, int j) const { return j * (nx_ + 1) + i; }

    [[nodiscard]] const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_; }

    /// Element containing (x, y); points on shared edges go to the lower index.
    [[nodiscard]] int locate(Point p) const;

    friend Mesh build_quad_mesh(int nx, int ny, double lx, double ly);
    friend Mesh build_tri_mesh(int n, double lx, double ly);

private:
    Mesh() = default;
    void build_nodes();
    void build_boundary();

    ElementKind kind_ = ElementKind::Quad;
    int nx_ = 0;
    int ny_ = 0;
    double lx_ = 1.0;
    double ly_ = 1.0;
    std::vector<Point> nodes_;
    std::vector<int> connectivity_;
    std::vector<BoundaryEdge> boundary_;
};

Mesh build_quad_mesh(int nx, int ny, double lx = 1.0, double ly = 1.0);
Mesh build_tri_mesh(int n, double lx = 1.0, double ly = 1.0);

enum class BoundaryTag : std::uint8_t { Dirichlet, Inflow, Outflow };

/// Sign classification of the boundary with respect to b.n.
struct BoundaryTags {
    /// Parallel to Mesh::boundary_edges().
    std::vector<BoundaryTag> edge_tags;
    /// Per mesh node; empty for interior nodes.
    std::vector<std::optional<BoundaryTag>> node_tags;

    [[nodiscard]] int count(BoundaryTag tag) const;
};

inline constexpr double kBoundarySignTolerance = 1e-12;

BoundaryTags classify_boundary(const Mesh& mesh, const FieldSpec& field);

/// Plain-text listing: header line, then one node or element record per line.
void write_mesh_text(const Mesh& mesh, std::ostream& os);

const char* to_string(BoundaryTag tag);

}  // namespace anisofem
