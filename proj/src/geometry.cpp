#include "anisofem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "anisofem/errors.hpp"
#include "anisofem/field.hpp"

namespace anisofem {

double Mesh::h() const { return std::hypot(dx(), dy()); }

std::span<const int> Mesh::element(int e) const {
    const auto nv = static_cast<std::size_t>(vertices_per_element());
    return {connectivity_.data() + static_cast<std::size_t>(e) * nv, nv};
}

std::array<int, 2> Mesh::cell_of(int e) const {
    const int cell = kind_ == ElementKind::Quad ? e : e / 2;
    return {cell % nx_, cell / nx_};
}

int Mesh::locate(Point p) const {
    int i = std::clamp(static_cast<int>(std::floor(p.x / dx())), 0, nx_ - 1);
    int j = std::clamp(static_cast<int>(std::floor(p.y / dy())), 0, ny_ - 1);
    const int cell = j * nx_ + i;
    if (kind_ == ElementKind::Quad) {
        return cell;
    }
    // Local coordinates in the cell; the diagonal is s == t.
    const double s = p.x / dx() - i;
    const double t = p.y / dy() - j;
    return 2 * cell + (t > s ? 1 : 0);
}

void Mesh::build_nodes() {
    nodes_.clear();
    nodes_.reserve(static_cast<std::size_t>((nx_ + 1) * (ny_ + 1)));
    for (int j = 0; j <= ny_; ++j) {
        for (int i = 0; i <= nx_; ++i) {
            nodes_.push_back({lx_ * i / nx_, ly_ * j / ny_});
        }
    }
}

void Mesh::build_boundary() {
    boundary_.clear();
    auto owner = [this](int i, int j, int half) {
        const int cell = j * nx_ + i;
        return kind_ == ElementKind::Quad ? cell : 2 * cell + half;
    };
    for (int i = 0; i < nx_; ++i) {
        boundary_.push_back({{node_id(i, 0), node_id(i + 1, 0)}, owner(i, 0, 0), Side::Bottom, i});
    }
    for (int j = 0; j < ny_; ++j) {
        boundary_.push_back(
            {{node_id(nx_, j), node_id(nx_, j + 1)}, owner(nx_ - 1, j, 0), Side::Right, j});
    }
    for (int i = 0; i < nx_; ++i) {
        boundary_.push_back(
            {{node_id(i + 1, ny_), node_id(i, ny_)}, owner(i, ny_ - 1, 1), Side::Top, i});
    }
    for (int j = 0; j < ny_; ++j) {
        boundary_.push_back({{node_id(0, j + 1), node_id(0, j)}, owner(0, j, 1), Side::Left, j});
    }
}

Mesh build_quad_mesh(int nx, int ny, double lx, double ly) {
    if (nx < 1 || ny < 1 || !(lx > 0.0) || !(ly > 0.0)) {
        throw ConfigError("build_quad_mesh: need nx, ny >= 1 and positive extents");
    }
    Mesh mesh;
    mesh.kind_ = ElementKind::Quad;
    mesh.nx_ = nx;
    mesh.ny_ = ny;
    mesh.lx_ = lx;
    mesh.ly_ = ly;
    mesh.build_nodes();
    mesh.connectivity_.reserve(static_cast<std::size_t>(4 * nx * ny));
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            for (int v : {mesh.node_id(i, j), mesh.node_id(i + 1, j), mesh.node_id(i + 1, j + 1),
                          mesh.node_id(i, j + 1)}) {
                mesh.connectivity_.push_back(v);
            }
        }
    }
    mesh.build_boundary();
    return mesh;
}

Mesh build_tri_mesh(int n, double lx, double ly) {
    if (n < 1 || !(lx > 0.0) || !(ly > 0.0)) {
        throw ConfigError("build_tri_mesh: need n >= 1 and positive extents");
    }
    Mesh mesh;
    mesh.kind_ = ElementKind::Triangle;
    mesh.nx_ = n;
    mesh.ny_ = n;
    mesh.lx_ = lx;
    mesh.ly_ = ly;
    mesh.build_nodes();
    mesh.connectivity_.reserve(static_cast<std::size_t>(6 * n * n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int ll = mesh.node_id(i, j);
            const int lr = mesh.node_id(i + 1, j);
            const int ur = mesh.node_id(i + 1, j + 1);
            const int ul = mesh.node_id(i, j + 1);
            for (int v : {ll, lr, ur, ll, ur, ul}) {
                mesh.connectivity_.push_back(v);
            }
        }
    }
    mesh.build_boundary();
    return mesh;
}

int BoundaryTags::count(BoundaryTag tag) const {
    return static_cast<int>(std::count(edge_tags.begin(), edge_tags.end(), tag));
}

namespace {

Vec2 outward_normal(Side side) {
    switch (side) {
        case Side::Bottom: return {0.0, -1.0};
        case Side::Right: return {1.0, 0.0};
        case Side::Top: return {0.0, 1.0};
        case Side::Left: return {-1.0, 0.0};
    }
    return {};
}

int priority(BoundaryTag tag) {
    switch (tag) {
        case BoundaryTag::Dirichlet: return 0;
        case BoundaryTag::Inflow: return 1;
        case BoundaryTag::Outflow: return 2;
    }
    return 3;
}

}  // namespace

BoundaryTags classify_boundary(const Mesh& mesh, const FieldSpec& field) {
    BoundaryTags tags;
    tags.edge_tags.reserve(mesh.boundary_edges().size());
    tags.node_tags.assign(static_cast<std::size_t>(mesh.num_nodes()), std::nullopt);
    for (const BoundaryEdge& edge : mesh.boundary_edges()) {
        const Point a = mesh.node(edge.nodes[0]);
        const Point b = mesh.node(edge.nodes[1]);
        const Point mid = 0.5 * (a + b);
        const double bn = dot(eval_b(field, mid.x, mid.y), outward_normal(edge.side));
        BoundaryTag tag = BoundaryTag::Dirichlet;
        if (bn < -kBoundarySignTolerance) {
            tag = BoundaryTag::Inflow;
        } else if (bn > kBoundarySignTolerance) {
            tag = BoundaryTag::Outflow;
        }
        tags.edge_tags.push_back(tag);
        for (int v : edge.nodes) {
            auto& slot = tags.node_tags[static_cast<std::size_t>(v)];
            if (!slot || priority(tag) < priority(*slot)) {
                slot = tag;
            }
        }
    }
    return tags;
}

void write_mesh_text(const Mesh& mesh, std::ostream& os) {
    os << (mesh.kind() == ElementKind::Quad ? "quad" : "triangle") << ' ' << mesh.num_nodes() << ' '
       << mesh.num_elements() << '\n';
    const auto old_precision = os.precision(17);
    for (int i = 0; i < mesh.num_nodes(); ++i) {
        os << "node " << i << ' ' << mesh.node(i).x << ' ' << mesh.node(i).y << '\n';
    }
    for (int e = 0; e < mesh.num_elements(); ++e) {
        os << "element " << e;
        for (int v : mesh.element(e)) {
            os << ' ' << v;
        }
        os << '\n';
    }
    os.precision(old_precision);
}

const char* to_string(BoundaryTag tag) {
    switch (tag) {
        case BoundaryTag::Dirichlet: return "dirichlet";
        case BoundaryTag::Inflow: return "inflow";
        case BoundaryTag::Outflow: return "outflow";
    }
    return "?";
}

}  // namespace anisofem
