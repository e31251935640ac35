#include "anisofem/fem_space.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "anisofem/errors.hpp"

namespace anisofem {

int polynomial_order(Family family) {
    return (family == Family::P1 || family == Family::Q1) ? 1 : 2;
}

ElementKind element_kind(Family family) {
    return (family == Family::Q1 || family == Family::Q2) ? ElementKind::Quad
                                                          : ElementKind::Triangle;
}

int dofs_per_element(Family family) {
    switch (family) {
        case Family::P1: return 3;
        case Family::P2: return 6;
        case Family::Q1: return 4;
        case Family::Q2: return 9;
    }
    return 0;
}

Family parse_family(std::string_view name) {
    if (name == "P1") return Family::P1;
    if (name == "P2") return Family::P2;
    if (name == "Q1") return Family::Q1;
    if (name == "Q2") return Family::Q2;
    throw ConfigError("unknown element family '" + std::string(name) + "'");
}

const char* to_string(Family family) {
    switch (family) {
        case Family::P1: return "P1";
        case Family::P2: return "P2";
        case Family::Q1: return "Q1";
        case Family::Q2: return "Q2";
    }
    return "?";
}

namespace {

// 1D Lagrange basis on the equispaced nodes {0, 1/k, ..., 1}.
void lagrange_1d(int k, double t, std::array<double, 3>& v, std::array<double, 3>& d) {
    if (k == 1) {
        v = {1.0 - t, t, 0.0};
        d = {-1.0, 1.0, 0.0};
        return;
    }
    v = {2.0 * (t - 0.5) * (t - 1.0), -4.0 * t * (t - 1.0), 2.0 * t * (t - 0.5)};
    d = {4.0 * t - 3.0, 4.0 - 8.0 * t, 4.0 * t - 1.0};
}

}  // namespace

void eval_reference_basis(Family family, Point ref, std::span<double> values,
                          std::span<Vec2> gradients) {
    if (element_kind(family) == ElementKind::Quad) {
        const int k = polynomial_order(family);
        std::array<double, 3> vx{}, dx{}, vy{}, dy{};
        lagrange_1d(k, ref.x, vx, dx);
        lagrange_1d(k, ref.y, vy, dy);
        for (int b = 0; b <= k; ++b) {
            for (int a = 0; a <= k; ++a) {
                const auto i = static_cast<std::size_t>(b * (k + 1) + a);
                const auto ua = static_cast<std::size_t>(a);
                const auto ub = static_cast<std::size_t>(b);
                values[i] = vx[ua] * vy[ub];
                gradients[i] = {dx[ua] * vy[ub], vx[ua] * dy[ub]};
            }
        }
        return;
    }
    const double l0 = 1.0 - ref.x - ref.y;
    const double l1 = ref.x;
    const double l2 = ref.y;
    const Vec2 g0{-1.0, -1.0};
    const Vec2 g1{1.0, 0.0};
    const Vec2 g2{0.0, 1.0};
    if (family == Family::P1) {
        values[0] = l0;
        values[1] = l1;
        values[2] = l2;
        gradients[0] = g0;
        gradients[1] = g1;
        gradients[2] = g2;
        return;
    }
    values[0] = l0 * (2.0 * l0 - 1.0);
    values[1] = l1 * (2.0 * l1 - 1.0);
    values[2] = l2 * (2.0 * l2 - 1.0);
    values[3] = 4.0 * l0 * l1;
    values[4] = 4.0 * l1 * l2;
    values[5] = 4.0 * l2 * l0;
    gradients[0] = (4.0 * l0 - 1.0) * g0;
    gradients[1] = (4.0 * l1 - 1.0) * g1;
    gradients[2] = (4.0 * l2 - 1.0) * g2;
    gradients[3] = 4.0 * (l0 * g1 + l1 * g0);
    gradients[4] = 4.0 * (l1 * g2 + l2 * g1);
    gradients[5] = 4.0 * (l2 * g0 + l0 * g2);
}

Point reference_node(Family family, int i) {
    if (element_kind(family) == ElementKind::Quad) {
        const int k = polynomial_order(family);
        return {static_cast<double>(i % (k + 1)) / k, static_cast<double>(i / (k + 1)) / k};
    }
    static constexpr std::array<Point, 6> nodes{
        Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.0, 1.0},
        Point{0.5, 0.0}, Point{0.5, 0.5}, Point{0.0, 0.5}};
    return nodes[static_cast<std::size_t>(i)];
}

MappedPoint map_to_physical(const Mesh& mesh, int element, Point ref) {
    const auto v = mesh.element(element);
    Mat2 jac{};
    Point x{};
    if (mesh.kind() == ElementKind::Quad) {
        // Bilinear map from the counter-clockwise vertex list.
        const double s = ref.x;
        const double t = ref.y;
        const std::array<double, 4> n{(1 - s) * (1 - t), s * (1 - t), s * t, (1 - s) * t};
        const std::array<Vec2, 4> dn{Vec2{-(1 - t), -(1 - s)}, Vec2{1 - t, -s}, Vec2{t, s},
                                     Vec2{-t, 1 - s}};
        for (std::size_t a = 0; a < 4; ++a) {
            const Point& p = mesh.node(v[a]);
            x = x + n[a] * p;
            jac.xx += p.x * dn[a].x;
            jac.xy += p.x * dn[a].y;
            jac.yx += p.y * dn[a].x;
            jac.yy += p.y * dn[a].y;
        }
    } else {
        const Point& p0 = mesh.node(v[0]);
        const Point e1 = mesh.node(v[1]) - p0;
        const Point e2 = mesh.node(v[2]) - p0;
        x = p0 + ref.x * e1 + ref.y * e2;
        jac = {e1.x, e2.x, e1.y, e2.y};
    }
    const double det = jac.xx * jac.yy - jac.xy * jac.yx;
    // inverse transpose of [[a, b], [c, d]] is [[d, -c], [-b, a]] / det
    return {x, {jac.yy / det, -jac.yx / det, -jac.xy / det, jac.xx / det}, det};
}

Point map_to_reference(const Mesh& mesh, int element, Point x) {
    const auto cell = mesh.cell_of(element);
    const double s = x.x / mesh.dx() - cell[0];
    const double t = x.y / mesh.dy() - cell[1];
    if (mesh.kind() == ElementKind::Quad) {
        return {s, t};
    }
    return mesh.half_of(element) == 0 ? Point{s - t, t} : Point{s, t - s};
}

FemSpace::FemSpace(std::shared_ptr<const Mesh> mesh, Family family)
    : mesh_(std::move(mesh)),
      family_(family),
      order_(polynomial_order(family)),
      local_dofs_(anisofem::dofs_per_element(family)) {
    if (element_kind(family) != mesh_->kind()) {
        throw ConfigError(std::string("element family ") + to_string(family) +
                          " does not match the mesh element kind");
    }
    const int k = order_;
    lattice_nx_ = k * mesh_->nx() + 1;
    lattice_ny_ = k * mesh_->ny() + 1;
    dof_points_.reserve(static_cast<std::size_t>(lattice_nx_ * lattice_ny_));
    for (int j = 0; j < lattice_ny_; ++j) {
        for (int i = 0; i < lattice_nx_; ++i) {
            dof_points_.push_back({mesh_->lx() * i / (k * mesh_->nx()),
                                   mesh_->ly() * j / (k * mesh_->ny())});
        }
    }
    constrained_.assign(dof_points_.size(), 0);

    const int nel = mesh_->num_elements();
    element_dofs_.reserve(static_cast<std::size_t>(nel * local_dofs_));
    const int stride = mesh_->nx() + 1;
    for (int e = 0; e < nel; ++e) {
        const auto v = mesh_->element(e);
        // Vertex positions on the dof lattice.
        const int i0 = k * (v[0] % stride);
        const int j0 = k * (v[0] / stride);
        const int i1 = k * (v[1] % stride);
        const int j1 = k * (v[1] / stride);
        const int i3 = k * (v[v.size() - 1] % stride);
        const int j3 = k * (v[v.size() - 1] / stride);
        for (int a = 0; a < local_dofs_; ++a) {
            const Point r = reference_node(family, a);
            const int ra = static_cast<int>(r.x * k + 0.5);
            const int rb = static_cast<int>(r.y * k + 0.5);
            int li = 0;
            int lj = 0;
            if (mesh_->kind() == ElementKind::Quad) {
                li = i0 + ra;
                lj = j0 + rb;
            } else {
                // Affine map through vertices 0, 1 and 2 (stored last for triangles).
                li = i0 + (ra * (i1 - i0) + rb * (i3 - i0)) / k;
                lj = j0 + (ra * (j1 - j0) + rb * (j3 - j0)) / k;
            }
            element_dofs_.push_back(lattice_index(li, lj));
        }
    }
}

std::span<const int> FemSpace::element_dofs(int e) const {
    return {element_dofs_.data() + static_cast<std::size_t>(e * local_dofs_),
            static_cast<std::size_t>(local_dofs_)};
}

int FemSpace::num_constrained() const {
    return static_cast<int>(std::count(constrained_.begin(), constrained_.end(), char{1}));
}

void FemSpace::constrain(const BoundaryTags& boundary, std::span<const BoundaryTag> tags) {
    const auto& edges = mesh_->boundary_edges();
    const int k = order_;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (std::find(tags.begin(), tags.end(), boundary.edge_tags[e]) == tags.end()) {
            continue;
        }
        const BoundaryEdge& edge = edges[e];
        for (int a = 0; a <= k; ++a) {
            int li = 0;
            int lj = 0;
            switch (edge.side) {
                case Side::Bottom: li = k * edge.index + a; lj = 0; break;
                case Side::Top: li = k * edge.index + a; lj = lattice_ny_ - 1; break;
                case Side::Left: li = 0; lj = k * edge.index + a; break;
                case Side::Right: li = lattice_nx_ - 1; lj = k * edge.index + a; break;
            }
            constrained_[static_cast<std::size_t>(lattice_index(li, lj))] = 1;
        }
    }
}

std::vector<double> FemSpace::interpolate(const ScalarFunction& f) const {
    std::vector<double> out(dof_points_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = f(dof_points_[i].x, dof_points_[i].y);
    }
    return out;
}

double FemSpace::evaluate(std::span<const double> coeffs, Point x) const {
    const int e = mesh_->locate(x);
    std::array<double, 9> v{};
    std::array<Vec2, 9> g{};
    eval_reference_basis(family_, map_to_reference(*mesh_, e, x), v, g);
    const auto dofs = element_dofs(e);
    double sum = 0.0;
    for (std::size_t a = 0; a < dofs.size(); ++a) {
        sum += coeffs[static_cast<std::size_t>(dofs[a])] * v[a];
    }
    return sum;
}

Vec2 FemSpace::evaluate_gradient(std::span<const double> coeffs, Point x) const {
    const int e = mesh_->locate(x);
    std::array<double, 9> v{};
    std::array<Vec2, 9> g{};
    const Point ref = map_to_reference(*mesh_, e, x);
    eval_reference_basis(family_, ref, v, g);
    const MappedPoint mp = map_to_physical(*mesh_, e, ref);
    const auto dofs = element_dofs(e);
    Vec2 sum{};
    for (std::size_t a = 0; a < dofs.size(); ++a) {
        sum = sum + coeffs[static_cast<std::size_t>(dofs[a])] * (mp.jac_inv_t * g[a]);
    }
    return sum;
}

FemSpace make_space(std::shared_ptr<const Mesh> mesh, Family family, const BoundaryTags& boundary,
                    std::span<const BoundaryTag> constrained_tags) {
    FemSpace space(std::move(mesh), family);
    space.constrain(boundary, constrained_tags);
    return space;
}

}  // namespace anisofem
