#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "anisofem/geometry.hpp"
#include "anisofem/manufactured.hpp"
#include "anisofem/types.hpp"

namespace anisofem {

enum class Family { P1, P2, Q1, Q2 };

int polynomial_order(Family family);
ElementKind element_kind(Family family);
int dofs_per_element(Family family);
Family parse_family(std::string_view name);
const char* to_string(Family family);

/// Values and reference-coordinate gradients of all local basis functions.
void eval_reference_basis(Family family, Point ref, std::span<double> values,
                          std::span<Vec2> gradients);

/// Position of local node `i` on the reference element.
Point reference_node(Family family, int i);

/// Image of a reference point under the element map, with the data needed to
/// push gradients forward: grad(phi) = jac_inv_t * grad_ref(phi).
struct MappedPoint {
    Point x;
    Mat2 jac_inv_t;
    double det = 0.0;
};

MappedPoint map_to_physical(const Mesh& mesh, int element, Point ref);

/// Reference coordinates of a physical point inside `element` (structured meshes only).
Point map_to_reference(const Mesh& mesh, int element, Point x);

/// Lagrange space of order 1 or 2 on a structured mesh. Its degrees of freedom
/// sit on the lattice of (k nx + 1) x (k ny + 1) points, numbered with x
/// fastest. Dofs on boundary edges whose tag was requested are constrained to
/// prescribed values.
class FemSpace {
public:
    FemSpace(std::shared_ptr<const Mesh> mesh, Family family);

    [[nodiscard]] const Mesh& mesh() const { return *mesh_; }
    [[nodiscard]] const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
    [[nodiscard]] Family family() const { return family_; }
    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] int num_dofs() const { return static_cast<int>(dof_points_.size()); }
    [[nodiscard]] int dofs_per_element() const { return local_dofs_; }
    [[nodiscard]] int lattice_nx() const { return lattice_nx_; }
    [[nodiscard]] int lattice_ny() const { return lattice_ny_; }

    [[nodiscard]] std::span<const int> element_dofs(int e) const;
    [[nodiscard]] const Point& dof_point(int i) const { return dof_points_[static_cast<std::size_t>(i)]; }

    [[nodiscard]] bool is_constrained(int i) const { return constrained_[static_cast<std::size_t>(i)] != 0; }
    [[nodiscard]] const std::vector<char>& constrained_mask() const { return constrained_; }
    [[nodiscard]] int num_constrained() const;
    [[nodiscard]] int num_free() const { return num_dofs() - num_constrained(); }

    /// Mark every dof lying on a boundary edge whose tag is in `tags`.
    void constrain(const BoundaryTags& boundary, std::span<const BoundaryTag> tags);
    void constrain_dof(int i) { constrained_[static_cast<std::size_t>(i)] = 1; }

    /// Nodal interpolant.
    [[nodiscard]] std::vector<double> interpolate(const ScalarFunction& f) const;
    [[nodiscard]] double evaluate(std::span<const double> coeffs, Point x) const;
    [[nodiscard]] Vec2 evaluate_gradient(std::span<const double> coeffs, Point x) const;

private:
    [[nodiscard]] int lattice_index(int i, int j) const { return j * lattice_nx_ + i; }

    std::shared_ptr<const Mesh> mesh_;
    Family family_;
    int order_;
    int local_dofs_;
    int lattice_nx_;
    int lattice_ny_;
    std::vector<Point> dof_points_;
    std::vector<int> element_dofs_;
    std::vector<char> constrained_;
};

FemSpace make_space(std::shared_ptr<const Mesh> mesh, Family family, const BoundaryTags& boundary,
                    std::span<const BoundaryTag> constrained_tags);

}  // namespace anisofem
