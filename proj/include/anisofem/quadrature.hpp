#pragma once

#include <vector>

#include "anisofem/geometry.hpp"
#include "anisofem/types.hpp"

namespace anisofem {

/// Points and weights on a reference element: [0,1]^2 for quads, the unit
/// triangle (0,0),(1,0),(0,1) for triangles.
struct QuadratureRule {
    std::vector<Point> points;
    std::vector<double> weights;

    [[nodiscard]] int size() const { return static_cast<int>(points.size()); }
};

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

QuadratureRule tensor_gauss_rule(int points_per_direction);

/// Six-point rule exact for polynomials of degree 4.
QuadratureRule triangle_degree4_rule();

/// Gauss rule on the square pulled back to the triangle through the collapsed
/// map (u, v) -> (u, v (1 - u)); exact to degree 2n - 2.
QuadratureRule triangle_collapsed_rule(int points_per_direction);
/// Rule used for matrix assembly.
QuadratureRule assembly_rule(ElementKind kind);
/// Rule used for right-hand sides, whose integrands are not polynomial.
QuadratureRule source_rule(ElementKind kind);

/// Rule used when integrating errors against closed-form solutions.
QuadratureRule error_rule(ElementKind kind);

}  // namespace anisofem
