#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "anisofem/fem_space.hpp"
#include "anisofem/field.hpp"
#include "anisofem/geometry.hpp"
#include "anisofem/manufactured.hpp"
#include "anisofem/sparse.hpp"

namespace anisofem {

enum class Scheme {
    /// Direct discretization of the singularly perturbed problem.
    Standard,
    /// Lagrange-multiplier reformulation with q = 0 on the inflow boundary.
    Inflow,
    /// Reformulation stabilized by -sigma (xi, w).
    Stabilized,
};

Scheme parse_scheme(std::string_view name);
const char* to_string(Scheme scheme);

struct ProblemSpec {
    Scheme scheme = Scheme::Inflow;
    double eps = 1.0;
    double sigma = 0.0;
    FieldSpec field;
    Family family = Family::Q2;
    /// Negate the second block row.
    bool flip_second_row = false;

    /// Throws ConfigError on inconsistent parameters.
    void validate() const;
    /// True for the stabilized scheme with sigma = 0 (uniqueness not guaranteed).
    [[nodiscard]] bool flagged() const { return scheme == Scheme::Stabilized && sigma == 0.0; }
};

/// Linear functional and Dirichlet data for u.
struct Source {
    SourceFunction terms;
    /// Values on constrained u dofs; empty means zero.
    ScalarFunction dirichlet;
};

Source manufactured_source(const ManufacturedCase& c, const FieldSpec& field);

/// Mesh, boundary classification and the two discrete spaces of a scheme.
/// For Standard the multiplier space is unused.
struct Discretization {
    std::shared_ptr<const Mesh> mesh;
    BoundaryTags tags;
    FemSpace u_space;
    FemSpace q_space;
};

/// Uniform n x n mesh of [0, lx] x [0, ly] with boundary tags from the field.
/// u-space constrains Gamma_D; the multiplier space constrains Gamma_D and
/// Gamma_in for Inflow, Gamma_D only for Stabilized.
Discretization discretize(const ProblemSpec& spec, int n, double lx = 1.0, double ly = 1.0);

/// Full-size block system over (u dofs, q dofs). Constrained dofs keep identity
/// rows so that dimensions match the spaces.
struct BlockSystem {
    Scheme scheme = Scheme::Inflow;
    CsrMatrix matrix;
    std::vector<double> rhs;
    int n_u = 0;
    int n_q = 0;
    int free_u = 0;
    int free_q = 0;
};

BlockSystem build_system(const ProblemSpec& spec, const Discretization& disc, const Source& source);

enum class SolveStatus { Ok, Singular };

const char* to_string(SolveStatus status);

struct SchemeSolution {
    SolveStatus status = SolveStatus::Ok;
    std::vector<double> u;
    std::vector<double> q;
    /// NaN when not requested or when no factorization exists.
    double cond1 = 0.0;
    std::string message;
};

/// LU solve with one refinement step. A singular matrix is reported through
/// `status`, not thrown. When every pivot is nonzero but some fall below the
/// tolerance, the status is Singular and u, q still hold the computed solution;
/// u and q are empty only for an exact zero pivot.
SchemeSolution solve_scheme(const BlockSystem& system, bool estimate_condition = false);

}  // namespace anisofem
