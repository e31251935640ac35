#pragma once

#include <span>
#include <vector>

#include "anisofem/fem_space.hpp"
#include "anisofem/field.hpp"
#include "anisofem/manufactured.hpp"
#include "anisofem/sparse.hpp"

namespace anisofem {

enum class FormKind {
    /// a(u, v) = int A grad u . grad v
    Full,
    /// a_par(u, v) = int A_par (b . grad u)(b . grad v)
    Parallel,
    /// (u, v) in L2
    Mass,
};

const char* to_string(FormKind kind);

/// Element-by-element assembly. Rows come from `row_space`, columns from
/// `col_space`; both must live on the same mesh. Constraints are ignored here.
/// Local element matrices are computed in parallel and scattered in element
/// order, so the result is bit-identical to reference::assemble.
CsrMatrix assemble(const FemSpace& row_space, const FemSpace& col_space, FormKind kind,
                   const FieldSpec& field);

/// b_i = int (value * phi_i + flux . grad phi_i) with the source quadrature.
std::vector<double> assemble_rhs(const FemSpace& space, const SourceFunction& source);

/// Symmetric elimination of prescribed values: constrained rows become identity
/// rows with the value on the right-hand side, constrained columns are moved to
/// the right-hand side of the free rows.
void apply_constraints(CsrMatrix& matrix, std::vector<double>& rhs, std::span<const char> mask,
                       std::span<const double> values);

namespace reference {

/// Single-threaded assembly through a triplet list.
CsrMatrix assemble(const FemSpace& row_space, const FemSpace& col_space, FormKind kind,
                   const FieldSpec& field);

std::vector<double> assemble_rhs(const FemSpace& space, const SourceFunction& source);

}  // namespace reference

}  // namespace anisofem
