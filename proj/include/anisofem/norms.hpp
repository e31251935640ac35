#pragma once

#include <span>
#include <vector>

#include "anisofem/fem_space.hpp"
#include "anisofem/field.hpp"
#include "anisofem/manufactured.hpp"
#include "anisofem/sparse.hpp"

namespace anisofem {

enum class NormKind { L2, H1, L2Rel, H1Rel };

/// Absolute errors against an exact function together with the norms of u_h
/// used for the relative variants. H1 is the full norm (L2 part included).
struct ErrorNorms {
    double l2 = 0.0;
    double h1 = 0.0;
    double uh_l2 = 0.0;
    double uh_h1 = 0.0;

    [[nodiscard]] double l2_rel() const { return l2 / uh_l2; }
    [[nodiscard]] double h1_rel() const { return h1 / uh_h1; }
    [[nodiscard]] double get(NormKind kind) const;
};

/// Error of the finite element function `coeffs` against (exact, grad_exact),
/// integrated with the error quadrature rule. Element contributions are
/// computed in parallel and summed in element order.
ErrorNorms error_norms(const FemSpace& space, std::span<const double> coeffs,
                       const ScalarFunction& exact, const GradientFunction& grad_exact);

/// Error against u^eps of a manufactured case.
ErrorNorms error_norms(const FemSpace& space, std::span<const double> coeffs,
                       const ManufacturedCase& c);

double error_norm(const FemSpace& space, std::span<const double> coeffs, const ManufacturedCase& c,
                  NormKind which);

/// L2 and full H1 norms of a finite element function.
struct FunctionNorms {
    double l2 = 0.0;
    double h1 = 0.0;
};

FunctionNorms function_norms(const FemSpace& space, std::span<const double> coeffs);

/// sqrt(x^T K x) for a symmetric positive semi-definite K.
double energy_norm(const CsrMatrix& k, std::span<const double> x);

/// Mesh-dependent dual norm |q|_{*h} = sup_{v in V_h} a_par(q, v) / |v|, where
/// |v|^2 = a(v, v). The supremum is attained at the Riesz representative v*
/// solving a(v*, w) = a_par(q, w) for all w in V_h. The factorization of a on
/// V_h is reused across calls.
class StarNorm {
public:
    StarNorm(const FemSpace& u_space, const FemSpace& q_space, const FieldSpec& field);

    [[nodiscard]] double operator()(std::span<const double> q) const;
    /// |q|_par = sqrt(a_par(q, q)).
    [[nodiscard]] double parallel_seminorm(std::span<const double> q) const;
    /// Riesz norm sqrt(r^T A^-1 r) of a functional already assembled on V_h.
    [[nodiscard]] double riesz_norm(std::span<const double> functional) const;

private:
    std::vector<char> mask_;
    CsrMatrix a_full_;
    CsrMatrix coupling_;
    CsrMatrix a_par_q_;
    LuFactor factor_;
};

double star_h_norm(std::span<const double> q, const FieldSpec& field, const FemSpace& u_space,
                   const FemSpace& q_space);

namespace reference {

ErrorNorms error_norms(const FemSpace& space, std::span<const double> coeffs,
                       const ScalarFunction& exact, const GradientFunction& grad_exact);

}  // namespace reference

}  // namespace anisofem
