#pragma once

#include <functional>
#include <string_view>
#include <variant>

#include "anisofem/field.hpp"
#include "anisofem/types.hpp"

namespace anisofem {

/// Integrand of a linear functional l(v) = int (value * v + flux . grad v) dx.
struct SourceTerms {
    double value = 0.0;
    Vec2 flux{};
};

using SourceFunction = std::function<SourceTerms(double x, double y)>;
using ScalarFunction = std::function<double(double x, double y)>;
using GradientFunction = std::function<Vec2(double x, double y)>;

enum class CaseId {
    /// u^eps = u0 + eps cos(2 pi x) u0 with u0 = sin(pi y + alpha (y^2-y) cos(pi x)).
    Smooth,
    /// u0 = t^2 (ln t - 1.5) + 7.5 t, t = y + alpha (y^2-y) cos(pi x) / pi; f in L2 only.
    LowRegularity,
};

struct ManufacturedCase {
    CaseId id = CaseId::Smooth;
    double alpha = 0.0;
    double eps = 1.0;

    [[nodiscard]] double u(double x, double y) const;
    [[nodiscard]] Vec2 grad_u(double x, double y) const;
    /// Limit solution u0, constant along the field lines of the VariableAlpha field.
    [[nodiscard]] double u_limit(double x, double y) const;
    [[nodiscard]] Vec2 grad_u_limit(double x, double y) const;
    /// Auxiliary unknown q^eps, zero on the inflow side x = 0. Smooth only.
    [[nodiscard]] double q(double x, double y) const;
    /// Gradient of w in u^eps = u0 + eps w. Smooth only.
    [[nodiscard]] Vec2 grad_perturbation(double x, double y) const;
    /// Boundary data for u on the Dirichlet part.
    [[nodiscard]] double dirichlet_value(double x, double y) const;
};

enum class Quantity { U, GradU, Q, ULimit, GradPerturbation };

std::variant<double, Vec2> eval_exact(const ManufacturedCase& c, Quantity which, double x, double y);

/// Right-hand side l(v) = (1-eps) a_par(w, v) + a(u^eps, v) for Smooth, a(u0, v) for
/// LowRegularity. Equal to (f, v) for the manufactured f on the space of test functions.
SourceFunction rhs_functional(const ManufacturedCase& c, const FieldSpec& field);

CaseId parse_case_id(std::string_view name);
const char* to_string(CaseId id);

}  // namespace anisofem
