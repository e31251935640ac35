#pragma once

#include <functional>
#include <string_view>

#include "anisofem/types.hpp"

namespace anisofem {

enum class FieldKind {
    /// b = B/|B| with B = (alpha (2y-1) cos(pi x) + pi, pi alpha (y^2-y) sin(pi x)).
    VariableAlpha,
    /// b = e_y everywhere.
    AlignedE2,
};

/// Largest admissible alpha; keeps B_x > 0 on the unit square.
inline constexpr double kMaxAlpha = 0.75 * 3.14159265358979323846;

/// Anisotropy direction and diffusion coefficients. Empty callables stand for
/// A_par = 1 and A_perp = Id.
struct FieldSpec {
    FieldKind kind = FieldKind::VariableAlpha;
    double alpha = 0.0;
    std::function<double(double, double)> a_par;
    std::function<Mat2(double, double)> a_perp;

    static FieldSpec variable_alpha(double alpha);
    static FieldSpec aligned_e2();
};

/// Unnormalized field B (VariableAlpha) or e_y.
Vec2 eval_field_raw(const FieldSpec& field, double x, double y);

/// Unit direction b; throws DegenerateFieldError when |B| < 1e-14.
Vec2 eval_b(const FieldSpec& field, double x, double y);

double eval_a_par(const FieldSpec& field, double x, double y);

/// A = (b x b) A_par (b x b) + (Id - b x b) A_perp (Id - b x b).
Mat2 eval_A(const FieldSpec& field, double x, double y);

/// Same as eval_A with b supplied by the caller.
Mat2 assemble_tensor(Vec2 b, double a_par, const Mat2& a_perp);

FieldKind parse_field_kind(std::string_view name);
const char* to_string(FieldKind kind);

}  // namespace anisofem
