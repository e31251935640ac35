#include "anisofem/field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "anisofem/errors.hpp"

namespace anisofem {

using std::numbers::pi;

FieldSpec FieldSpec::variable_alpha(double alpha) {
    if (!(alpha >= 0.0) || alpha > kMaxAlpha) {
        throw ConfigError("alpha must lie in [0, 3 pi / 4], got " + std::to_string(alpha));
    }
    FieldSpec f;
    f.kind = FieldKind::VariableAlpha;
    f.alpha = alpha;
    return f;
}

FieldSpec FieldSpec::aligned_e2() {
    FieldSpec f;
    f.kind = FieldKind::AlignedE2;
    return f;
}

Vec2 eval_field_raw(const FieldSpec& field, double x, double y) {
    if (field.kind == FieldKind::AlignedE2) {
        return {0.0, 1.0};
    }
    const double a = field.alpha;
    return {a * (2.0 * y - 1.0) * std::cos(pi * x) + pi, pi * a * (y * y - y) * std::sin(pi * x)};
}

Vec2 eval_b(const FieldSpec& field, double x, double y) {
    const Vec2 big = eval_field_raw(field, x, y);
    const double len = norm(big);
    if (len < 1e-14) {
        throw DegenerateFieldError("|B| vanishes at (" + std::to_string(x) + ", " +
                                   std::to_string(y) + ")");
    }
    return (1.0 / len) * big;
}

double eval_a_par(const FieldSpec& field, double x, double y) {
    return field.a_par ? field.a_par(x, y) : 1.0;
}

Mat2 assemble_tensor(Vec2 b, double a_par, const Mat2& a_perp) {
    const Mat2 bb = outer(b, b);
    const Mat2 proj = Mat2::identity() + (-1.0) * bb;
    return a_par * bb + proj * a_perp * proj;
}

Mat2 eval_A(const FieldSpec& field, double x, double y) {
    const Vec2 b = eval_b(field, x, y);
    const Mat2 a_perp = field.a_perp ? field.a_perp(x, y) : Mat2::identity();
    return assemble_tensor(b, eval_a_par(field, x, y), a_perp);
}

FieldKind parse_field_kind(std::string_view name) {
    if (name == "variable_alpha") {
        return FieldKind::VariableAlpha;
    }
    if (name == "aligned_e2") {
        return FieldKind::AlignedE2;
    }
    throw ConfigError("unknown field kind '" + std::string(name) + "'");
}

const char* to_string(FieldKind kind) {
    return kind == FieldKind::VariableAlpha ? "variable_alpha" : "aligned_e2";
}

}  // namespace anisofem
