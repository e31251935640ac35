#include "anisofem/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "anisofem/errors.hpp"

namespace anisofem {

using std::numbers::pi;

namespace {

// Phase phi = pi y + alpha (y^2 - y) cos(pi x) and its gradient. grad(phi) is
// orthogonal to B, so every function of phi is constant along the field lines.
struct Phase {
    double value;
    Vec2 grad;
};

Phase phase(double alpha, double x, double y) {
    const double s = y * y - y;
    return {pi * y + alpha * s * std::cos(pi * x),
            {-pi * alpha * s * std::sin(pi * x), pi + alpha * (2.0 * y - 1.0) * std::cos(pi * x)}};
}

// Profile of the low-regularity case as a function of t = phi / pi.
double low_reg_profile(double t) {
    if (t < 0.0) {
        throw DomainError("low-regularity profile evaluated at t < 0");
    }
    const double t2log = t > 0.0 ? t * t * std::log(t) : 0.0;
    return t2log - 1.5 * t * t + 7.5 * t;
}

double low_reg_profile_derivative(double t) {
    if (t < 0.0) {
        throw DomainError("low-regularity profile evaluated at t < 0");
    }
    const double tlog = t > 0.0 ? t * std::log(t) : 0.0;
    return 2.0 * tlog - 2.0 * t + 7.5;
}

}  // namespace

double ManufacturedCase::u_limit(double x, double y) const {
    const Phase p = phase(alpha, x, y);
    if (id == CaseId::Smooth) {
        return std::sin(p.value);
    }
    return low_reg_profile(p.value / pi);
}

Vec2 ManufacturedCase::grad_u_limit(double x, double y) const {
    const Phase p = phase(alpha, x, y);
    if (id == CaseId::Smooth) {
        return std::cos(p.value) * p.grad;
    }
    return (low_reg_profile_derivative(p.value / pi) / pi) * p.grad;
}

double ManufacturedCase::u(double x, double y) const {
    if (id == CaseId::LowRegularity) {
        return u_limit(x, y);
    }
    const double u0 = u_limit(x, y);
    return u0 + eps * std::cos(2.0 * pi * x) * u0;
}

Vec2 ManufacturedCase::grad_u(double x, double y) const {
    if (id == CaseId::LowRegularity) {
        return grad_u_limit(x, y);
    }
    return grad_u_limit(x, y) + eps * grad_perturbation(x, y);
}

double ManufacturedCase::q(double x, double y) const {
    if (id != CaseId::Smooth) {
        throw DomainError("q is only available for the smooth case");
    }
    const double u0 = u_limit(x, y);
    return std::cos(2.0 * pi * x) * u0 - u0;
}

Vec2 ManufacturedCase::grad_perturbation(double x, double y) const {
    if (id != CaseId::Smooth) {
        throw DomainError("the perturbation is only defined for the smooth case");
    }
    const Phase p = phase(alpha, x, y);
    const double c2 = std::cos(2.0 * pi * x);
    const double s = std::sin(p.value);
    const double c = std::cos(p.value);
    return {-2.0 * pi * std::sin(2.0 * pi * x) * s + c2 * c * p.grad.x, c2 * c * p.grad.y};
}

double ManufacturedCase::dirichlet_value(double x, double y) const {
    // sin(phi) vanishes analytically on y = 0 and y = 1; return the exact zero.
    if (id == CaseId::Smooth) {
        return 0.0;
    }
    return u(x, y);
}

std::variant<double, Vec2> eval_exact(const ManufacturedCase& c, Quantity which, double x,
                                      double y) {
    switch (which) {
        case Quantity::U: return c.u(x, y);
        case Quantity::GradU: return c.grad_u(x, y);
        case Quantity::Q: return c.q(x, y);
        case Quantity::ULimit: return c.u_limit(x, y);
        case Quantity::GradPerturbation: return c.grad_perturbation(x, y);
    }
    throw DomainError("unknown quantity");
}

SourceFunction rhs_functional(const ManufacturedCase& c, const FieldSpec& field) {
    if (c.id == CaseId::LowRegularity) {
        return [c, field](double x, double y) {
            return SourceTerms{0.0, eval_A(field, x, y) * c.grad_u_limit(x, y)};
        };
    }
    return [c, field](double x, double y) {
        const Vec2 b = eval_b(field, x, y);
        const double a_par = eval_a_par(field, x, y);
        const Mat2 a_perp = field.a_perp ? field.a_perp(x, y) : Mat2::identity();
        const Mat2 a = assemble_tensor(b, a_par, a_perp);
        const Vec2 par_w = (a_par * dot(b, c.grad_perturbation(x, y))) * b;
        return SourceTerms{0.0, (1.0 - c.eps) * par_w + a * c.grad_u(x, y)};
    };
}

CaseId parse_case_id(std::string_view name) {
    if (name == "smooth") {
        return CaseId::Smooth;
    }
    if (name == "low_reg" || name == "low_regularity") {
        return CaseId::LowRegularity;
    }
    throw ConfigError("unknown case '" + std::string(name) + "'");
}

const char* to_string(CaseId id) { return id == CaseId::Smooth ? "smooth" : "low_reg"; }

}  // namespace anisofem
