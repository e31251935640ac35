#include "anisofem/norms.hpp"

#include <array>
#include <cmath>

#include "anisofem/assembly.hpp"
#include "anisofem/errors.hpp"
#include "anisofem/quadrature.hpp"

namespace anisofem {

double ErrorNorms::get(NormKind kind) const {
    switch (kind) {
        case NormKind::L2: return l2;
        case NormKind::H1: return h1;
        case NormKind::L2Rel: return l2_rel();
        case NormKind::H1Rel: return h1_rel();
    }
    return 0.0;
}

namespace {

// Squared contributions of one element: error L2, error H1 seminorm, u_h L2, u_h H1 seminorm.
using Partial = std::array<double, 4>;

Partial element_errors(const FemSpace& space, std::span<const double> coeffs,
                       const ScalarFunction& exact, const GradientFunction& grad_exact,
                       const QuadratureRule& rule, int e) {
    Partial out{};
    std::array<double, 9> v{};
    std::array<Vec2, 9> g{};
    const auto dofs = space.element_dofs(e);
    for (int p = 0; p < rule.size(); ++p) {
        const Point ref = rule.points[static_cast<std::size_t>(p)];
        const MappedPoint mp = map_to_physical(space.mesh(), e, ref);
        const double w = rule.weights[static_cast<std::size_t>(p)] * std::abs(mp.det);
        eval_reference_basis(space.family(), ref, v, g);
        double uh = 0.0;
        Vec2 guh{};
        for (std::size_t a = 0; a < dofs.size(); ++a) {
            const double c = coeffs[static_cast<std::size_t>(dofs[a])];
            uh += c * v[a];
            guh = guh + c * (mp.jac_inv_t * g[a]);
        }
        const double ue = exact ? exact(mp.x.x, mp.x.y) : 0.0;
        const Vec2 gue = grad_exact ? grad_exact(mp.x.x, mp.x.y) : Vec2{};
        const double d = uh - ue;
        const Vec2 gd = guh - gue;
        out[0] += w * d * d;
        out[1] += w * dot(gd, gd);
        out[2] += w * uh * uh;
        out[3] += w * dot(guh, guh);
    }
    return out;
}

ErrorNorms finish(const Partial& sum) {
    ErrorNorms n;
    n.l2 = std::sqrt(sum[0]);
    n.h1 = std::sqrt(sum[0] + sum[1]);
    n.uh_l2 = std::sqrt(sum[2]);
    n.uh_h1 = std::sqrt(sum[2] + sum[3]);
    return n;
}

void check_size(const FemSpace& space, std::span<const double> coeffs) {
    if (coeffs.size() != static_cast<std::size_t>(space.num_dofs())) {
        throw Error("norm evaluation: coefficient vector does not match the space");
    }
}

}  // namespace

ErrorNorms error_norms(const FemSpace& space, std::span<const double> coeffs,
                       const ScalarFunction& exact, const GradientFunction& grad_exact) {
    check_size(space, coeffs);
    const QuadratureRule rule = error_rule(space.mesh().kind());
    const int nel = space.mesh().num_elements();
    std::vector<Partial> partial(static_cast<std::size_t>(nel));

#pragma omp parallel for schedule(static)
    for (int e = 0; e < nel; ++e) {
        partial[static_cast<std::size_t>(e)] = element_errors(space, coeffs, exact, grad_exact, rule, e);
    }

    Partial sum{};
    for (const Partial& p : partial) {
        for (std::size_t i = 0; i < sum.size(); ++i) {
            sum[i] += p[i];
        }
    }
    return finish(sum);
}

ErrorNorms error_norms(const FemSpace& space, std::span<const double> coeffs,
                       const ManufacturedCase& c) {
    return error_norms(
        space, coeffs, [&c](double x, double y) { return c.u(x, y); },
        [&c](double x, double y) { return c.grad_u(x, y); });
}

double error_norm(const FemSpace& space, std::span<const double> coeffs, const ManufacturedCase& c,
                  NormKind which) {
    return error_norms(space, coeffs, c).get(which);
}

FunctionNorms function_norms(const FemSpace& space, std::span<const double> coeffs) {
    const ErrorNorms n = error_norms(space, coeffs, ScalarFunction{}, GradientFunction{});
    return {n.uh_l2, n.uh_h1};
}

double energy_norm(const CsrMatrix& k, std::span<const double> x) {
    const std::vector<double> kx = k.multiply(x);
    double s = 0.0;
    for (std::size_t i = 0; i < kx.size(); ++i) {
        s += x[i] * kx[i];
    }
    return std::sqrt(std::max(s, 0.0));
}

namespace {

CsrMatrix constrained_stiffness(const FemSpace& u_space, const FieldSpec& field) {
    CsrMatrix a = assemble(u_space, u_space, FormKind::Full, field);
    std::vector<double> rhs(static_cast<std::size_t>(u_space.num_dofs()), 0.0);
    const std::vector<double> zeros(rhs.size(), 0.0);
    apply_constraints(a, rhs, u_space.constrained_mask(), zeros);
    return a;
}

}  // namespace

StarNorm::StarNorm(const FemSpace& u_space, const FemSpace& q_space, const FieldSpec& field)
    : mask_(u_space.constrained_mask()),
      a_full_(constrained_stiffness(u_space, field)),
      coupling_(assemble(u_space, q_space, FormKind::Parallel, field)),
      a_par_q_(assemble(q_space, q_space, FormKind::Parallel, field)),
      factor_(a_full_) {}

double StarNorm::riesz_norm(std::span<const double> functional) const {
    if (functional.size() != mask_.size()) {
        throw Error("StarNorm: functional does not match the space");
    }
    std::vector<double> r(functional.begin(), functional.end());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (mask_[i] != 0) {
            r[i] = 0.0;
        }
    }
    const std::vector<double> v = factor_.solve(r);
    return energy_norm(a_full_, v);
}

double StarNorm::operator()(std::span<const double> q) const {
    return riesz_norm(coupling_.multiply(q));
}

double StarNorm::parallel_seminorm(std::span<const double> q) const {
    return energy_norm(a_par_q_, q);
}

double star_h_norm(std::span<const double> q, const FieldSpec& field, const FemSpace& u_space,
                   const FemSpace& q_space) {
    return StarNorm(u_space, q_space, field)(q);
}

namespace reference {

ErrorNorms error_norms(const FemSpace& space, std::span<const double> coeffs,
                       const ScalarFunction& exact, const GradientFunction& grad_exact) {
    check_size(space, coeffs);
    const QuadratureRule rule = error_rule(space.mesh().kind());
    Partial sum{};
    for (int e = 0; e < space.mesh().num_elements(); ++e) {
        const Partial p = element_errors(space, coeffs, exact, grad_exact, rule, e);
        for (std::size_t i = 0; i < sum.size(); ++i) {
            sum[i] += p[i];
        }
    }
    return finish(sum);
}

}  // namespace reference

}  // namespace anisofem
