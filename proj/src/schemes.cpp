#include "anisofem/schemes.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "anisofem/assembly.hpp"
#include "anisofem/errors.hpp"

namespace anisofem {

Scheme parse_scheme(std::string_view name) {
    if (name == "standard") return Scheme::Standard;
    if (name == "inflow") return Scheme::Inflow;
    if (name == "stabilized") return Scheme::Stabilized;
    throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

const char* to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::Standard: return "standard";
        case Scheme::Inflow: return "inflow";
        case Scheme::Stabilized: return "stabilized";
    }
    return "?";
}

const char* to_string(SolveStatus status) {
    return status == SolveStatus::Ok ? "OK" : "SINGULAR";
}

void ProblemSpec::validate() const {
    if (!std::isfinite(eps) || eps < 0.0) {
        throw ConfigError("eps must be finite and non-negative");
    }
    if (scheme == Scheme::Standard && eps == 0.0) {
        throw ConfigError("the standard scheme requires eps > 0");
    }
    if (!std::isfinite(sigma) || sigma < 0.0) {
        throw ConfigError("sigma must be finite and non-negative");
    }
}

Source manufactured_source(const ManufacturedCase& c, const FieldSpec& field) {
    Source s;
    s.terms = rhs_functional(c, field);
    if (c.id != CaseId::Smooth) {
        s.dirichlet = [c](double x, double y) { return c.dirichlet_value(x, y); };
    }
    return s;
}

Discretization discretize(const ProblemSpec& spec, int n, double lx, double ly) {
    if (n < 1) {
        throw ConfigError("mesh resolution must be positive");
    }
    auto mesh = std::make_shared<const Mesh>(element_kind(spec.family) == ElementKind::Quad
                                                 ? build_quad_mesh(n, n, lx, ly)
                                                 : build_tri_mesh(n, lx, ly));
    BoundaryTags tags = classify_boundary(*mesh, spec.field);
    static constexpr std::array<BoundaryTag, 1> kDirichlet{BoundaryTag::Dirichlet};
    static constexpr std::array<BoundaryTag, 2> kDirichletInflow{BoundaryTag::Dirichlet,
                                                                  BoundaryTag::Inflow};
    FemSpace u_space = make_space(mesh, spec.family, tags, kDirichlet);
    FemSpace q_space = spec.scheme == Scheme::Inflow
                           ? make_space(mesh, spec.family, tags, kDirichletInflow)
                           : make_space(mesh, spec.family, tags, kDirichlet);
    return {std::move(mesh), std::move(tags), std::move(u_space), std::move(q_space)};
}

namespace {

void add_scaled(TripletList& t, const CsrMatrix& m, double scale, int row_offset, int col_offset) {
    if (scale == 0.0) {
        return;
    }
    for (int i = 0; i < m.rows(); ++i) {
        for (int k = m.row_ptr()[static_cast<std::size_t>(i)]; k < m.row_ptr()[static_cast<std::size_t>(i) + 1]; ++k) {
            t.add(i + row_offset, m.col_idx()[static_cast<std::size_t>(k)] + col_offset,
                  scale * m.values()[static_cast<std::size_t>(k)]);
        }
    }
}

}  // namespace

BlockSystem build_system(const ProblemSpec& spec, const Discretization& disc, const Source& source) {
    spec.validate();
    const FemSpace& vu = disc.u_space;
    const FemSpace& vq = disc.q_space;
    const int nu = vu.num_dofs();

    std::vector<double> u_values(static_cast<std::size_t>(nu), 0.0);
    if (source.dirichlet) {
        for (int i = 0; i < nu; ++i) {
            if (vu.is_constrained(i)) {
                const Point& p = vu.dof_point(i);
                u_values[static_cast<std::size_t>(i)] = source.dirichlet(p.x, p.y);
            }
        }
    }

    BlockSystem sys;
    sys.scheme = spec.scheme;
    sys.n_u = nu;
    sys.free_u = vu.num_free();
    const std::vector<double> f = source.terms ? assemble_rhs(vu, source.terms)
                                               : std::vector<double>(static_cast<std::size_t>(nu), 0.0);
    const CsrMatrix a = assemble(vu, vu, FormKind::Full, spec.field);
    const CsrMatrix p = assemble(vu, vq, FormKind::Parallel, spec.field);

    if (spec.scheme == Scheme::Standard) {
        TripletList t(nu, nu);
        add_scaled(t, a, 1.0, 0, 0);
        add_scaled(t, p, (1.0 - spec.eps) / spec.eps, 0, 0);
        sys.matrix = t.to_csr();
        sys.rhs = f;
        apply_constraints(sys.matrix, sys.rhs, vu.constrained_mask(), u_values);
        return sys;
    }

    const int nq = vq.num_dofs();
    sys.n_q = nq;
    sys.free_q = vq.num_free();
    const int n = nu + nq;
    const double row2 = spec.flip_second_row ? -1.0 : 1.0;
    const CsrMatrix c = assemble(vq, vq, FormKind::Parallel, spec.field);
    const CsrMatrix pt = assemble(vq, vu, FormKind::Parallel, spec.field);

    TripletList t(n, n);
    add_scaled(t, a, 1.0, 0, 0);
    add_scaled(t, p, 1.0 - spec.eps, 0, nu);
    add_scaled(t, pt, row2, nu, 0);
    add_scaled(t, c, -row2 * spec.eps, nu, nu);
    if (spec.scheme == Scheme::Stabilized && spec.sigma > 0.0) {
        const CsrMatrix m = assemble(vq, vq, FormKind::Mass, spec.field);
        add_scaled(t, m, -row2 * spec.sigma, nu, nu);
    }
    sys.matrix = t.to_csr();
    sys.rhs.assign(static_cast<std::size_t>(n), 0.0);
    std::copy(f.begin(), f.end(), sys.rhs.begin());

    std::vector<char> mask(static_cast<std::size_t>(n), 0);
    std::copy(vu.constrained_mask().begin(), vu.constrained_mask().end(), mask.begin());
    std::copy(vq.constrained_mask().begin(), vq.constrained_mask().end(), mask.begin() + nu);
    std::vector<double> values(static_cast<std::size_t>(n), 0.0);
    std::copy(u_values.begin(), u_values.end(), values.begin());
    apply_constraints(sys.matrix, sys.rhs, mask, values);
    return sys;
}

SchemeSolution solve_scheme(const BlockSystem& system, bool estimate_condition) {
    SchemeSolution out;
    out.cond1 = std::numeric_limits<double>::quiet_NaN();
    try {
        const LuFactor factor(system.matrix, PivotPolicy::Flag);
        if (factor.near_singular()) {
            out.status = SolveStatus::Singular;
            out.message = "pivot " + std::to_string(factor.min_pivot()) + " below tolerance";
        }
        const std::vector<double> x = factor.solve(system.rhs);
        out.u.assign(x.begin(), x.begin() + system.n_u);
        out.q.assign(x.begin() + system.n_u, x.end());
        if (estimate_condition) {
            out.cond1 = cond1_estimate(system.matrix, factor);
        }
    } catch (const SingularMatrixError& e) {
        out.status = SolveStatus::Singular;
        out.message = e.what();
    }
    return out;
}

}  // namespace anisofem
