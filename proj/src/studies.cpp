#include "anisofem/studies.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "anisofem/assembly.hpp"
#include "anisofem/errors.hpp"
#include "anisofem/norms.hpp"

namespace anisofem {

using std::numbers::pi;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct KindInfo {
    StudyKind kind;
    const char* name;
    const char* description;
};

constexpr KindInfo kKinds[] = {
    {StudyKind::SigmaSweep, "sigma_sweep", "stabilized scheme, error against sigma per (eps, alpha) regime"},
    {StudyKind::HConvergence, "h_convergence", "relative L2/H1 errors under mesh refinement, both AP schemes"},
    {StudyKind::EpsSweep, "eps_sweep", "error against eps at fixed h"},
    {StudyKind::Conditioning, "conditioning", "1-norm condition estimates against h and eps"},
    {StudyKind::LowRegularity, "low_regularity", "Q1 study with an L2-only source; norms of the multiplier"},
    {StudyKind::OracleValidation, "oracle_validation", "FEM against the Fourier series on (0,pi)^2 with b = e_y"},
    {StudyKind::InfsupProbe, "infsup_probe", "ratio of P1 and refined P2 dual norms of an oscillating multiplier"},
    {StudyKind::Remark3Check, "remark3_check", "mesh dual norm against its closed form for sin(kx)(cos y - cos 2y)"},
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// No factorization exists: every numeric field is NaN.
void mark_singular(StudyRecord& r) {
    r.solve_status = SolveStatus::Singular;
    r.err_L2_abs = r.err_H1_abs = r.err_L2_rel = r.err_H1_rel = kNaN;
    r.q_or_xi_L2_norm = r.q_or_xi_H1_norm = r.cond1 = kNaN;
}

PointSpec point_of(const StudyConfig& cfg, Scheme scheme, int n, const Regime& r, double sigma) {
    PointSpec p;
    p.scheme = scheme;
    p.family = cfg.family;
    p.case_id = cfg.case_id;
    p.n = n;
    p.eps = r.eps;
    p.alpha = r.alpha;
    p.sigma = sigma;
    p.condition = cfg.condition;
    p.flip_second_row = cfg.flip_second_row;
    p.timing = cfg.timing;
    return p;
}

// Loops schemes x regimes x n with sigma from the rule.
std::vector<StudyRecord> grid_study(const StudyConfig& cfg) {
    std::vector<StudyRecord> out;
    for (Scheme s : cfg.schemes) {
        for (const Regime& r : cfg.regimes) {
            for (int n : cfg.n) {
                const double sigma = cfg.sigma_rule.eval(lattice_spacing(cfg.family, n));
                out.push_back(run_point(point_of(cfg, s, n, r, sigma)));
            }
        }
    }
    return out;
}

}  // namespace

double lattice_spacing(Family family, int n, double length) {
    return length / (polynomial_order(family) * n);
}

StudyKind parse_study_kind(std::string_view name) {
    for (const KindInfo& k : kKinds) {
        if (name == k.name) {
            return k.kind;
        }
    }
    throw ConfigError("unknown study kind '" + std::string(name) + "'");
}

const char* to_string(StudyKind kind) {
    for (const KindInfo& k : kKinds) {
        if (k.kind == kind) {
            return k.name;
        }
    }
    return "?";
}

const char* describe(StudyKind kind) {
    for (const KindInfo& k : kKinds) {
        if (k.kind == kind) {
            return k.description;
        }
    }
    return "";
}

std::vector<StudyKind> all_study_kinds() {
    std::vector<StudyKind> out;
    for (const KindInfo& k : kKinds) {
        out.push_back(k.kind);
    }
    return out;
}

double SigmaRule::eval(double h) const {
    return type == Type::Fixed ? value : std::pow(h, power);
}

StudyConfig StudyConfig::defaults(StudyKind kind) {
    StudyConfig c;
    c.kind = kind;
    c.name = to_string(kind);
    c.schemes = {Scheme::Inflow, Scheme::Stabilized};
    c.regimes = {{1.0, 0.0}, {1e-10, 0.0}, {1e-10, 2.0}};
    switch (kind) {
        case StudyKind::SigmaSweep:
            c.schemes = {Scheme::Stabilized};
            c.n = {50};
            for (int p = -15; p <= 0; ++p) {
                c.sigma.push_back(std::pow(10.0, p));
            }
            break;
        case StudyKind::HConvergence:
            c.n = {5, 10, 20, 40, 80};
            break;
        case StudyKind::EpsSweep:
            c.n = {50};
            c.regimes.clear();
            for (double e : {1e-20, 1e-16, 1e-12, 1e-8, 1e-4, 1e-2, 1e-1, 1.0, 10.0}) {
                c.regimes.push_back({e, 2.0});
            }
            break;
        case StudyKind::Conditioning:
            c.n = {10, 20, 40, 80};
            c.regimes = {{1e-10, 2.0}};
            c.condition = true;
            break;
        case StudyKind::LowRegularity:
            c.family = Family::Q1;
            c.case_id = CaseId::LowRegularity;
            c.n = {16, 32, 64, 128};
            c.regimes = {{1e-10, 0.0}, {1e-10, 2.0}};
            c.sigma_rule.power = 2.0;
            break;
        case StudyKind::OracleValidation:
            c.schemes = {Scheme::Stabilized};
            c.n = {8, 16, 32, 64};
            c.regimes = {{1.0, 0.0}, {1e-10, 0.0}};
            c.sigma = {1e-6};
            c.modes = {{1, 1, 1.0}};
            break;
        case StudyKind::InfsupProbe:
            c.family = Family::P1;
            c.n = {4, 8, 16, 32};
            c.regimes.clear();
            break;
        case StudyKind::Remark3Check:
            c.n = {128};
            c.k_values = {1, 2, 3, 4};
            c.regimes.clear();
            break;
    }
    return c;
}

int StudyResult::singular_count() const {
    int count = 0;
    for (const StudyRecord& r : records) {
        count += r.solve_status == SolveStatus::Singular ? 1 : 0;
    }
    return count;
}

StudyRecord run_point(const PointSpec& p) {
    const auto t0 = std::chrono::steady_clock::now();
    ProblemSpec spec;
    spec.scheme = p.scheme;
    spec.eps = p.eps;
    spec.sigma = p.scheme == Scheme::Stabilized ? p.sigma : 0.0;
    spec.field = FieldSpec::variable_alpha(p.alpha);
    spec.family = p.family;
    spec.flip_second_row = p.flip_second_row;

    StudyRecord r;
    r.scheme = to_string(p.scheme);
    r.n = p.n;
    r.h = lattice_spacing(p.family, p.n);
    r.eps = p.eps;
    r.sigma = spec.sigma;
    r.alpha = p.alpha;

    const Discretization disc = discretize(spec, p.n);
    const ManufacturedCase mcase{p.case_id, p.alpha, p.eps};
    const BlockSystem sys = build_system(spec, disc, manufactured_source(mcase, spec.field));
    const SchemeSolution sol = solve_scheme(sys, p.condition);
    r.solve_status = sol.status;
    if (sol.u.empty()) {
        mark_singular(r);
    } else {
        const ErrorNorms e = error_norms(disc.u_space, sol.u, mcase);
        r.err_L2_abs = e.l2;
        r.err_H1_abs = e.h1;
        r.err_L2_rel = e.l2_rel();
        r.err_H1_rel = e.h1_rel();
        if (p.scheme != Scheme::Standard) {
            const FunctionNorms qn = function_norms(disc.q_space, sol.q);
            r.q_or_xi_L2_norm = qn.l2;
            r.q_or_xi_H1_norm = qn.h1;
        }
        r.cond1 = p.condition ? sol.cond1 : kNaN;
    }
    r.wall_time_seconds = p.timing ? seconds_since(t0) : 0.0;
    return r;
}

std::vector<StudyRecord> run_sigma_sweep(const StudyConfig& cfg) {
    std::vector<StudyRecord> out;
    for (Scheme s : cfg.schemes) {
        for (const Regime& r : cfg.regimes) {
            for (int n : cfg.n) {
                for (double sigma : cfg.sigma) {
                    out.push_back(run_point(point_of(cfg, s, n, r, sigma)));
                }
            }
        }
    }
    return out;
}

std::vector<StudyRecord> run_h_convergence(const StudyConfig& cfg) { return grid_study(cfg); }
std::vector<StudyRecord> run_eps_sweep(const StudyConfig& cfg) { return grid_study(cfg); }

std::vector<StudyRecord> run_conditioning(const StudyConfig& cfg) {
    StudyConfig c = cfg;
    c.condition = true;
    return grid_study(c);
}

std::vector<StudyRecord> run_low_regularity(const StudyConfig& cfg) {
    StudyConfig c = cfg;
    c.case_id = CaseId::LowRegularity;
    return grid_study(c);
}

std::vector<StudyRecord> run_oracle_validation(const StudyConfig& cfg) {
    const FourierRhs f{cfg.modes};
    f.validate();
    std::vector<StudyRecord> out;
    for (const Regime& reg : cfg.regimes) {
        for (double sigma : cfg.sigma) {
            const SpectralSolution series = spectral_solve(f, reg.eps, sigma);
            for (int n : cfg.n) {
                const auto t0 = std::chrono::steady_clock::now();
                ProblemSpec spec;
                spec.scheme = Scheme::Stabilized;
                spec.eps = reg.eps;
                spec.sigma = sigma;
                spec.field = FieldSpec::aligned_e2();
                spec.family = cfg.family;
                spec.flip_second_row = cfg.flip_second_row;
                const Discretization disc = discretize(spec, n, pi, pi);
                Source src;
                src.terms = [&f](double x, double y) { return SourceTerms{f.value(x, y), {}}; };
                const BlockSystem sys = build_system(spec, disc, src);
                const SchemeSolution sol = solve_scheme(sys, cfg.condition);

                StudyRecord r;
                r.scheme = to_string(Scheme::Stabilized);
                r.n = n;
                r.h = lattice_spacing(cfg.family, n, pi);
                r.eps = reg.eps;
                r.sigma = sigma;
                r.alpha = 0.0;
                r.solve_status = sol.status;
                if (sol.u.empty()) {
                    mark_singular(r);
                } else {
                    auto exact = [&series](SeriesQuantity w) {
                        return [&series, w](double x, double y) { return eval_series(series, w, x, y); };
                    };
                    auto grad = [&series](SeriesQuantity w) {
                        return [&series, w](double x, double y) {
                            const SeriesGradient g = eval_series_gradient(series, w, x, y);
                            return Vec2{g.dx, g.dy};
                        };
                    };
                    const ErrorNorms eu = error_norms(disc.u_space, sol.u, exact(SeriesQuantity::U),
                                                      grad(SeriesQuantity::U));
                    const ErrorNorms ex = error_norms(disc.q_space, sol.q, exact(SeriesQuantity::Xi),
                                                      grad(SeriesQuantity::Xi));
                    r.err_L2_abs = eu.l2;
                    r.err_H1_abs = eu.h1;
                    r.err_L2_rel = eu.l2_rel();
                    r.err_H1_rel = eu.h1_rel();
                    r.q_or_xi_L2_norm = ex.l2;
                    r.q_or_xi_H1_norm = ex.h1;
                    r.cond1 = cfg.condition ? sol.cond1 : kNaN;
                }
                r.wall_time_seconds = cfg.timing ? seconds_since(t0) : 0.0;
                out.push_back(std::move(r));
            }
        }
    }
    return out;
}

std::vector<InfsupRow> run_infsup_probe(const StudyConfig& cfg) {
    const FieldSpec field = FieldSpec::aligned_e2();
    static constexpr BoundaryTag kDirichlet[] = {BoundaryTag::Dirichlet};
    std::vector<InfsupRow> out;
    for (int n : cfg.n) {
        if (n % 2 != 0) {
            throw ConfigError("infsup_probe needs even n, got " + std::to_string(n));
        }
        auto coarse_mesh = std::make_shared<const Mesh>(build_tri_mesh(n));
        auto fine_mesh = std::make_shared<const Mesh>(build_tri_mesh(2 * n));
        const FemSpace coarse = make_space(coarse_mesh, Family::P1, classify_boundary(*coarse_mesh, field), kDirichlet);
        const FemSpace fine = make_space(fine_mesh, Family::P2, classify_boundary(*fine_mesh, field), kDirichlet);

        // q_h(x_i, y_j) = x_i sin(pi n y_j / 2) on the coarse nodes, left unconstrained.
        std::vector<double> q(static_cast<std::size_t>(coarse.num_dofs()));
        for (int i = 0; i < coarse.num_dofs(); ++i) {
            const Point& p = coarse.dof_point(i);
            q[static_cast<std::size_t>(i)] = p.x * std::sin(pi * n * p.y / 2.0);
        }

        const StarNorm coarse_norm(coarse, coarse, field);
        const StarNorm fine_norm(fine, fine, field);
        const std::vector<double> coarse_functional =
            assemble(coarse, coarse, FormKind::Parallel, field).multiply(q);
        const SourceFunction through_coarse = [&](double x, double y) {
            const Vec2 g = coarse.evaluate_gradient(q, {x, y});
            const Vec2 b = eval_b(field, x, y);
            return SourceTerms{0.0, (eval_a_par(field, x, y) * dot(b, g)) * b};
        };
        const std::vector<double> fine_functional = assemble_rhs(fine, through_coarse);

        InfsupRow row;
        row.n = n;
        row.coarse_norm = coarse_norm.riesz_norm(coarse_functional);
        row.fine_norm = fine_norm.riesz_norm(fine_functional);
        row.ratio = row.coarse_norm / row.fine_norm;
        out.push_back(row);
    }
    return out;
}

double remark3_closed_form(int k) {
    const double k2 = static_cast<double>(k) * k;
    return std::sqrt((1.0 / (k2 + 1.0) + 16.0 / (k2 + 4.0)) / 5.0);
}

std::vector<Remark3Row> run_remark3_check(const StudyConfig& cfg) {
    const FieldSpec field = FieldSpec::aligned_e2();
    static constexpr BoundaryTag kDirichlet[] = {BoundaryTag::Dirichlet};
    std::vector<Remark3Row> out;
    for (int n : cfg.n) {
        auto mesh = std::make_shared<const Mesh>(build_quad_mesh(n, n, pi, pi));
        const BoundaryTags tags = classify_boundary(*mesh, field);
        const FemSpace u_space = make_space(mesh, cfg.family, tags, kDirichlet);
        const FemSpace q_space(mesh, cfg.family);
        const StarNorm star(u_space, q_space, field);
        for (int k : cfg.k_values) {
            const std::vector<double> q = q_space.interpolate([k](double x, double y) {
                return std::sin(k * x) * (std::cos(y) - std::cos(2.0 * y));
            });
            Remark3Row row;
            row.n = n;
            row.k = k;
            row.star_norm = star(q);
            row.parallel_norm = star.parallel_seminorm(q);
            row.computed_ratio = row.star_norm / row.parallel_norm;
            row.analytic_ratio = remark3_closed_form(k);
            out.push_back(row);
        }
    }
    return out;
}

StudyResult run_study(const StudyConfig& cfg) {
    StudyResult res;
    res.kind = cfg.kind;
    res.name = cfg.name;
    switch (cfg.kind) {
        case StudyKind::SigmaSweep: res.records = run_sigma_sweep(cfg); break;
        case StudyKind::HConvergence: res.records = run_h_convergence(cfg); break;
        case StudyKind::EpsSweep: res.records = run_eps_sweep(cfg); break;
        case StudyKind::Conditioning: res.records = run_conditioning(cfg); break;
        case StudyKind::LowRegularity: res.records = run_low_regularity(cfg); break;
        case StudyKind::OracleValidation: res.records = run_oracle_validation(cfg); break;
        case StudyKind::InfsupProbe: res.infsup = run_infsup_probe(cfg); break;
        case StudyKind::Remark3Check: res.remark3 = run_remark3_check(cfg); break;
    }
    return res;
}

double observed_order(double e_coarse, double e_fine) {
    return std::log2(e_coarse / e_fine);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw Error("loglog_slope needs two or more matching points");
    }
    const auto n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace anisofem
