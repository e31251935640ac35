#include "anisofem/checks.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "anisofem/assembly.hpp"
#include "anisofem/errors.hpp"
#include "anisofem/norms.hpp"
#include "anisofem/quadrature.hpp"
#include "anisofem/schemes.hpp"
#include "anisofem/spectral.hpp"
#include "anisofem/studies.hpp"

namespace anisofem {

using std::numbers::pi;

namespace {

constexpr std::uint64_t kSeed = 20240611;

std::shared_ptr<const Mesh> mesh_for(Family f, int n, double l = 1.0) {
    return std::make_shared<const Mesh>(element_kind(f) == ElementKind::Quad ? build_quad_mesh(n, n, l, l)
                                                                             : build_tri_mesh(n, l, l));
}

std::string sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

double asymmetry(const CsrMatrix& k) {
    const CsrMatrix t = k.transposed();
    double worst = 0.0;
    for (int i = 0; i < k.rows(); ++i) {
        for (int p = k.row_ptr()[static_cast<std::size_t>(i)]; p < k.row_ptr()[static_cast<std::size_t>(i) + 1]; ++p) {
            const int j = k.col_idx()[static_cast<std::size_t>(p)];
            worst = std::max(worst, std::abs(k.values()[static_cast<std::size_t>(p)] - t.at(i, j)));
        }
    }
    for (int i = 0; i < t.rows(); ++i) {
        for (int p = t.row_ptr()[static_cast<std::size_t>(i)]; p < t.row_ptr()[static_cast<std::size_t>(i) + 1]; ++p) {
            const int j = t.col_idx()[static_cast<std::size_t>(p)];
            worst = std::max(worst, std::abs(t.values()[static_cast<std::size_t>(p)] - k.at(i, j)));
        }
    }
    return worst;
}

CheckResult check_symmetry() {
    double worst = 0.0;
    for (Family f : {Family::Q1, Family::Q2, Family::P1, Family::P2}) {
        const FemSpace s(mesh_for(f, 6), f);
        const FieldSpec field = FieldSpec::variable_alpha(2.0);
        for (FormKind kind : {FormKind::Full, FormKind::Parallel, FormKind::Mass}) {
            const CsrMatrix k = assemble(s, s, kind, field);
            worst = std::max(worst, asymmetry(k) / k.max_abs());
        }
    }
    return {"assembly symmetry", worst <= 1e-12, "max |K-K^T|/max|K| = " + sci(worst)};
}

CheckResult check_partition_of_unity() {
    double worst = 0.0;
    for (Family f : {Family::Q1, Family::Q2, Family::P1, Family::P2}) {
        for (const QuadratureRule& rule : {assembly_rule(element_kind(f)), error_rule(element_kind(f))}) {
            std::vector<double> v(static_cast<std::size_t>(dofs_per_element(f)));
            std::vector<Vec2> g(v.size());
            for (const Point& p : rule.points) {
                eval_reference_basis(f, p, v, g);
                double sum = 0.0;
                Vec2 gsum{};
                for (std::size_t a = 0; a < v.size(); ++a) {
                    sum += v[a];
                    gsum = gsum + g[a];
                }
                worst = std::max({worst, std::abs(sum - 1.0), norm(gsum)});
            }
        }
    }
    return {"partition of unity", worst <= 1e-13, "max deviation = " + sci(worst)};
}

CheckResult check_unit_field() {
    double worst = 0.0;
    for (double alpha : {0.0, 1.0, 2.0, kMaxAlpha}) {
        const FieldSpec field = FieldSpec::variable_alpha(alpha);
        for (int i = 0; i <= 40; ++i) {
            for (int j = 0; j <= 40; ++j) {
                const double x = i / 40.0;
                const double y = j / 40.0;
                worst = std::max(worst, std::abs(norm(eval_b(field, x, y)) - 1.0));
                // A b = A_par b, A (I - bb) = A_perp on the orthogonal part.
                const Vec2 b = eval_b(field, x, y);
                const Vec2 ab = eval_A(field, x, y) * b;
                worst = std::max(worst, norm(ab - b));
            }
        }
    }
    return {"unit b-field", worst <= 1e-14, "max ||b| - 1| = " + sci(worst)};
}

CheckResult check_parallel_kernel() {
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = 0.0;
    for (CaseId id : {CaseId::Smooth, CaseId::LowRegularity}) {
        for (double alpha : {0.0, 1.0, 2.0}) {
            const FieldSpec field = FieldSpec::variable_alpha(alpha);
            const ManufacturedCase c{id, alpha, 1e-3};
            for (int s = 0; s < 200; ++s) {
                const double x = u01(rng);
                const double y = 0.01 + 0.98 * u01(rng);
                const Vec2 g = c.grad_u_limit(x, y);
                worst = std::max(worst, std::abs(dot(eval_b(field, x, y), g)) / std::max(1.0, norm(g)));
            }
        }
    }
    // Discrete kernel on an aligned mesh: u0 depends on y only when alpha = 0.
    const FemSpace s(mesh_for(Family::Q2, 8), Family::Q2);
    const FieldSpec field = FieldSpec::variable_alpha(0.0);
    const ManufacturedCase c{CaseId::Smooth, 0.0, 0.0};
    const auto q = s.interpolate([&c](double x, double y) { return c.u_limit(x, y); });
    const double par = energy_norm(assemble(s, s, FormKind::Parallel, field), q);
    const double mass = energy_norm(assemble(s, s, FormKind::Mass, field), q);
    const bool ok = worst <= 1e-12 && par * par <= 1e-10 * mass * mass;
    return {"parallel gradient of u0 vanishes", ok,
            "max |b.grad u0| = " + sci(worst) + ", q^T P q / q^T M q = " + sci(par * par / (mass * mass))};
}

CheckResult check_star_norm() {
    std::mt19937_64 rng(kSeed + 1);
    std::normal_distribution<double> gauss;
    const FieldSpec field = FieldSpec::variable_alpha(2.0);
    auto mesh = mesh_for(Family::Q1, 10);
    const BoundaryTags tags = classify_boundary(*mesh, field);
    static constexpr BoundaryTag kD[] = {BoundaryTag::Dirichlet};
    static constexpr BoundaryTag kDI[] = {BoundaryTag::Dirichlet, BoundaryTag::Inflow};
    const FemSpace u_space = make_space(mesh, Family::Q1, tags, kD);
    const FemSpace q_space = make_space(mesh, Family::Q1, tags, kDI);
    const StarNorm star(u_space, q_space, field);
    double worst_ratio = 0.0;
    double worst_homog = 0.0;
    for (int s = 0; s < 100; ++s) {
        std::vector<double> q(static_cast<std::size_t>(q_space.num_dofs()));
        for (std::size_t i = 0; i < q.size(); ++i) {
            q[i] = q_space.is_constrained(static_cast<int>(i)) ? 0.0 : gauss(rng);
        }
        const double sn = star(q);
        worst_ratio = std::max(worst_ratio, sn / star.parallel_seminorm(q));
        const double c = -3.7 + 0.1 * s;
        std::vector<double> cq(q);
        for (double& v : cq) v *= c;
        worst_homog = std::max(worst_homog, std::abs(star(cq) - std::abs(c) * sn) / (std::abs(c) * sn));
    }
    const bool ok = worst_ratio <= 1.0 + 1e-12 && worst_homog <= 1e-12;
    return {"star-h norm homogeneity and dominance", ok,
            "max |q|*h/|q|par = " + std::to_string(worst_ratio) + ", homogeneity " + sci(worst_homog)};
}

CsrMatrix random_dominant(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> col(0, n - 1);
    TripletList t(n, n);
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int k = 0; k < 6; ++k) {
            const double v = u(rng);
            t.add(i, col(rng), v);
            row += std::abs(v);
        }
        t.add(i, i, row + 1.0 + std::abs(u(rng)));
    }
    return t.to_csr();
}

CheckResult check_lu_residual() {
    std::mt19937_64 rng(kSeed + 2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const CsrMatrix a = random_dominant(200, rng);
        std::vector<double> b(200);
        for (double& v : b) v = u(rng);
        const LuFactor f(a);
        const std::vector<double> x = f.solve(b);
        const std::vector<double> ax = a.multiply(x);
        double res = 0.0, xinf = 0.0, binf = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            res = std::max(res, std::abs(ax[i] - b[i]));
            xinf = std::max(xinf, std::abs(x[i]));
            binf = std::max(binf, std::abs(b[i]));
        }
        worst = std::max(worst, res / (a.norm1() * xinf + binf));
    }
    // A saddle-point system from the inflow scheme.
    ProblemSpec spec;
    spec.scheme = Scheme::Inflow;
    spec.eps = 1e-10;
    spec.field = FieldSpec::variable_alpha(2.0);
    spec.family = Family::Q2;
    const Discretization d = discretize(spec, 8);
    const BlockSystem sys = build_system(spec, d, manufactured_source({CaseId::Smooth, 2.0, 1e-10}, spec.field));
    const LuFactor f(sys.matrix);
    const std::vector<double> x = f.solve(sys.rhs);
    const std::vector<double> ax = sys.matrix.multiply(x);
    double res = 0.0, xinf = 0.0, binf = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        res = std::max(res, std::abs(ax[i] - sys.rhs[i]));
        xinf = std::max(xinf, std::abs(x[i]));
        binf = std::max(binf, std::abs(sys.rhs[i]));
    }
    worst = std::max(worst, res / (sys.matrix.norm1() * xinf + binf));
    return {"LU residual contract", worst <= 1e-8, "max scaled residual = " + sci(worst)};
}

CheckResult check_cond_oracle() {
    std::mt19937_64 rng(kSeed + 3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double lo = 1e300, hi = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXd dense(50, 50);
        TripletList t(50, 50);
        for (int i = 0; i < 50; ++i) {
            for (int j = 0; j < 50; ++j) {
                dense(i, j) = u(rng);
                t.add(i, j, dense(i, j));
            }
        }
        const CsrMatrix a = t.to_csr();
        const double exact = dense.cwiseAbs().colwise().sum().maxCoeff() *
                             dense.inverse().cwiseAbs().colwise().sum().maxCoeff();
        const double est = cond1_estimate(a, LuFactor(a));
        lo = std::min(lo, est / exact);
        hi = std::max(hi, est / exact);
    }
    const bool ok = lo >= 0.1 && hi <= 1.0 + 1e-12;
    return {"cond1 dense-oracle sandwich", ok, "estimate/exact in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]"};
}

CheckResult check_csv_roundtrip() {
    std::mt19937_64 rng(kSeed + 4);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::vector<StudyRecord> recs;
    for (int i = 0; i < 20; ++i) {
        StudyRecord r;
        r.scheme = i % 2 == 0 ? "inflow" : "stabilized";
        r.n = 10 * (i + 1);
        r.h = 1.0 / r.n;
        r.eps = std::pow(10.0, u(rng));
        r.sigma = std::pow(10.0, u(rng));
        r.alpha = u(rng);
        r.err_L2_abs = std::exp(u(rng));
        r.err_H1_abs = std::exp(u(rng));
        r.err_L2_rel = std::exp(u(rng));
        r.err_H1_rel = std::exp(u(rng));
        r.q_or_xi_L2_norm = std::exp(u(rng));
        r.q_or_xi_H1_norm = std::exp(u(rng));
        r.cond1 = i % 5 == 0 ? std::numeric_limits<double>::quiet_NaN() : std::exp(3.0 * u(rng));
        r.solve_status = i % 7 == 0 ? SolveStatus::Singular : SolveStatus::Ok;
        r.wall_time_seconds = std::abs(u(rng));
        recs.push_back(r);
    }
    std::stringstream ss;
    write_records_csv(recs, ss);
    const auto back = read_records_csv(ss);
    bool ok = back.size() == recs.size();
    for (std::size_t i = 0; ok && i < recs.size(); ++i) {
        ok = same_record(recs[i], back[i]);
    }
    return {"CSV round-trip", ok, std::to_string(recs.size()) + " records"};
}

CheckResult check_parallel_matches_serial() {
    bool ok = true;
    const FieldSpec field = FieldSpec::variable_alpha(2.0);
    for (Family f : {Family::Q2, Family::P2}) {
        const FemSpace s(mesh_for(f, 12), f);
        for (FormKind kind : {FormKind::Full, FormKind::Parallel, FormKind::Mass}) {
            const CsrMatrix a = assemble(s, s, kind, field);
            const CsrMatrix b = reference::assemble(s, s, kind, field);
            ok = ok && a.row_ptr() == b.row_ptr() && a.col_idx() == b.col_idx() && a.values() == b.values();
        }
        const auto src = rhs_functional({CaseId::Smooth, 2.0, 1e-3}, field);
        ok = ok && assemble_rhs(s, src) == reference::assemble_rhs(s, src);
    }
    return {"parallel assembly bit-identical to serial", ok, ""};
}

CheckResult check_q2_mass_exact() {
    // 1D quadratic mass matrix on [0, 1] with nodes 0, 1/2, 1.
    const double m1[3][3] = {{4, 2, -1}, {2, 16, 2}, {-1, 2, 4}};
    auto mesh = std::make_shared<const Mesh>(build_quad_mesh(1, 1));
    const FemSpace s(mesh, Family::Q2);
    const CsrMatrix m = assemble(s, s, FormKind::Mass, FieldSpec::aligned_e2());
    double worst = 0.0;
    const auto dofs = s.element_dofs(0);
    for (int a = 0; a < 9; ++a) {
        for (int b = 0; b < 9; ++b) {
            const double exact = m1[a % 3][b % 3] * m1[a / 3][b / 3] / 900.0;
            worst = std::max(worst, std::abs(m.at(dofs[static_cast<std::size_t>(a)], dofs[static_cast<std::size_t>(b)]) - exact));
        }
    }
    return {"Q2 mass matrix exact", worst <= 1e-13, "max error = " + sci(worst)};
}

CheckResult check_spectral_regularity() {
    std::mt19937_64 rng(kSeed + 5);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_int_distribution<int> kd(1, 12), ld(0, 12), count(1, 6);
    int violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        FourierRhs f;
        for (int m = count(rng); m > 0; --m) {
            f.modes.push_back({kd(rng), ld(rng), 2.0 * u01(rng) - 1.0});
        }
        const double eps = u01(rng);
        const double sigma = u01(rng) + 1e-14;
        const double s = 3.0 * u01(rng);
        const SpectralSolution sol = spectral_solve(f, eps, sigma);
        std::size_t xi_index = 0;
        for (std::size_t i = 0; i < f.modes.size(); ++i) {
            const Mode& fm = f.modes[i];
            const double r = static_cast<double>(fm.k) * fm.k + static_cast<double>(fm.l) * fm.l;
            const double rhs = std::pow(r, s / 2.0) * std::abs(fm.coeff) * (1.0 + 1e-12);
            if (std::pow(r, (s + 2.0) / 2.0) * std::abs(sol.u[i].coeff) > rhs) ++violations;
            if (fm.l >= 1) {
                if (std::pow(r, s / 2.0) * std::abs(sol.xi[xi_index].coeff) > rhs) ++violations;
                ++xi_index;
            }
        }
    }
    return {"spectral uniform regularity", violations == 0, std::to_string(violations) + " violations"};
}

CheckResult check_decoupling() {
    const ManufacturedCase c{CaseId::Smooth, 2.0, 1.0};
    double worst = 0.0;
    for (Scheme s : {Scheme::Inflow, Scheme::Stabilized}) {
        ProblemSpec spec;
        spec.scheme = s;
        spec.eps = 1.0;
        spec.sigma = 1e-3;
        spec.field = FieldSpec::variable_alpha(2.0);
        spec.family = Family::Q2;
        const Discretization d = discretize(spec, 8);
        const Source src = manufactured_source(c, spec.field);
        const SchemeSolution block = solve_scheme(build_system(spec, d, src));
        ProblemSpec plain = spec;
        plain.scheme = Scheme::Standard;
        const SchemeSolution single = solve_scheme(build_system(plain, d, src));
        double diff = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < single.u.size(); ++i) {
            diff = std::max(diff, std::abs(block.u[i] - single.u[i]));
            ref = std::max(ref, std::abs(single.u[i]));
        }
        worst = std::max(worst, diff / ref);
    }
    return {"decoupling at eps = 1", worst <= 1e-10, "max relative difference = " + sci(worst)};
}

CheckResult check_determinism() {
    ProblemSpec spec;
    spec.scheme = Scheme::Stabilized;
    spec.eps = 1e-6;
    spec.sigma = 1e-3;
    spec.field = FieldSpec::variable_alpha(2.0);
    spec.family = Family::Q2;
    const Source src = manufactured_source({CaseId::Smooth, 2.0, 1e-6}, spec.field);
    const BlockSystem a = build_system(spec, discretize(spec, 10), src);
    const BlockSystem b = build_system(spec, discretize(spec, 10), src);
    const bool ok = a.matrix.row_ptr() == b.matrix.row_ptr() && a.matrix.col_idx() == b.matrix.col_idx() &&
                    a.matrix.values() == b.matrix.values() && a.rhs == b.rhs &&
                    solve_scheme(a).u == solve_scheme(b).u;
    return {"deterministic build and solve", ok, ""};
}

}  // namespace

std::vector<CheckResult> run_property_checks() {
    const std::vector<std::function<CheckResult()>> checks{
        check_symmetry,        check_partition_of_unity, check_unit_field,
        check_parallel_kernel, check_star_norm,          check_lu_residual,
        check_cond_oracle,     check_csv_roundtrip,      check_parallel_matches_serial,
        check_q2_mass_exact,   check_spectral_regularity, check_decoupling,
        check_determinism,
    };
    std::vector<CheckResult> out;
    for (const auto& c : checks) {
        try {
            out.push_back(c());
        } catch (const std::exception& e) {
            out.push_back({"(exception)", false, e.what()});
        }
    }
    return out;
}

}  // namespace anisofem
