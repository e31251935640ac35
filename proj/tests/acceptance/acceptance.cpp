// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "anisofem/checks.hpp"
#include "anisofem/spectral.hpp"
#include "anisofem/studies.hpp"

using namespace anisofem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// Published relative errors for h = 0.1 / 2^i, i = 0..4. Columns: (eps, alpha, scheme).
struct TableColumn {
    double eps;
    double alpha;
    Scheme scheme;
    std::vector<double> values;
};

const std::vector<TableColumn> kTableL2 = {
    {1.0, 0.0, Scheme::Inflow, {5.39e-3, 6.97e-4, 8.79e-5, 1.10e-5, 1.38e-6}},
    {1.0, 0.0, Scheme::Stabilized, {5.39e-3, 6.97e-4, 8.79e-5, 1.10e-5, 1.38e-6}},
    {1e-10, 0.0, Scheme::Inflow, {1.19e-3, 1.49e-4, 1.86e-5, 2.33e-6, 2.91e-7}},
    {1e-10, 0.0, Scheme::Stabilized, {1.19e-3, 1.49e-4, 1.86e-5, 2.33e-6, 2.91e-7}},
    {1e-10, 2.0, Scheme::Inflow, {2.81e-3, 3.16e-4, 3.77e-5, 4.57e-6, 5.60e-7}},
    {1e-10, 2.0, Scheme::Stabilized, {2.18e-3, 2.87e-4, 3.53e-5, 4.31e-6, 5.29e-7}},
};

const std::vector<TableColumn> kTableH1 = {
    {1.0, 0.0, Scheme::Inflow, {4.48e-2, 1.13e-2, 2.84e-3, 7.11e-4, 1.78e-4}},
    {1.0, 0.0, Scheme::Stabilized, {4.48e-2, 1.13e-2, 2.84e-3, 7.11e-4, 1.78e-4}},
    {1e-10, 0.0, Scheme::Inflow, {1.46e-2, 3.67e-3, 9.19e-4, 2.30e-4, 5.75e-5}},
    {1e-10, 0.0, Scheme::Stabilized, {1.46e-2, 3.67e-3, 9.19e-4, 2.30e-4, 5.75e-5}},
    {1e-10, 2.0, Scheme::Inflow, {2.44e-2, 6.34e-3, 1.60e-3, 3.99e-4, 9.93e-5}},
    {1e-10, 2.0, Scheme::Stabilized, {2.33e-2, 6.12e-3, 1.54e-3, 3.83e-4, 9.53e-5}},
};

const std::vector<int> kTableN = {5, 10, 20, 40, 80};

std::vector<StudyRecord> select(const std::vector<StudyRecord>& recs, const std::string& scheme, double eps,
                                double alpha) {
    std::vector<StudyRecord> out;
    for (const StudyRecord& r : recs) {
        if (r.scheme == scheme && r.eps == eps && r.alpha == alpha) {
            out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end(), [](const StudyRecord& a, const StudyRecord& b) { return a.n < b.n; });
    return out;
}

Outcome table_check(const std::vector<StudyRecord>& recs, const std::vector<TableColumn>& table, bool l2,
                    double runtime, double limit) {
    Outcome o;
    double worst = 1.0;
    for (const TableColumn& col : table) {
        const auto rows = select(recs, to_string(col.scheme), col.eps, col.alpha);
        if (rows.size() != kTableN.size()) {
            return {false, "missing rows"};
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const double got = l2 ? rows[i].err_L2_rel : rows[i].err_H1_rel;
            const double factor = std::max(got / col.values[i], col.values[i] / got);
            if (!(factor <= 1.5)) {
                o.pass = false;
                std::printf("    off: %s eps=%g alpha=%g h=%g got %.3e published %.3e\n", to_string(col.scheme),
                            col.eps, col.alpha, rows[i].h, got, col.values[i]);
            }
            worst = std::max(worst, std::isfinite(factor) ? factor : 1e300);
        }
    }
    if (runtime > limit) {
        o.pass = false;
    }
    o.detail = "worst factor " + fmt("%.3f", worst) + " (limit 1.5), runtime " + fmt("%.1f", runtime) + " s";
    return o;
}

Outcome criterion3(const std::vector<StudyRecord>& recs) {
    Outcome o;
    double l2_lo = 1e9, l2_hi = -1e9, h1_lo = 1e9, h1_hi = -1e9;
    for (const TableColumn& col : kTableL2) {
        const auto rows = select(recs, to_string(col.scheme), col.eps, col.alpha);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const double p2 = observed_order(rows[i - 1].err_L2_abs, rows[i].err_L2_abs);
            const double p1 = observed_order(rows[i - 1].err_H1_abs, rows[i].err_H1_abs);
            l2_lo = std::min(l2_lo, p2);
            l2_hi = std::max(l2_hi, p2);
            h1_lo = std::min(h1_lo, p1);
            h1_hi = std::max(h1_hi, p1);
        }
    }
    o.pass = l2_lo >= 2.7 && l2_hi <= 3.3 && h1_lo >= 1.8 && h1_hi <= 2.2;
    o.detail = "L2 orders in [" + fmt("%.3f", l2_lo) + ", " + fmt("%.3f", l2_hi) + "] (need [2.7, 3.3]), H1 in [" +
               fmt("%.3f", h1_lo) + ", " + fmt("%.3f", h1_hi) + "] (need [1.8, 2.2])";
    return o;
}

Outcome criterion4() {
    const auto t0 = std::chrono::steady_clock::now();
    StudyConfig cfg = StudyConfig::defaults(StudyKind::EpsSweep);
    cfg.regimes.clear();
    for (double e : {1e-20, 1e-12, 1e-8, 1e-4, 1e-2}) {
        cfg.regimes.push_back({e, 2.0});
    }
    const auto recs = run_eps_sweep(cfg);
    const double runtime = elapsed(t0);
    Outcome o;
    std::string detail;
    for (Scheme s : cfg.schemes) {
        double lo = 1e300, hi = 0.0;
        for (const StudyRecord& r : recs) {
            if (r.scheme == to_string(s)) {
                lo = std::min(lo, r.err_L2_abs);
                hi = std::max(hi, r.err_L2_abs);
                std::printf("    %s eps=%g L2=%.4e\n", r.scheme.c_str(), r.eps, r.err_L2_abs);
            }
        }
        const double variation = hi / lo - 1.0;
        o.pass = o.pass && variation <= 0.10;
        detail += std::string(to_string(s)) + " variation " + fmt("%.1f", 100 * variation) + "%, ";
    }
    o.pass = o.pass && runtime <= 120.0;
    o.detail = detail + "limit 10%, runtime " + fmt("%.1f", runtime) + " s";
    return o;
}

Outcome criterion5() {
    const auto recs = run_conditioning(StudyConfig::defaults(StudyKind::Conditioning));
    Outcome o;
    std::string detail;
    for (Scheme s : {Scheme::Inflow, Scheme::Stabilized}) {
        std::vector<double> h, c;
        for (const StudyRecord& r : recs) {
            if (r.scheme == to_string(s)) {
                h.push_back(r.h);
                c.push_back(r.cond1);
            }
        }
        const double slope = loglog_slope(h, c);
        const bool ok = s == Scheme::Inflow ? (slope >= -4.6 && slope <= -3.4) : (slope >= -5.6 && slope <= -4.4);
        o.pass = o.pass && ok;
        detail += std::string(to_string(s)) + " slope " + fmt("%.3f", slope) + ", ";
    }
    PointSpec p;
    p.n = 40;
    p.alpha = 2.0;
    p.condition = true;
    p.eps = 1e-4;
    const double c4 = run_point(p).cond1;
    p.eps = 1e-12;
    const double c12 = run_point(p).cond1;
    const double ratio = std::max(c4 / c12, c12 / c4);
    o.pass = o.pass && ratio <= 2.0;
    o.detail = detail + "inflow eps ratio " + fmt("%.3f", ratio) + " (limit 2)";
    return o;
}

Outcome criterion6() {
    const auto recs = run_sigma_sweep(StudyConfig::defaults(StudyKind::SigmaSweep));
    auto at = [&](double eps, double alpha, double sigma) {
        for (const StudyRecord& r : recs) {
            if (r.eps == eps && r.alpha == alpha && std::abs(r.sigma / sigma - 1.0) < 1e-9) {
                return r.err_L2_abs;
            }
        }
        return std::nan("");
    };
    double lo = 1e300, hi = 0.0;
    for (const StudyRecord& r : recs) {
        if (r.eps == 1.0) {
            lo = std::min(lo, r.err_L2_abs);
            hi = std::max(hi, r.err_L2_abs);
        }
    }
    const double flat = hi / lo;
    const double plateau = std::abs(at(1e-10, 0.0, 1e-8) / at(1e-10, 0.0, 1e-12) - 1.0);
    const double mid = at(1e-10, 2.0, 1e-6);
    const bool u_shape = mid < at(1e-10, 2.0, 1e-1) && mid < at(1e-10, 2.0, 1e-14);
    Outcome o;
    o.pass = flat <= 1.01 && plateau <= 0.01 && u_shape;
    o.detail = "eps=1 max/min " + fmt("%.6f", flat) + ", plateau deviation " + fmt("%.2e", plateau) +
               ", U-shape " + (u_shape ? "yes" : "no") + " (" + fmt("%.2e", at(1e-10, 2.0, 1e-14)) + " / " +
               fmt("%.2e", mid) + " / " + fmt("%.2e", at(1e-10, 2.0, 1e-1)) + ")";
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::string detail;
    for (Family fam : {Family::Q1, Family::Q2}) {
        StudyConfig cfg = StudyConfig::defaults(StudyKind::OracleValidation);
        cfg.family = fam;
        const auto recs = run_oracle_validation(cfg);
        const double target = polynomial_order(fam) + 1.0;
        double lo = 1e9, hi = -1e9;
        for (const Regime& reg : cfg.regimes) {
            const auto rows = select(recs, to_string(Scheme::Stabilized), reg.eps, 0.0);
            for (std::size_t i = 1; i < rows.size(); ++i) {
                const double p = observed_order(rows[i - 1].err_L2_abs, rows[i].err_L2_abs);
                lo = std::min(lo, p);
                hi = std::max(hi, p);
            }
        }
        o.pass = o.pass && lo >= target - 0.3 && hi <= target + 0.3;
        detail += std::string(to_string(fam)) + " orders [" + fmt("%.3f", lo) + ", " + fmt("%.3f", hi) + "], ";
    }
    // |u|_{s+2} <= |f|_s mode by mode for random finite expansions and parameters.
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> kd(1, 8), ld(0, 8), sd(0, 2);
    int violations = 0;
    for (int sample = 0; sample < 100; ++sample) {
        FourierRhs f;
        const int terms = 1 + sample % 5;
        for (int m = 0; m < terms; ++m) {
            f.modes.push_back({kd(rng), ld(rng), 2.0 * unit(rng) - 1.0});
        }
        double eps = unit(rng), sigma = unit(rng);
        if (eps == 0.0 && sigma == 0.0) {
            sigma = 1e-3;
        }
        const double s = sd(rng);
        const SpectralSolution sol = spectral_solve(f, eps, sigma);
        for (std::size_t i = 0; i < f.modes.size(); ++i) {
            const double lhs = sobolev_seminorm({sol.u[i]}, s + 2.0);
            const double rhs = sobolev_seminorm({f.modes[i]}, s);
            violations += lhs <= rhs * (1.0 + 1e-14) ? 0 : 1;
        }
    }
    o.pass = o.pass && violations == 0;
    o.detail = detail + std::to_string(violations) + " regularity violations in 100 samples";
    return o;
}

Outcome criterion8() {
    const auto rows = run_remark3_check(StudyConfig::defaults(StudyKind::Remark3Check));
    Outcome o;
    double worst = 0.0;
    for (const Remark3Row& r : rows) {
        const double dev = std::abs(r.computed_ratio / remark3_closed_form(r.k) - 1.0);
        worst = std::max(worst, dev);
        std::printf("    k=%d computed %.6f closed form %.6f\n", r.k, r.computed_ratio, remark3_closed_form(r.k));
    }
    o.pass = rows.size() == 4 && worst <= 0.02;
    o.detail = "worst relative deviation " + fmt("%.2e", worst) + " (limit 2%)";
    return o;
}

Outcome criterion9() {
    const auto rows = run_infsup_probe(StudyConfig::defaults(StudyKind::InfsupProbe));
    Outcome o;
    std::map<int, double> ratio;
    std::string detail = "ratios";
    for (const InfsupRow& r : rows) {
        ratio[r.n] = r.ratio;
        o.pass = o.pass && r.ratio > 0.0 && r.ratio <= 1.0 + 1e-8;
        detail += " n=" + std::to_string(r.n) + ":" + fmt("%.4f", r.ratio);
    }
    const bool decreasing = ratio.count(8) && ratio.count(32) && ratio[32] < ratio[8];
    o.pass = o.pass && decreasing;
    o.detail = detail + (decreasing ? ", ratio(32) < ratio(8)" : ", ratio(32) >= ratio(8)");
    return o;
}

Outcome criterion10() {
    const auto recs = run_low_regularity(StudyConfig::defaults(StudyKind::LowRegularity));
    Outcome o;
    std::string detail;
    for (const std::string scheme : {"inflow", "stabilized"}) {
        const auto a2 = select(recs, scheme, 1e-10, 2.0);
        const auto a0 = select(recs, scheme, 1e-10, 0.0);
        bool increasing = a2.size() == 4;
        for (std::size_t i = 1; i < a2.size(); ++i) {
            increasing = increasing && a2[i].q_or_xi_H1_norm > a2[i - 1].q_or_xi_H1_norm;
        }
        double lo = 1e300, hi = 0.0;
        for (const StudyRecord& r : a0) {
            lo = std::min(lo, r.q_or_xi_H1_norm);
            hi = std::max(hi, r.q_or_xi_H1_norm);
        }
        const bool flat = a0.size() == 4 && hi / lo <= 1.1;
        double olo = 1e9, ohi = -1e9;
        for (const auto* rows : {&a0, &a2}) {
            for (std::size_t i = 1; i < rows->size(); ++i) {
                const double p = observed_order((*rows)[i - 1].err_L2_abs, (*rows)[i].err_L2_abs);
                olo = std::min(olo, p);
                ohi = std::max(ohi, p);
            }
        }
        const bool orders = olo >= 1.7 && ohi <= 2.3;
        for (const auto* rows : {&a0, &a2}) {
            for (const StudyRecord& r : *rows) {
                std::printf("    %s alpha=%g n=%d |aux|_H1=%.4e u L2 err=%.4e\n", scheme.c_str(), r.alpha, r.n,
                            r.q_or_xi_H1_norm, r.err_L2_abs);
            }
        }
        o.pass = o.pass && increasing && flat && orders;
        detail += scheme + ": alpha=2 increasing " + (increasing ? "yes" : "no") + ", alpha=0 max/min " +
                  fmt("%.3g", hi / lo) + ", u orders [" + fmt("%.2f", olo) + ", " + fmt("%.2f", ohi) + "]; ";
    }
    o.detail = detail;
    return o;
}

Outcome criterion11() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto results = run_property_checks();
    const double runtime = elapsed(t0);
    Outcome o;
    int failed = 0;
    for (const CheckResult& r : results) {
        if (!r.passed) {
            ++failed;
            std::printf("    failed: %s %s\n", r.name.c_str(), r.detail.c_str());
        }
    }
    o.pass = failed == 0 && runtime <= 60.0;
    o.detail = std::to_string(results.size()) + " checks, " + std::to_string(failed) + " failed, runtime " +
               fmt("%.1f", runtime) + " s";
    return o;
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&failures](int id, const char* what, const Outcome& o) {
        std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, what, o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    };

    const auto t0 = std::chrono::steady_clock::now();
    const auto table = run_h_convergence(StudyConfig::defaults(StudyKind::HConvergence));
    const double table_time = elapsed(t0);
    report(1, "L2 table", table_check(table, kTableL2, true, table_time, 600.0));
    report(2, "H1 table", table_check(table, kTableH1, false, table_time, 600.0));
    report(3, "convergence orders", criterion3(table));
    report(4, "eps robustness", criterion4());
    report(5, "conditioning slopes", criterion5());
    report(6, "sigma sweep shape", criterion6());
    report(7, "spectral oracle", criterion7());
    report(8, "dual norm closed form", criterion8());
    report(9, "inf-sup probe", criterion9());
    report(10, "low regularity", criterion10());
    report(11, "property suite", criterion11());
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
