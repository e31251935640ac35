#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anisofem/fem_space.hpp"
#include "anisofem/manufactured.hpp"
#include "anisofem/schemes.hpp"
#include "anisofem/spectral.hpp"

namespace anisofem {

enum class StudyKind {
    SigmaSweep,
    HConvergence,
    EpsSweep,
    Conditioning,
    LowRegularity,
    OracleValidation,
    InfsupProbe,
    Remark3Check,
};

StudyKind parse_study_kind(std::string_view name);
const char* to_string(StudyKind kind);
std::vector<StudyKind> all_study_kinds();
/// One-line description for `list-studies`.
const char* describe(StudyKind kind);

/// sigma = value (Fixed) or h^power (Power).
struct SigmaRule {
    enum class Type { Fixed, Power };
    Type type = Type::Power;
    double value = 0.0;
    double power = 3.0;

    [[nodiscard]] double eval(double h) const;
};

/// One (eps, alpha) pair.
struct Regime {
    double eps = 1.0;
    double alpha = 0.0;
};

struct StudyConfig {
    StudyKind kind = StudyKind::HConvergence;
    std::string name;
    std::vector<Scheme> schemes;
    Family family = Family::Q2;
    CaseId case_id = CaseId::Smooth;
    std::vector<int> n;
    std::vector<Regime> regimes;
    /// Used by the sigma sweep and the oracle validation; otherwise `sigma_rule` applies.
    std::vector<double> sigma;
    SigmaRule sigma_rule;
    std::vector<Mode> modes;
    std::vector<int> k_values;
    bool condition = false;
    bool flip_second_row = false;
    /// Record wall-clock times; off gives byte-identical CSVs across runs.
    bool timing = true;
    /// When false, any singular solve makes the run fail.
    bool allow_failures = true;
    std::string output;

    /// Defaults of each study, before config overrides.
    static StudyConfig defaults(StudyKind kind);
};

struct StudyRecord {
    std::string scheme;
    int n = 0;
    double h = 0.0;
    double eps = 0.0;
    double sigma = 0.0;
    double alpha = 0.0;
    double err_L2_abs = 0.0;
    double err_H1_abs = 0.0;
    double err_L2_rel = 0.0;
    double err_H1_rel = 0.0;
    double q_or_xi_L2_norm = 0.0;
    double q_or_xi_H1_norm = 0.0;
    double cond1 = 0.0;
    SolveStatus solve_status = SolveStatus::Ok;
    double wall_time_seconds = 0.0;
};

struct InfsupRow {
    int n = 0;
    double coarse_norm = 0.0;
    double fine_norm = 0.0;
    double ratio = 0.0;
};

struct Remark3Row {
    int n = 0;
    int k = 0;
    double star_norm = 0.0;
    double parallel_norm = 0.0;
    double computed_ratio = 0.0;
    double analytic_ratio = 0.0;
};

struct StudyResult {
    StudyKind kind = StudyKind::HConvergence;
    std::string name;
    std::vector<StudyRecord> records;
    std::vector<InfsupRow> infsup;
    std::vector<Remark3Row> remark3;

    [[nodiscard]] int singular_count() const;
};

/// Spacing of the dof lattice, length / (k n) for order-k elements on n cells.
/// This is the h reported in records and fed to sigma rules.
double lattice_spacing(Family family, int n, double length = 1.0);

/// Solve one manufactured problem on the unit square and measure it.
struct PointSpec {
    Scheme scheme = Scheme::Inflow;
    Family family = Family::Q2;
    CaseId case_id = CaseId::Smooth;
    int n = 10;
    double eps = 1.0;
    double alpha = 0.0;
    double sigma = 0.0;
    bool condition = false;
    bool flip_second_row = false;
    bool timing = true;
};

StudyRecord run_point(const PointSpec& p);

std::vector<StudyRecord> run_sigma_sweep(const StudyConfig& cfg);
std::vector<StudyRecord> run_h_convergence(const StudyConfig& cfg);
std::vector<StudyRecord> run_eps_sweep(const StudyConfig& cfg);
std::vector<StudyRecord> run_conditioning(const StudyConfig& cfg);
std::vector<StudyRecord> run_low_regularity(const StudyConfig& cfg);
/// FEM stabilized solve on (0, pi)^2 with b = e_y against the Fourier series.
/// err_* hold the FEM-vs-series differences of u; q_or_xi_* the L2 and H1
/// differences of xi.
std::vector<StudyRecord> run_oracle_validation(const StudyConfig& cfg);
std::vector<InfsupRow> run_infsup_probe(const StudyConfig& cfg);
std::vector<Remark3Row> run_remark3_check(const StudyConfig& cfg);

double remark3_closed_form(int k);

StudyResult run_study(const StudyConfig& cfg);

/// log2(e_coarse / e_fine).
double observed_order(double e_coarse, double e_fine);
/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// CSV output. Floats carry 17 significant digits, lines end with LF.
inline constexpr const char* kRecordHeader =
    "scheme,n,h,eps,sigma,alpha,err_L2_abs,err_H1_abs,err_L2_rel,err_H1_rel,"
    "q_or_xi_L2_norm,q_or_xi_H1_norm,cond1,solve_status,wall_time_seconds";
inline constexpr const char* kInfsupHeader = "n,coarse_norm,fine_norm,ratio";
inline constexpr const char* kRemark3Header = "n,k,star_norm,parallel_norm,computed_ratio,analytic_ratio";

void write_records_csv(const std::vector<StudyRecord>& records, std::ostream& os);
std::vector<StudyRecord> read_records_csv(std::istream& is);
void write_infsup_csv(const std::vector<InfsupRow>& rows, std::ostream& os);
void write_remark3_csv(const std::vector<Remark3Row>& rows, std::ostream& os);

/// Plain-text gnuplot script reading `csv_path`; never executed here.
void write_plot_script(const StudyResult& result, const std::string& csv_path, std::ostream& os);

/// Writes `<output>` (CSV) and `<output>.gp`; throws IoError.
void emit_result(const StudyResult& result, const std::string& output);

/// Bitwise comparison, NaN equal to NaN.
bool same_record(const StudyRecord& a, const StudyRecord& b);

}  // namespace anisofem
