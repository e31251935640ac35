#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "anisofem/config.hpp"
#include "anisofem/errors.hpp"
#include "anisofem/studies.hpp"

using namespace anisofem;

namespace {

StudyRecord sample_record() {
    StudyRecord r;
    r.scheme = "stabilized";
    r.n = 20;
    r.h = 0.025;
    r.eps = 1e-10;
    r.sigma = std::pow(0.025, 3);
    r.alpha = 2.0;
    r.err_L2_abs = 1.0 / 3.0;
    r.err_H1_abs = std::nextafter(1.0, 2.0);
    r.err_L2_rel = 1e-300;
    r.err_H1_rel = 0.1;
    r.q_or_xi_L2_norm = 7.0;
    r.q_or_xi_H1_norm = 8.0;
    r.cond1 = std::numeric_limits<double>::quiet_NaN();
    r.solve_status = SolveStatus::Singular;
    r.wall_time_seconds = 0.0;
    return r;
}

}  // namespace

TEST(Csv, EmptyListIsHeaderOnly) {
    std::ostringstream os;
    write_records_csv({}, os);
    EXPECT_EQ(os.str(), std::string(kRecordHeader) + "\n");
}

TEST(Csv, OneRecordTwoLines) {
    std::ostringstream os;
    write_records_csv({sample_record()}, os);
    const std::string s = os.str();
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 2);
    EXPECT_NE(s.find("SINGULAR"), std::string::npos);
}

TEST(Csv, RoundTripIsBitExact) {
    StudyRecord a = sample_record();
    StudyRecord b = sample_record();
    b.solve_status = SolveStatus::Ok;
    b.scheme = "inflow";
    b.cond1 = 1.2345678901234567e9;
    std::ostringstream os;
    write_records_csv({a, b}, os);
    std::istringstream is(os.str());
    const auto back = read_records_csv(is);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_TRUE(same_record(back[0], a));
    EXPECT_TRUE(same_record(back[1], b));
}

TEST(Csv, BadHeaderRejected) {
    std::istringstream is("a,b,c\n");
    EXPECT_THROW(read_records_csv(is), Error);
}

TEST(Csv, AuxiliaryTables) {
    std::ostringstream a, b;
    write_infsup_csv({{4, 1.0, 2.0, 0.5}}, a);
    write_remark3_csv({{128, 1, 0.5, 1.0, 0.5, 0.5}}, b);
    EXPECT_EQ(a.str().substr(0, a.str().find('\n')), kInfsupHeader);
    EXPECT_EQ(b.str().substr(0, b.str().find('\n')), kRemark3Header);
}

TEST(Helpers, ObservedOrderAndSlope) {
    EXPECT_DOUBLE_EQ(observed_order(8.0, 1.0), 3.0);
    EXPECT_NEAR(loglog_slope({1, 2, 4, 8}, {1, 0.25, 0.0625, 0.015625}), -2.0, 1e-14);
}

TEST(Helpers, LatticeSpacing) {
    EXPECT_DOUBLE_EQ(lattice_spacing(Family::Q2, 5), 0.1);
    EXPECT_DOUBLE_EQ(lattice_spacing(Family::Q1, 16), 1.0 / 16);
    EXPECT_DOUBLE_EQ(lattice_spacing(Family::P2, 4, std::numbers::pi), std::numbers::pi / 8);
}

TEST(Helpers, SigmaRule) {
    EXPECT_NEAR((SigmaRule{SigmaRule::Type::Power, 0.0, 3.0}.eval(0.1)), 1e-3, 1e-18);
    EXPECT_EQ((SigmaRule{SigmaRule::Type::Fixed, 0.5, 0.0}.eval(0.1)), 0.5);
}

TEST(Remark3, ClosedForm) {
    EXPECT_NEAR(remark3_closed_form(1), 0.860233, 1e-6);
    // (1/sqrt 5) sqrt(1/17 + 16/20)
    EXPECT_NEAR(remark3_closed_form(4), std::sqrt((1.0 / 17.0 + 0.8) / 5.0), 1e-15);
    EXPECT_NEAR(remark3_closed_form(4), 0.414446, 1e-6);
    for (int k = 1; k < 8; ++k) {
        EXPECT_GT(remark3_closed_form(k), remark3_closed_form(k + 1));
    }
}

TEST(Remark3, CoarseMeshClose) {
    StudyConfig cfg = StudyConfig::defaults(StudyKind::Remark3Check);
    cfg.n = {32};
    cfg.k_values = {1, 2};
    const auto rows = run_remark3_check(cfg);
    ASSERT_EQ(rows.size(), 2u);
    for (const auto& r : rows) {
        EXPECT_NEAR(r.computed_ratio / r.analytic_ratio, 1.0, 0.02);
    }
}

TEST(Infsup, RatioInUnitInterval) {
    StudyConfig cfg = StudyConfig::defaults(StudyKind::InfsupProbe);
    cfg.n = {4, 8};
    const auto rows = run_infsup_probe(cfg);
    ASSERT_EQ(rows.size(), 2u);
    for (const auto& r : rows) {
        EXPECT_GT(r.ratio, 0.0);
        EXPECT_LE(r.ratio, 1.0 + 1e-8);
    }
    // Regression baseline for n = 4, frozen from the first run.
    EXPECT_NEAR(rows[0].ratio, 0.827, 5e-3);
}

TEST(Oracle, FemAgreesWithSeries) {
    StudyConfig cfg = StudyConfig::defaults(StudyKind::OracleValidation);
    cfg.n = {64};
    cfg.regimes = {{1e-10, 0.0}};
    cfg.sigma = {1e-6};
    const auto recs = run_oracle_validation(cfg);
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_LT(recs[0].err_L2_abs, 1e-4);
}

TEST(Studies, SigmaSweepRecordsEveryPoint) {
    StudyConfig cfg = StudyConfig::defaults(StudyKind::SigmaSweep);
    cfg.n = {5};
    cfg.sigma = {1e-15, 1e-6, 1.0};
    cfg.regimes = {{1.0, 0.0}};
    cfg.timing = false;
    const auto recs = run_sigma_sweep(cfg);
    ASSERT_EQ(recs.size(), 3u);
    for (const auto& r : recs) {
        EXPECT_TRUE(std::isfinite(r.err_L2_abs));
        EXPECT_NEAR(r.err_L2_rel * (r.err_L2_abs / r.err_L2_rel), r.err_L2_abs, 1e-18);
    }
    EXPECT_NEAR(recs[0].err_L2_abs / recs[2].err_L2_abs, 1.0, 1e-6);
}

TEST(Studies, DeterministicWithoutTiming) {
    StudyConfig cfg = StudyConfig::defaults(StudyKind::HConvergence);
    cfg.n = {3, 6};
    cfg.timing = false;
    const auto a = run_h_convergence(cfg);
    const auto b = run_h_convergence(cfg);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_TRUE(same_record(a[i], b[i]));
    }
    std::ostringstream s1, s2;
    write_records_csv(a, s1);
    write_records_csv(b, s2);
    EXPECT_EQ(s1.str(), s2.str());
}

TEST(Studies, EmitWritesCsvAndScript) {
    const auto dir = std::filesystem::temp_directory_path() / "anisofem_emit_test";
    std::filesystem::create_directories(dir);
    StudyResult res;
    res.kind = StudyKind::EpsSweep;
    res.name = "x";
    res.records = {sample_record()};
    const std::string out = (dir / "x.csv").string();
    emit_result(res, out);
    EXPECT_TRUE(std::filesystem::exists(out));
    EXPECT_TRUE(std::filesystem::exists(out + ".gp"));
    std::ofstream(dir / "blocker") << "file";
    EXPECT_THROW(emit_result(res, (dir / "blocker" / "x.csv").string()), IoError);
    std::filesystem::remove_all(dir);
}

TEST(Studies, KindNames) {
    for (StudyKind k : all_study_kinds()) {
        EXPECT_EQ(parse_study_kind(to_string(k)), k);
        EXPECT_NE(std::string(describe(k)), "");
    }
    EXPECT_THROW(parse_study_kind("nope"), ConfigError);
}

TEST(Config, ParsesStudiesInOrder) {
    const auto cfgs = parse_config(R"(
[[study]]
kind = "h_convergence"
name = "t1"
schemes = ["inflow"]
n = [5, 10]
regimes = [[1.0, 0.0], [1e-10, 2.0]]
sigma_power = 3
timing = false

[[study]]
kind = "eps_sweep"
eps = [1e-4, 1e-8]
alpha = 2.0
sigma_fixed = 1e-6
output = "e.csv"
)");
    ASSERT_EQ(cfgs.size(), 2u);
    EXPECT_EQ(cfgs[0].name, "t1");
    EXPECT_EQ(cfgs[0].schemes, std::vector<Scheme>{Scheme::Inflow});
    EXPECT_EQ(cfgs[0].n, (std::vector<int>{5, 10}));
    ASSERT_EQ(cfgs[0].regimes.size(), 2u);
    EXPECT_EQ(cfgs[0].regimes[1].alpha, 2.0);
    EXPECT_FALSE(cfgs[0].timing);
    EXPECT_EQ(cfgs[1].kind, StudyKind::EpsSweep);
    EXPECT_EQ(cfgs[1].name, "eps_sweep");
    ASSERT_EQ(cfgs[1].regimes.size(), 2u);
    EXPECT_EQ(cfgs[1].regimes[1].eps, 1e-8);
    EXPECT_EQ(cfgs[1].sigma_rule.type, SigmaRule::Type::Fixed);
    EXPECT_EQ(cfgs[1].output, "e.csv");
}

TEST(Config, Errors) {
    EXPECT_THROW(parse_config("[[study]]\nkind = \"h_convergence\"\nbogus = 1\n"), ConfigError);
    EXPECT_THROW(parse_config("[[study]]\nname = \"x\"\n"), ConfigError);
    EXPECT_THROW(parse_config("[[study]]\nkind = \"nope\"\n"), ConfigError);
    EXPECT_THROW(parse_config("[[study]]\nkind = \"h_convergence\"\nn = []\n"), ConfigError);
    EXPECT_THROW(parse_config("[[study]]\nkind = \"h_convergence\"\nn = [0]\n"), ConfigError);
    EXPECT_THROW(parse_config("[[study]]\nkind = \"h_convergence\"\nn = \"x\"\n"), ConfigError);
    EXPECT_THROW(parse_config("this is not toml"), ConfigError);
    EXPECT_THROW(parse_config("other = 1\n"), ConfigError);
    EXPECT_THROW(parse_config("[[study]]\nkind = \"oracle_validation\"\nmodes = [[0, 1, 1.0]]\n"),
                 ConfigError);
    EXPECT_THROW(
        parse_config("[[study]]\nkind = \"h_convergence\"\nregimes = [[1.0, 0.0]]\neps = [1.0]\n"),
        ConfigError);
    EXPECT_THROW(load_config("/nonexistent/anisofem.toml"), IoError);
}
