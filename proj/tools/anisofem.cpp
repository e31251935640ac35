// Command-line front end: run study files, list study kinds, run the property suite.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>

#include "anisofem/checks.hpp"
#include "anisofem/config.hpp"
#include "anisofem/errors.hpp"
#include "anisofem/studies.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSingular = 2;
constexpr int kExitIo = 3;

int run(const std::string& path, bool quiet) {
    using namespace anisofem;
    const std::vector<StudyConfig> studies = load_config(path);
    int exit_code = kExitOk;
    for (const StudyConfig& cfg : studies) {
        const auto t0 = std::chrono::steady_clock::now();
        const StudyResult res = run_study(cfg);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::string out = cfg.output.empty() ? cfg.name + ".csv" : cfg.output;
        emit_result(res, out);
        const int singular = res.singular_count();
        if (!quiet) {
            std::printf("%-24s %-18s %3zu rows  %2d singular  %8.2fs  -> %s\n", cfg.name.c_str(),
                        to_string(cfg.kind),
                        res.records.size() + res.infsup.size() + res.remark3.size(), singular, secs,
                        out.c_str());
        }
        if (singular > 0 && !cfg.allow_failures) {
            std::fprintf(stderr, "study '%s': %d singular solves and allow_failures = false\n",
                         cfg.name.c_str(), singular);
            exit_code = kExitSingular;
        }
    }
    return exit_code;
}

int list_studies() {
    for (anisofem::StudyKind k : anisofem::all_study_kinds()) {
        std::printf("%-18s %s\n", anisofem::to_string(k), anisofem::describe(k));
    }
    return kExitOk;
}

int check() {
    const auto results = anisofem::run_property_checks();
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%s  %-42s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        failed += r.passed ? 0 : 1;
    }
    std::printf("%zu checks, %d failed\n", results.size(), failed);
    return failed == 0 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anisofem: finite elements for strongly anisotropic elliptic problems"};
    app.require_subcommand(1);

    std::string config_path;
    bool quiet = false;
    auto* run_cmd = app.add_subcommand("run", "run every [[study]] of a TOML config file");
    run_cmd->add_option("config", config_path, "study file")->required();
    run_cmd->add_flag("-q,--quiet", quiet, "no per-study summary");
    app.add_subcommand("list-studies", "list the available study kinds");
    auto* check_cmd = app.add_subcommand("check", "run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run_cmd->parsed()) {
            return run(config_path, quiet);
        }
        if (check_cmd->parsed()) {
            return check();
        }
        return list_studies();
    } catch (const anisofem::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const anisofem::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return kExitIo;
    } catch (const anisofem::SingularMatrixError& e) {
        std::fprintf(stderr, "singular system: %s\n", e.what());
        return kExitSingular;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
}
