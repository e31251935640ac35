#include "anisofem/studies.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "anisofem/errors.hpp"

namespace anisofem {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw Error("CSV: bad number '" + s + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

bool same_bits(double a, double b) {
    return (std::isnan(a) && std::isnan(b)) || std::memcmp(&a, &b, sizeof a) == 0;
}

}  // namespace

void write_records_csv(const std::vector<StudyRecord>& records, std::ostream& os) {
    os << kRecordHeader << '\n';
    for (const StudyRecord& r : records) {
        os << r.scheme << ',' << r.n << ',' << fmt(r.h) << ',' << fmt(r.eps) << ','
           << fmt(r.sigma) << ',' << fmt(r.alpha) << ',' << fmt(r.err_L2_abs) << ','
           << fmt(r.err_H1_abs) << ',' << fmt(r.err_L2_rel) << ',' << fmt(r.err_H1_rel) << ','
           << fmt(r.q_or_xi_L2_norm) << ',' << fmt(r.q_or_xi_H1_norm) << ',' << fmt(r.cond1)
           << ',' << to_string(r.solve_status) << ',' << fmt(r.wall_time_seconds) << '\n';
    }
}

std::vector<StudyRecord> read_records_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kRecordHeader) {
        throw Error("CSV: missing or unexpected header");
    }
    std::vector<StudyRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split(line);
        if (f.size() != 15) {
            throw Error("CSV: expected 15 fields, got " + std::to_string(f.size()));
        }
        StudyRecord r;
        r.scheme = f[0];
        r.n = std::stoi(f[1]);
        r.h = parse_double(f[2]);
        r.eps = parse_double(f[3]);
        r.sigma = parse_double(f[4]);
        r.alpha = parse_double(f[5]);
        r.err_L2_abs = parse_double(f[6]);
        r.err_H1_abs = parse_double(f[7]);
        r.err_L2_rel = parse_double(f[8]);
        r.err_H1_rel = parse_double(f[9]);
        r.q_or_xi_L2_norm = parse_double(f[10]);
        r.q_or_xi_H1_norm = parse_double(f[11]);
        r.cond1 = parse_double(f[12]);
        if (f[13] == "OK") {
            r.solve_status = SolveStatus::Ok;
        } else if (f[13] == "SINGULAR") {
            r.solve_status = SolveStatus::Singular;
        } else {
            throw Error("CSV: unknown solve status '" + f[13] + "'");
        }
        r.wall_time_seconds = parse_double(f[14]);
        out.push_back(std::move(r));
    }
    return out;
}

bool same_record(const StudyRecord& a, const StudyRecord& b) {
    return a.scheme == b.scheme && a.n == b.n && same_bits(a.h, b.h) && same_bits(a.eps, b.eps) &&
           same_bits(a.sigma, b.sigma) && same_bits(a.alpha, b.alpha) &&
           same_bits(a.err_L2_abs, b.err_L2_abs) && same_bits(a.err_H1_abs, b.err_H1_abs) &&
           same_bits(a.err_L2_rel, b.err_L2_rel) && same_bits(a.err_H1_rel, b.err_H1_rel) &&
           same_bits(a.q_or_xi_L2_norm, b.q_or_xi_L2_norm) &&
           same_bits(a.q_or_xi_H1_norm, b.q_or_xi_H1_norm) && same_bits(a.cond1, b.cond1) &&
           a.solve_status == b.solve_status && same_bits(a.wall_time_seconds, b.wall_time_seconds);
}

void write_infsup_csv(const std::vector<InfsupRow>& rows, std::ostream& os) {
    os << kInfsupHeader << '\n';
    for (const InfsupRow& r : rows) {
        os << r.n << ',' << fmt(r.coarse_norm) << ',' << fmt(r.fine_norm) << ',' << fmt(r.ratio) << '\n';
    }
}

void write_remark3_csv(const std::vector<Remark3Row>& rows, std::ostream& os) {
    os << kRemark3Header << '\n';
    for (const Remark3Row& r : rows) {
        os << r.n << ',' << r.k << ',' << fmt(r.star_norm) << ',' << fmt(r.parallel_norm) << ','
           << fmt(r.computed_ratio) << ',' << fmt(r.analytic_ratio) << '\n';
    }
}

void write_plot_script(const StudyResult& result, const std::string& csv_path, std::ostream& os) {
    const std::string png = std::filesystem::path(csv_path).replace_extension(".png").string();
    os << "# gnuplot script for study '" << result.name << "' (" << to_string(result.kind) << ")\n"
       << "set datafile separator ','\n"
       << "set terminal pngcairo size 900,650\n"
       << "set output '" << png << "'\n"
       << "set key outside right\n"
       << "set grid\n";
    // Column numbers follow the CSV headers.
    switch (result.kind) {
        case StudyKind::SigmaSweep:
            os << "set logscale xy\nset xlabel 'sigma'\nset ylabel 'relative L2 error'\n"
               << "plot '" << csv_path << "' every ::1 using 5:9 with linespoints title 'err L2 rel'\n";
            break;
        case StudyKind::EpsSweep:
            os << "set logscale xy\nset xlabel 'eps'\nset ylabel 'L2 error'\n"
               << "plot '" << csv_path << "' every ::1 using 4:(strcol(1) eq 'inflow' ? $7 : 1/0) "
               << "with linespoints title 'inflow', \\\n     '" << csv_path
               << "' every ::1 using 4:(strcol(1) eq 'stabilized' ? $7 : 1/0) with linespoints title 'stabilized'\n";
            break;
        case StudyKind::Conditioning:
            os << "set logscale xy\nset xlabel 'h'\nset ylabel 'cond1'\n"
               << "plot '" << csv_path << "' every ::1 using 3:13 with linespoints title 'cond1'\n";
            break;
        case StudyKind::LowRegularity:
            os << "set logscale xy\nset xlabel 'h'\nset ylabel 'norm'\n"
               << "plot '" << csv_path << "' every ::1 using 3:12 with linespoints title 'H1 norm of q/xi', \\\n"
               << "     '" << csv_path << "' every ::1 using 3:11 with linespoints title 'L2 norm of q/xi', \\\n"
               << "     '" << csv_path << "' every ::1 using 3:7 with linespoints title 'u error L2'\n";
            break;
        case StudyKind::InfsupProbe:
            os << "set logscale x\nset xlabel 'n'\nset ylabel 'ratio'\n"
               << "plot '" << csv_path << "' every ::1 using 1:4 with linespoints title 'coarse/fine'\n";
            break;
        case StudyKind::Remark3Check:
            os << "set xlabel 'k'\nset ylabel 'ratio'\n"
               << "plot '" << csv_path << "' every ::1 using 2:5 with points title 'computed', \\\n"
               << "     '" << csv_path << "' every ::1 using 2:6 with lines title 'closed form'\n";
            break;
        case StudyKind::HConvergence:
        case StudyKind::OracleValidation:
            os << "set logscale xy\nset xlabel 'h'\nset ylabel 'error'\n"
               << "plot '" << csv_path << "' every ::1 using 3:9 with linespoints title 'L2 rel', \\\n"
               << "     '" << csv_path << "' every ::1 using 3:10 with linespoints title 'H1 rel'\n";
            break;
    }
}

void emit_result(const StudyResult& result, const std::string& output) {
    const std::filesystem::path path(output);
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create directory '" + path.parent_path().string() + "'");
        }
    }
    std::ofstream csv(path, std::ios::binary);
    if (!csv) {
        throw IoError("cannot write '" + output + "'");
    }
    switch (result.kind) {
        case StudyKind::InfsupProbe: write_infsup_csv(result.infsup, csv); break;
        case StudyKind::Remark3Check: write_remark3_csv(result.remark3, csv); break;
        default: write_records_csv(result.records, csv); break;
    }
    std::ofstream gp(output + ".gp", std::ios::binary);
    if (!gp) {
        throw IoError("cannot write '" + output + ".gp'");
    }
    write_plot_script(result, path.filename().string(), gp);
    if (!csv || !gp) {
        throw IoError("write failed for '" + output + "'");
    }
}

}  // namespace anisofem
