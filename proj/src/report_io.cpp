#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairsoc/sweep.hpp"

namespace fairsoc {

namespace {

constexpr const char* kHeader = "scenario_id,kind,param,status,z,jain,eta_r_pct,wall_ms";

const char* kind_name(SweepKind kind) { return kind == SweepKind::Eps ? "eps" : "p"; }

RowStatus status_from(const std::string& s) {
    if (s == "Optimal") return RowStatus::Optimal;
    if (s == "Infeasible") return RowStatus::Infeasible;
    if (s == "Unknown") return RowStatus::Unknown;
    throw std::runtime_error("report csv: unknown status '" + s + "'");
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_optional(const std::string& field) {
    if (field.empty()) return std::nullopt;
    return std::stod(field);
}

}  // namespace

std::string format_sig9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void export_csv(const SweepReport& report, std::ostream& os, bool include_timing) {
    os << "# sweep kind=" << kind_name(report.kind) << " case=" << report.case_fingerprint
       << " seed=" << report.seed << " scenarios=" << report.scenario_count << "\n";
    os << "# grid=";
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
        if (i > 0) os << ",";
        os << format_sig9(report.grid[i]);
    }
    os << "\n" << kHeader << "\n";
    for (const auto& row : report.rows) {
        os << row.scenario_id << "," << kind_name(row.kind) << "," << format_sig9(row.param)
           << "," << to_string(row.status) << ",";
        if (row.total_shed) os << format_sig9(*row.total_shed);
        os << ",";
        if (row.jain) os << format_sig9(*row.jain);
        os << ",";
        if (row.efficiency_loss_pct) os << format_sig9(*row.efficiency_loss_pct);
        os << "," << format_sig9(include_timing ? row.wall_ms : 0.0) << "\n";
    }
}

void export_csv_file(const SweepReport& report, const std::string& path, bool include_timing) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open report file for writing: " + path);
    }
    export_csv(report, out, include_timing);
    if (!out.good()) {
        throw std::runtime_error("write failure on report file: " + path);
    }
}

SweepReport import_csv(std::istream& is) {
    SweepReport report;
    std::string line;
    if (!std::getline(is, line) || line.rfind("# sweep ", 0) != 0) {
        throw std::runtime_error("report csv: missing sweep header");
    }
    {
        std::istringstream hs(line.substr(8));
        std::string token;
        while (hs >> token) {
            const auto eq = token.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = token.substr(0, eq);
            const std::string value = token.substr(eq + 1);
            if (key == "kind") {
                report.kind = value == "eps" ? SweepKind::Eps : SweepKind::PNorm;
            } else if (key == "case") {
                report.case_fingerprint = value;
            } else if (key == "seed") {
                report.seed = std::stoull(value);
            } else if (key == "scenarios") {
                report.scenario_count = std::stoi(value);
            }
        }
    }
    if (!std::getline(is, line) || line.rfind("# grid=", 0) != 0) {
        throw std::runtime_error("report csv: missing grid header");
    }
    for (const auto& field : split(line.substr(7), ',')) {
        if (!field.empty()) report.grid.push_back(std::stod(field));
    }
    if (!std::getline(is, line) || line != kHeader) {
        throw std::runtime_error("report csv: unexpected column header");
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 8) {
            throw std::runtime_error("report csv: expected 8 fields, got " +
                                     std::to_string(fields.size()));
        }
        SweepRow row;
        row.scenario_id = std::stoi(fields[0]);
        row.kind = fields[1] == "eps" ? SweepKind::Eps : SweepKind::PNorm;
        row.param = std::stod(fields[2]);
        row.status = status_from(fields[3]);
        row.total_shed = parse_optional(fields[4]);
        row.jain = parse_optional(fields[5]);
        row.efficiency_loss_pct = parse_optional(fields[6]);
        row.wall_ms = std::stod(fields[7]);
        report.rows.push_back(row);
    }
    return report;
}

SweepReport import_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open report file: " + path);
    }
    return import_csv(in);
}

}  // namespace fairsoc
