#include "fairsoc/matpower.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "fairsoc/conic_program.hpp"  // kInf

namespace fairsoc {

namespace {

struct MatrixRow {
    int line = 0;
    std::vector<double> values;
};

struct RawCase {
    double base_mva = 0.0;
    bool has_base = false;
    std::map<std::string, std::vector<MatrixRow>> matrices;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<double> parse_numbers(std::string_view text, int line_no) {
    std::vector<double> out;
    const char* p = text.data();
    const char* end = text.data() + text.size();
    while (p < end) {
        while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
        if (p >= end) break;
        char* next = nullptr;
        const double v = std::strtod(p, &next);
        if (next == p) {
            throw ParseError(line_no, "expected a number, found '" +
                                          std::string(p, std::min<std::size_t>(8, end - p)) +
                                          "'");
        }
        out.push_back(v);
        p = next;
    }
    return out;
}

RawCase scan(std::string_view text) {
    RawCase raw;
    std::istringstream stream{std::string(text)};
    std::string line;
    int line_no = 0;

    std::string active;      // matrix currently being read
    std::string row_buffer;  // accumulates one matrix row
    int row_line = 0;

    auto flush_row = [&]() {
        const std::string_view body = trim(row_buffer);
        if (!body.empty()) {
            raw.matrices[active].push_back({row_line, parse_numbers(body, row_line)});
        }
        row_buffer.clear();
    };

    while (std::getline(stream, line)) {
        ++line_no;
        if (const auto cut = line.find('%'); cut != std::string::npos) {
            line.erase(cut);
        }
        std::string_view view = trim(line);
        if (view.empty()) continue;

        if (active.empty()) {
            if (view.rfind("mpc.", 0) != 0) continue;
            view.remove_prefix(4);
            std::size_t name_end = 0;
            while (name_end < view.size() &&
                   (std::isalnum(static_cast<unsigned char>(view[name_end])) ||
                    view[name_end] == '_')) {
                ++name_end;
            }
            const std::string key{view.substr(0, name_end)};
            std::string_view rest = trim(view.substr(name_end));
            if (rest.empty() || rest.front() != '=') continue;
            rest = trim(rest.substr(1));
            if (key == "baseMVA") {
                const auto nums = parse_numbers(trim(rest.substr(0, rest.find(';'))), line_no);
                if (nums.size() != 1) throw ParseError(line_no, "baseMVA expects one number");
                raw.base_mva = nums[0];
                raw.has_base = true;
            } else if (key == "bus" || key == "gen" || key == "branch") {
                if (rest.empty() || rest.front() != '[') {
                    throw ParseError(line_no, "expected '[' after mpc." + key);
                }
                active = key;
                row_line = line_no;
                view = trim(rest.substr(1));
                if (view.empty()) continue;
            } else {
                continue;  // other fields (version, gencost, names) are ignored
            }
        }

        if (!active.empty()) {
            std::string_view chunk = view;
            bool closing = false;
            if (const auto close = chunk.find(']'); close != std::string_view::npos) {
                chunk = chunk.substr(0, close);
                closing = true;
            }
            if (row_buffer.empty()) row_line = line_no;
            std::size_t start = 0;
            while (true) {
                const auto semi = chunk.find(';', start);
                if (semi == std::string_view::npos) {
                    row_buffer.append(chunk.substr(start));
                    row_buffer.push_back(' ');
                    break;
                }
                row_buffer.append(chunk.substr(start, semi - start));
                flush_row();
                row_line = line_no;
                start = semi + 1;
            }
            if (closing) {
                flush_row();
                active.clear();
            }
        }
    }
    if (!active.empty()) {
        throw ParseError(line_no, "unterminated mpc." + active + " matrix");
    }
    return raw;
}

}  // namespace

NetworkCase parse_matpower_case(std::string_view text) {
    const RawCase raw = scan(text);
    if (!raw.has_base) throw ParseError(0, "missing mpc.baseMVA");
    if (!(raw.base_mva > 0.0)) throw ParseError(0, "baseMVA must be positive");
    for (const char* section : {"bus", "gen", "branch"}) {
        if (raw.matrices.find(section) == raw.matrices.end()) {
            throw ParseError(0, std::string("missing mpc.") + section + " matrix");
        }
    }

    NetworkCase net;
    net.base_mva = raw.base_mva;

    std::set<int> bus_ids;
    for (const auto& row : raw.matrices.at("bus")) {
        if (row.values.size() < 13) {
            throw ParseError(row.line, "bus row needs 13 columns, got " +
                                           std::to_string(row.values.size()));
        }
        Bus bus;
        bus.id = static_cast<int>(row.values[0]);
        bus.demand = row.values[2] / net.base_mva;
        if (!bus_ids.insert(bus.id).second) {
            throw ParseError(row.line, "duplicate bus id " + std::to_string(bus.id));
        }
        net.buses.push_back(bus);
    }

    for (const auto& row : raw.matrices.at("gen")) {
        if (row.values.size() < 10) {
            throw ParseError(row.line, "gen row needs 10 columns, got " +
                                           std::to_string(row.values.size()));
        }
        if (row.values[7] <= 0.0) continue;  // out of service
        Generator gen;
        gen.id = static_cast<int>(net.generators.size());
        gen.bus = static_cast<int>(row.values[0]);
        gen.pmax = row.values[8] / net.base_mva;
        gen.pmin = row.values[9] / net.base_mva;
        if (bus_ids.find(gen.bus) == bus_ids.end()) {
            throw ParseError(row.line, "generator references unknown bus " +
                                           std::to_string(gen.bus));
        }
        if (gen.pmin > gen.pmax) {
            throw ParseError(row.line, "generator has pmin > pmax");
        }
        net.generators.push_back(gen);
    }

    for (const auto& row : raw.matrices.at("branch")) {
        if (row.values.size() < 11) {
            throw ParseError(row.line, "branch row needs 11 columns, got " +
                                           std::to_string(row.values.size()));
        }
        if (row.values[10] <= 0.0) continue;  // out of service
        Line line;
        line.id = static_cast<int>(net.lines.size());
        line.from_bus = static_cast<int>(row.values[0]);
        line.to_bus = static_cast<int>(row.values[1]);
        const double reactance = row.values[3];
        if (!(reactance > 0.0)) {
            throw ParseError(row.line, "branch reactance must be positive");
        }
        line.susceptance = 1.0 / reactance;
        const double rate = row.values[5];
        line.limit = rate > 0.0 ? rate / net.base_mva : kInf;
        for (int endpoint : {line.from_bus, line.to_bus}) {
            if (bus_ids.find(endpoint) == bus_ids.end()) {
                throw ParseError(row.line,
                                 "branch references unknown bus " + std::to_string(endpoint));
            }
        }
        net.lines.push_back(line);
    }

    for (const auto& bus : net.buses) {
        if (bus.demand > 0.0) {
            Load load;
            load.id = static_cast<int>(net.loads.size());
            load.bus = bus.id;
            load.max_shed = bus.demand;
            net.loads.push_back(load);
        }
    }
    return net;
}

NetworkCase load_case_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open case file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    NetworkCase net = parse_matpower_case(buffer.str());
    net.name = std::filesystem::path(path).stem().string();
    return net;
}

}  // namespace fairsoc
