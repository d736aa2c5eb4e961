#include "fairsoc/network.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>

namespace fairsoc {

int NetworkCase::bus_index(int bus_id) const {
    for (std::size_t i = 0; i < buses.size(); ++i) {
        if (buses[i].id == bus_id) return static_cast<int>(i);
    }
    return -1;
}

namespace {

void fnv_mix(std::uint64_t& h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
}

void fnv_double(std::uint64_t& h, double v) { fnv_mix(h, &v, sizeof(v)); }
void fnv_int(std::uint64_t& h, int v) { fnv_mix(h, &v, sizeof(v)); }

}  // namespace

std::string NetworkCase::fingerprint() const {
    std::uint64_t h = 14695981039346656037ULL;
    fnv_double(h, base_mva);
    for (const auto& b : buses) {
        fnv_int(h, b.id);
        fnv_double(h, b.demand);
    }
    for (const auto& l : lines) {
        fnv_int(h, l.id);
        fnv_int(h, l.from_bus);
        fnv_int(h, l.to_bus);
        fnv_double(h, l.susceptance);
        fnv_double(h, l.limit);
    }
    for (const auto& g : generators) {
        fnv_int(h, g.bus);
        fnv_double(h, g.pmin);
        fnv_double(h, g.pmax);
    }
    for (const auto& d : loads) {
        fnv_int(h, d.bus);
        fnv_double(h, d.max_shed);
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

NetworkCase apply_damage(const NetworkCase& base, const DamageScenario& scenario) {
    std::set<int> removed(scenario.removed_lines.begin(), scenario.removed_lines.end());
    for (int id : removed) {
        const bool known = std::any_of(base.lines.begin(), base.lines.end(),
                                       [id](const Line& l) { return l.id == id; });
        if (!known) {
            throw std::invalid_argument("apply_damage: unknown line id " + std::to_string(id));
        }
    }
    NetworkCase damaged = base;
    std::erase_if(damaged.lines, [&](const Line& l) { return removed.count(l.id) > 0; });
    return damaged;
}

void write_scenarios(const ScenarioSet& set, std::ostream& os) {
    os << "# scenarios k=" << set.lines_out << " seed=" << set.seed << "\n";
    for (const auto& sc : set.scenarios) {
        for (std::size_t i = 0; i < sc.removed_lines.size(); ++i) {
            if (i > 0) os << ",";
            os << sc.removed_lines[i];
        }
        os << "\n";
    }
}

ScenarioSet read_scenarios(std::istream& is) {
    ScenarioSet set;
    std::string line;
    if (!std::getline(is, line) || line.rfind("# scenarios", 0) != 0) {
        throw std::runtime_error("scenario file: missing header");
    }
    const auto kpos = line.find("k=");
    const auto spos = line.find("seed=");
    if (kpos == std::string::npos || spos == std::string::npos) {
        throw std::runtime_error("scenario file: malformed header");
    }
    set.lines_out = std::stoi(line.substr(kpos + 2));
    set.seed = std::stoull(line.substr(spos + 5));
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        DamageScenario sc;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        while (p < end) {
            int v = 0;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc()) {
                throw std::runtime_error("scenario file: bad line id in '" + line + "'");
            }
            sc.removed_lines.push_back(v);
            p = next;
            if (p < end && *p == ',') ++p;
        }
        set.scenarios.push_back(std::move(sc));
    }
    return set;
}

}  // namespace fairsoc
