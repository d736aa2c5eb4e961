#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fairsoc {

// All quantities are per-unit on the case base MVA.
struct Bus {
    int id = 0;          // external (file) numbering
    double demand = 0.0;
};

struct Line {
    int id = 0;  // stable index into the undamaged case's line list
    int from_bus = 0;
    int to_bus = 0;
    double susceptance = 0.0;
    double limit = 0.0;  // thermal limit; infinity when unlimited
};

struct Generator {
    int id = 0;
    int bus = 0;
    double pmin = 0.0;
    double pmax = 0.0;
};

struct Load {
    int id = 0;   // position in the fairness population
    int bus = 0;
    double max_shed = 0.0;  // equals the bus demand
};

struct NetworkCase {
    std::string name;
    double base_mva = 100.0;
    std::vector<Bus> buses;
    std::vector<Line> lines;
    std::vector<Generator> generators;
    std::vector<Load> loads;

    int bus_index(int bus_id) const;  // -1 when unknown
    /// Stable 64-bit hash of the full case data, hex-encoded.
    std::string fingerprint() const;
};

struct DamageScenario {
    std::vector<int> removed_lines;  // line ids, kept sorted
};

/// Returns the case with the scenario's lines removed; the input is left
/// untouched. Unknown line ids are rejected.
NetworkCase apply_damage(const NetworkCase& base, const DamageScenario& scenario);

struct ScenarioGenConfig {
    int lines_out = 5;
    int target = 200;
    std::uint64_t seed = 0;
    double shed_threshold = 1e-4;   // keep scenarios whose base shed exceeds this
    std::int64_t max_attempts = 0;  // 0 means 200 * target
};

struct ScenarioSet {
    std::vector<DamageScenario> scenarios;
    int lines_out = 5;
    std::uint64_t seed = 0;
    bool exhausted = false;
    std::int64_t attempts = 0;
    std::string diagnostic;
};

/// One scenario per line as comma-separated line ids, preceded by a header
/// recording seed and k. Round-trips bit-exactly through read_scenarios.
void write_scenarios(const ScenarioSet& set, std::ostream& os);
ScenarioSet read_scenarios(std::istream& is);

}  // namespace fairsoc
