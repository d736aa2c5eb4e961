#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "fairsoc/network.hpp"

namespace fairsoc {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

/// Parses the MATPOWER case subset: baseMVA plus the bus, gen, and branch
/// matrices ('%' comments stripped, rows ended by ';'). Susceptance is
/// derived from branch reactance as 1/x, loads are the buses with positive
/// active demand, out-of-service branches and generators are dropped, and
/// everything is converted to per-unit on the case base MVA. rateA <= 0
/// means an unlimited line, following the usual convention.
NetworkCase parse_matpower_case(std::string_view text);

/// Reads and parses a case file; the case name is the file stem.
NetworkCase load_case_file(const std::string& path);

}  // namespace fairsoc
