#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "decharge/scenario.hpp"

namespace decharge {

// Scenario document: `[scenario]` key = value lines followed by embedded CSV
// blocks `[stations]`, `[requests]` and `[history]`. Numbers are written in
// shortest round-trip form, so write -> read -> write is byte-stable.

void write_scenario(std::ostream& out, const Scenario& scenario);
std::string format_scenario(const Scenario& scenario);
Scenario read_scenario(std::istream& in);
Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const std::filesystem::path& path, const Scenario& scenario);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

}  // namespace decharge
