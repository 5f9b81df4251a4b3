#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace decharge::csv {

/// Splits one line on commas; surrounding whitespace of each field is trimmed.
std::vector<std::string> split(std::string_view line);
std::string join(const std::vector<std::string>& fields);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Strict numeric parsing; throws ParseError tagged with `line`.
double to_double(std::string_view field, std::size_t line, std::string_view column);
long long to_int(std::string_view field, std::size_t line, std::string_view column);

std::string_view trim(std::string_view s) noexcept;

}  // namespace decharge::csv
