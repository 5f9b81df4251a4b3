#include "decharge/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "decharge/errors.hpp"

namespace decharge::csv {

std::string_view trim(std::string_view s) noexcept {
  constexpr std::string_view ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.emplace_back(trim(line.substr(start, comma == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  out << join(fields) << '\n';
}

double to_double(std::string_view field, std::size_t line, std::string_view column) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ParseError("invalid number '" + std::string(field) + "' in column " +
                         std::string(column),
                     line);
  }
  return value;
}

long long to_int(std::string_view field, std::size_t line, std::string_view column) {
  long long value = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("invalid integer '" + std::string(field) + "' in column " +
                         std::string(column),
                     line);
  }
  return value;
}

}  // namespace decharge::csv
