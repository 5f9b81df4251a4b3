#include "decharge/scenario_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "decharge/csv.hpp"
#include "decharge/errors.hpp"

namespace decharge {

namespace {

constexpr std::string_view kMagic = "# decharge scenario v1";

std::vector<std::string> split_on(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find(sep, start);
    const auto end = pos == std::string_view::npos ? text.size() : pos;
    if (end > start) parts.emplace_back(text.substr(start, end - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("format_number failed");
  return std::string(buf.data(), ptr);
}

void write_scenario(std::ostream& out, const Scenario& s) {
  out << kMagic << '\n';
  out << "[scenario]\n";
  out << "seed = " << s.seed << '\n';
  out << "day = " << s.day << '\n';
  out << "num_windows = " << s.num_windows << '\n';
  out << "speed_kmh = " << format_number(s.speed_kmh) << '\n';
  out << "alpha1 = " << format_number(s.alpha1) << '\n';
  out << "alpha2 = " << format_number(s.alpha2) << '\n';
  out << "origin_lat = " << format_number(s.projection.origin().lat) << '\n';
  out << "origin_lon = " << format_number(s.projection.origin().lon) << '\n';

  out << "[stations]\n";
  out << "id,x_km,y_km,slots,weight,enabled\n";
  for (const auto& st : s.stations) {
    std::string mask;
    for (bool e : st.enabled) mask += e ? '1' : '0';
    csv::write_row(out, {std::to_string(st.id), format_number(st.location.x_km),
                         format_number(st.location.y_km), std::to_string(st.num_slots()),
                         format_number(st.weight), mask});
  }

  out << "[requests]\n";
  out << "id,start_min,demand_min,x_km,y_km,max_km\n";
  for (const auto& r : s.requests) {
    csv::write_row(out, {std::to_string(r.id), format_number(r.request_time),
                         format_number(r.demand), format_number(r.location.x_km),
                         format_number(r.location.y_km), format_number(r.max_distance)});
  }

  out << "[history]\n";
  out << "day,counts\n";
  for (std::size_t d = 0; d < s.history.size(); ++d) {
    std::string counts;
    for (std::size_t t = 0; t < s.history[d].size(); ++t) {
      if (t) counts += ';';
      counts += format_number(s.history[d][t]);
    }
    csv::write_row(out, {std::to_string(d), counts});
  }
}

std::string format_scenario(const Scenario& scenario) {
  std::ostringstream out;
  write_scenario(out, scenario);
  return out.str();
}

Scenario read_scenario(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || csv::trim(line) != kMagic) {
    throw ParseError("not a scenario document (missing '" + std::string(kMagic) + "')", 1);
  }
  ++line_no;

  Scenario s;
  std::map<std::string, std::string> keys;
  std::string section;
  bool expect_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = csv::trim(line);
    if (text.empty() || text.front() == '#') continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ParseError("bad section header", line_no);
      section = std::string(text.substr(1, text.size() - 2));
      if (section != "scenario" && section != "stations" && section != "requests" &&
          section != "history") {
        throw ParseError("unknown section '" + section + "'", line_no);
      }
      expect_header = section != "scenario";
      continue;
    }
    if (section == "scenario") {
      const auto eq = text.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no);
      keys[std::string(csv::trim(text.substr(0, eq)))] = std::string(csv::trim(text.substr(eq + 1)));
      continue;
    }
    if (expect_header) {
      expect_header = false;
      continue;
    }
    const auto f = csv::split(text);
    if (section == "stations") {
      if (f.size() != 6) throw ParseError("station rows need 6 fields", line_no);
      ChargingStation st;
      st.id = static_cast<int>(csv::to_int(f[0], line_no, "id"));
      st.location = {csv::to_double(f[1], line_no, "x_km"), csv::to_double(f[2], line_no, "y_km")};
      const auto slots = csv::to_int(f[3], line_no, "slots");
      if (slots < 1) throw ParseError("slots must be >= 1", line_no);
      st.weight = csv::to_double(f[4], line_no, "weight");
      if (f[5].size() != static_cast<std::size_t>(slots)) {
        throw ParseError("enabled mask length must equal slots", line_no);
      }
      st.slot_free_time.assign(static_cast<std::size_t>(slots), 0.0);
      for (char c : f[5]) {
        if (c != '0' && c != '1') throw ParseError("enabled mask must be 0/1", line_no);
        st.enabled.push_back(c == '1');
      }
      s.stations.push_back(std::move(st));
    } else if (section == "requests") {
      if (f.size() != 6) throw ParseError("request rows need 6 fields", line_no);
      ChargingRequest r;
      r.id = static_cast<int>(csv::to_int(f[0], line_no, "id"));
      r.request_time = csv::to_double(f[1], line_no, "start_min");
      r.demand = csv::to_double(f[2], line_no, "demand_min");
      r.location = {csv::to_double(f[3], line_no, "x_km"), csv::to_double(f[4], line_no, "y_km")};
      r.max_distance = csv::to_double(f[5], line_no, "max_km");
      s.requests.push_back(r);
    } else if (section == "history") {
      if (f.size() != 2) throw ParseError("history rows need 2 fields", line_no);
      std::vector<double> counts;
      for (const auto& c : split_on(f[1], ';')) counts.push_back(csv::to_double(c, line_no, "counts"));
      s.history.push_back(std::move(counts));
    } else {
      throw ParseError("content outside any section", line_no);
    }
  }

  auto need = [&](const std::string& key) -> const std::string& {
    auto it = keys.find(key);
    if (it == keys.end()) throw ParseError("missing scenario key '" + key + "'");
    return it->second;
  };
  s.seed = std::stoull(need("seed"));
  s.day = static_cast<int>(csv::to_int(need("day"), 0, "day"));
  const auto windows = static_cast<int>(csv::to_int(need("num_windows"), 0, "num_windows"));
  s.speed_kmh = csv::to_double(need("speed_kmh"), 0, "speed_kmh");
  s.alpha1 = csv::to_double(need("alpha1"), 0, "alpha1");
  s.alpha2 = csv::to_double(need("alpha2"), 0, "alpha2");
  s.projection = Projection(csv::to_double(need("origin_lat"), 0, "origin_lat"),
                            csv::to_double(need("origin_lon"), 0, "origin_lon"));
  set_num_windows(s, windows);
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario '" + path.string() + "'");
  return read_scenario(in);
}

void save_scenario(const std::filesystem::path& path, const Scenario& scenario) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  write_scenario(out, scenario);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace decharge
