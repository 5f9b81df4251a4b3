#include "decharge/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <set>
#include <sstream>

#include "decharge/csv.hpp"
#include "decharge/errors.hpp"
#include "decharge/rng.hpp"

namespace decharge {

int ChargingStation::enabled_slots() const noexcept {
  return static_cast<int>(std::count(enabled.begin(), enabled.end(), true));
}

int window_of(Minutes request_time, Minutes window_length) noexcept {
  return static_cast<int>(std::floor(request_time / window_length));
}

namespace {

using ColumnIndex = std::map<std::string, std::size_t>;

ColumnIndex read_header(std::istream& in, const std::vector<std::string>& required,
                        std::size_t& line_no) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    const auto names = csv::split(line);
    ColumnIndex index;
    for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = i;
    for (const auto& name : required) {
      if (!index.count(name)) throw ParseError("missing column '" + name + "'", line_no);
    }
    return index;
  }
  throw ParseError("empty file: header expected");
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return in;
}

void check_histogram(const std::vector<HistogramBin>& bins, const char* name, double lo_limit,
                     double hi_limit) {
  if (bins.empty()) throw ValidationError(std::string(name) + ": no bins");
  double total = 0.0;
  for (const auto& b : bins) {
    if (!(b.lo < b.hi) || b.mass < 0.0 || !std::isfinite(b.mass)) {
      throw ValidationError(std::string(name) + ": bins need lo < hi and mass >= 0");
    }
    if (b.lo < lo_limit || b.hi > hi_limit) {
      throw ValidationError(std::string(name) + ": bin outside [" + std::to_string(lo_limit) +
                            ", " + std::to_string(hi_limit) + "]");
    }
    total += b.mass;
  }
  if (!(total > 0.0)) throw ValidationError(std::string(name) + ": nonpositive total mass");
}

double sample_histogram(const std::vector<HistogramBin>& bins, Rng& rng) {
  std::vector<double> masses;
  masses.reserve(bins.size());
  for (const auto& b : bins) masses.push_back(b.mass);
  const auto& bin = bins[rng.weighted(masses)];
  return rng.uniform(bin.lo, bin.hi);
}

std::vector<HistogramBin> bins_from_json(const nlohmann::json& j, const std::string& key) {
  if (!j.is_array()) throw ValidationError("'" + key + "' must be a list of [lo, hi, mass]");
  std::vector<HistogramBin> bins;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 3) {
      throw ValidationError("'" + key + "' entries must be [lo, hi, mass]");
    }
    bins.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
  }
  return bins;
}

}  // namespace

StationFile parse_station_csv(std::istream& in) {
  std::size_t line_no = 0;
  const auto cols = read_header(in, {"id", "lat", "lon", "slots", "weight"}, line_no);
  std::vector<LatLon> coords;
  std::vector<ChargingStation> stations;
  std::set<int> ids;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != cols.size()) {
      throw ParseError("expected " + std::to_string(cols.size()) + " fields, got " +
                           std::to_string(f.size()),
                       line_no);
    }
    ChargingStation s;
    s.id = static_cast<int>(csv::to_int(f[cols.at("id")], line_no, "id"));
    const double lat = csv::to_double(f[cols.at("lat")], line_no, "lat");
    const double lon = csv::to_double(f[cols.at("lon")], line_no, "lon");
    const auto slots = csv::to_int(f[cols.at("slots")], line_no, "slots");
    s.weight = csv::to_double(f[cols.at("weight")], line_no, "weight");
    if (lat < -90.0 || lat > 90.0 || lon < -180.0 || lon > 180.0) {
      throw ParseError("latitude/longitude out of range", line_no);
    }
    if (slots < 1) throw ParseError("slots must be >= 1", line_no);
    if (s.weight < 0.0) throw ParseError("weight must be >= 0", line_no);
    if (!ids.insert(s.id).second) {
      throw ValidationError("duplicate station id " + std::to_string(s.id) + " (line " +
                            std::to_string(line_no) + ")");
    }
    s.slot_free_time.assign(static_cast<std::size_t>(slots), 0.0);
    s.enabled.assign(static_cast<std::size_t>(slots), true);
    coords.push_back({lat, lon});
    stations.push_back(std::move(s));
  }
  for (const auto& s : stations) {
    if (s.num_slots() != stations.front().num_slots()) {
      throw ValidationError("all stations must have the same number of slots");
    }
  }
  StationFile file;
  file.projection = Projection::about_centroid(coords);
  for (std::size_t i = 0; i < stations.size(); ++i) {
    stations[i].location = file.projection.project(coords[i]);
  }
  std::sort(stations.begin(), stations.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  file.stations = std::move(stations);
  return file;
}

StationFile read_station_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_station_csv(in);
}

std::vector<ChargingStation> load_stations(const std::filesystem::path& path) {
  return read_station_file(path).stations;
}

std::vector<ChargingRequest> parse_request_csv(std::istream& in, const Projection& projection,
                                               Minutes window_length) {
  std::size_t line_no = 0;
  const auto cols =
      read_header(in, {"id", "start_min", "demand_min", "lat", "lon", "max_km"}, line_no);
  std::vector<ChargingRequest> requests;
  std::set<int> ids;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != cols.size()) throw ParseError("wrong field count", line_no);
    ChargingRequest r;
    r.id = static_cast<int>(csv::to_int(f[cols.at("id")], line_no, "id"));
    r.request_time = csv::to_double(f[cols.at("start_min")], line_no, "start_min");
    r.demand = csv::to_double(f[cols.at("demand_min")], line_no, "demand_min");
    const double lat = csv::to_double(f[cols.at("lat")], line_no, "lat");
    const double lon = csv::to_double(f[cols.at("lon")], line_no, "lon");
    r.max_distance = csv::to_double(f[cols.at("max_km")], line_no, "max_km");
    if (r.request_time < 0.0 || r.request_time >= kDayMinutes) {
      throw ParseError("start_min must be in [0, 1440)", line_no);
    }
    if (r.demand <= 0.0) throw ParseError("demand_min must be > 0", line_no);
    if (r.max_distance <= 0.0) throw ParseError("max_km must be > 0", line_no);
    if (!ids.insert(r.id).second) {
      throw ValidationError("duplicate request id " + std::to_string(r.id));
    }
    r.location = projection.project({lat, lon});
    r.window = window_of(r.request_time, window_length);
    requests.push_back(r);
  }
  return requests;
}

std::vector<ChargingRequest> load_requests(const std::filesystem::path& path,
                                           const Projection& projection,
                                           Minutes window_length) {
  auto in = open_input(path);
  return parse_request_csv(in, projection, window_length);
}

std::vector<HistogramBin> default_time_bins() {
  // Relative request frequency per hour of day.
  static constexpr double kHourly[24] = {1.0, 0.6, 0.4, 0.3, 0.3, 0.5, 1.2, 2.5,
                                         3.5, 3.8, 3.6, 3.4, 3.5, 3.6, 3.8, 4.5,
                                         6.5, 7.5, 7.8, 7.0, 5.0, 3.5, 2.5, 1.6};
  std::vector<HistogramBin> bins;
  for (int h = 0; h < 24; ++h) bins.push_back({h * 60.0, (h + 1) * 60.0, kHourly[h]});
  return bins;
}

std::vector<HistogramBin> default_demand_bins() {
  return {{10.0, 20.0, 3.0},  {20.0, 30.0, 4.0},  {30.0, 45.0, 5.0},  {45.0, 60.0, 4.0},
          {60.0, 90.0, 2.5},  {90.0, 120.0, 1.2}, {120.0, 180.0, 0.6}, {180.0, 240.0, 0.2}};
}

std::vector<ChargingStation> synthetic_stations(int count, int slots, std::uint64_t seed,
                                                Projection* projection) {
  if (count < 0 || slots < 1) throw ValidationError("synthetic stations: bad count or slots");
  Rng rng(derive_seed(seed, SeedTag::kStations));
  std::vector<LatLon> coords;
  std::vector<double> weights;
  constexpr double kLat0 = 48.8566;
  constexpr double kLon0 = 2.3522;
  for (int i = 0; i < count; ++i) {
    const double u = rng.uniform(-1.0, 1.0);
    const double v = rng.uniform(-1.0, 1.0);
    coords.push_back({kLat0 + 0.045 * v, kLon0 + 0.07 * u});
    // Heavy-tailed popularity with more activity in the west.
    const double pareto = std::pow(1.0 - rng.uniform(), -1.0 / 1.2);
    weights.push_back(std::min(pareto, 40.0) * (1.5 - 0.5 * u));
  }
  const auto proj = Projection::about_centroid(coords);
  if (projection) *projection = proj;
  std::vector<ChargingStation> stations(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    auto& s = stations[static_cast<std::size_t>(i)];
    s.id = i;
    s.location = proj.project(coords[static_cast<std::size_t>(i)]);
    s.weight = weights[static_cast<std::size_t>(i)];
    s.slot_free_time.assign(static_cast<std::size_t>(slots), 0.0);
    s.enabled.assign(static_cast<std::size_t>(slots), true);
  }
  return stations;
}

GeneratorConfig parse_generator_config(const std::string& json_text,
                                       const std::filesystem::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("generator config: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("generator config must be an object");
  static const std::set<std::string> known = {
      "stations_file", "num_stations",  "slots_per_station", "station_seed",
      "num_requests",  "availability_ratio", "time_hist_bins", "demand_hist_bins",
      "max_km_range",  "alpha1",        "alpha2",            "num_windows",
      "speed_kmh",     "history_days"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ValidationError("generator config: unknown key '" + key + "'");
  }
  GeneratorConfig c;
  try {
    if (j.contains("stations_file")) {
      std::filesystem::path p = j["stations_file"].get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      auto file = read_station_file(p);
      c.stations = std::move(file.stations);
      c.projection = file.projection;
    } else if (j.contains("num_stations")) {
      c.stations = synthetic_stations(j["num_stations"].get<int>(),
                                      j.value("slots_per_station", 3),
                                      j.value("station_seed", std::uint64_t{2024}), &c.projection);
    } else {
      throw ValidationError("generator config: missing key 'stations_file'");
    }
    c.num_requests = j.value("num_requests", c.num_requests);
    c.availability_ratio = j.value("availability_ratio", c.availability_ratio);
    c.time_bins = j.contains("time_hist_bins") ? bins_from_json(j["time_hist_bins"], "time_hist_bins")
                                               : default_time_bins();
    c.demand_bins = j.contains("demand_hist_bins")
                        ? bins_from_json(j["demand_hist_bins"], "demand_hist_bins")
                        : default_demand_bins();
    if (j.contains("max_km_range")) {
      const auto& r = j["max_km_range"];
      if (!r.is_array() || r.size() != 2) throw ValidationError("'max_km_range' must be [lo, hi]");
      c.max_km_lo = r[0].get<double>();
      c.max_km_hi = r[1].get<double>();
    }
    c.alpha1 = j.value("alpha1", c.alpha1);
    c.alpha2 = j.value("alpha2", c.alpha2);
    c.num_windows = j.value("num_windows", c.num_windows);
    c.speed_kmh = j.value("speed_kmh", c.speed_kmh);
    c.history_days = j.value("history_days", c.history_days);
  } catch (const nlohmann::json::type_error& e) {
    throw ValidationError(std::string("generator config: ") + e.what());
  }
  return c;
}

GeneratorConfig load_generator_config(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_generator_config(buffer.str(), path.parent_path());
}

void apply_availability(std::vector<ChargingStation>& stations, double ratio,
                        std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    throw ValidationError("availability ratio must be in [0, 1]");
  }
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t m = 0; m < stations.size(); ++m) {
    auto& s = stations[m];
    s.enabled.assign(s.slot_free_time.size(), true);
    for (std::size_t j = 0; j < s.slot_free_time.size(); ++j) slots.emplace_back(m, j);
  }
  const auto down = static_cast<std::size_t>(
      std::llround((1.0 - ratio) * static_cast<double>(slots.size())));
  Rng rng(seed);
  rng.shuffle(std::span(slots));
  for (std::size_t i = 0; i < down && i < slots.size(); ++i) {
    stations[slots[i].first].enabled[slots[i].second] = false;
  }
}

Scenario generate_scenario(const GeneratorConfig& config, std::uint64_t seed) {
  check_histogram(config.time_bins, "time_hist_bins", 0.0, kDayMinutes);
  check_histogram(config.demand_bins, "demand_hist_bins", 0.0,
                  std::numeric_limits<double>::max());
  if (config.demand_bins.front().lo < 0.0) throw ValidationError("demand bins must be >= 0");
  if (config.num_requests < 0) throw ValidationError("num_requests must be >= 0");
  if (!(config.max_km_lo > 0.0 && config.max_km_lo <= config.max_km_hi)) {
    throw ValidationError("max_km_range must satisfy 0 < lo <= hi");
  }
  if (config.alpha1 < 0.0 || config.alpha1 > 1.0 || config.alpha2 < 0.0 ||
      config.alpha2 > 1.0) {
    throw ValidationError("alpha1 and alpha2 must be in [0, 1]");
  }
  if (!(config.speed_kmh > 0.0)) throw ValidationError("speed_kmh must be > 0");

  Scenario s;
  s.seed = seed;
  s.speed_kmh = config.speed_kmh;
  s.alpha1 = config.alpha1;
  s.alpha2 = config.alpha2;
  s.projection = config.projection;
  s.stations = config.stations;
  for (auto& st : s.stations) {
    std::fill(st.slot_free_time.begin(), st.slot_free_time.end(), 0.0);
    st.window_queue_time = 0.0;
  }
  apply_availability(s.stations, config.availability_ratio,
                     derive_seed(seed, SeedTag::kOutage));

  std::vector<double> weights;
  for (const auto& st : s.stations) weights.push_back(st.weight);
  if (config.num_requests > 0 &&
      !(std::accumulate(weights.begin(), weights.end(), 0.0) > 0.0)) {
    throw ValidationError("station weights have no positive mass");
  }

  Rng rng(derive_seed(seed, SeedTag::kRequests));
  for (int i = 0; i < config.num_requests; ++i) {
    ChargingRequest r;
    const auto m = rng.weighted(weights);
    r.location = s.stations[m].location;
    r.request_time = sample_histogram(config.time_bins, rng);
    r.demand = sample_histogram(config.demand_bins, rng);
    if (!(r.demand > 0.0)) r.demand = config.demand_bins.front().hi;
    r.max_distance = config.max_km_lo == config.max_km_hi
                         ? config.max_km_lo
                         : rng.uniform(config.max_km_lo, config.max_km_hi);
    s.requests.push_back(r);
  }
  std::stable_sort(s.requests.begin(), s.requests.end(),
                   [](const auto& a, const auto& b) { return a.request_time < b.request_time; });
  for (std::size_t i = 0; i < s.requests.size(); ++i) s.requests[i].id = static_cast<int>(i);

  set_num_windows(s, config.num_windows);

  for (int d = 0; d < config.history_days; ++d) {
    Rng h(derive_seed(seed, SeedTag::kHistory, static_cast<std::uint64_t>(d)));
    const auto total = static_cast<int>(
        std::llround(config.num_requests * h.uniform(0.8, 1.2)));
    std::vector<double> counts(static_cast<std::size_t>(s.num_windows), 0.0);
    for (int i = 0; i < total; ++i) {
      const double t = sample_histogram(config.time_bins, h);
      counts[static_cast<std::size_t>(window_of(t, s.window_length))] += 1.0;
    }
    s.history.push_back(std::move(counts));
  }
  return s;
}

std::vector<ChargingRequest> requests_in_window(const Scenario& scenario, int t) {
  if (t < 0 || t >= scenario.num_windows) {
    throw std::out_of_range("window " + std::to_string(t) + " outside [0, " +
                            std::to_string(scenario.num_windows) + ")");
  }
  std::vector<ChargingRequest> out;
  for (const auto& r : scenario.requests) {
    if (r.window == t) out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.request_time != b.request_time ? a.request_time < b.request_time : a.id < b.id;
  });
  return out;
}

void set_num_windows(Scenario& scenario, int num_windows) {
  if (num_windows < 1 || 1440 % num_windows != 0) {
    throw ValidationError("number of windows must divide 1440, got " +
                          std::to_string(num_windows));
  }
  scenario.num_windows = num_windows;
  scenario.window_length = kDayMinutes / num_windows;
  for (auto& r : scenario.requests) r.window = window_of(r.request_time, scenario.window_length);

  // History counts are spread uniformly inside their old bins and re-summed.
  for (auto& day : scenario.history) {
    if (day.empty() || day.size() == static_cast<std::size_t>(num_windows)) continue;
    const double old_len = kDayMinutes / static_cast<double>(day.size());
    std::vector<double> counts(static_cast<std::size_t>(num_windows), 0.0);
    for (std::size_t i = 0; i < day.size(); ++i) {
      const double lo = static_cast<double>(i) * old_len;
      const double hi = lo + old_len;
      for (std::size_t t = 0; t < counts.size(); ++t) {
        const double a = std::max(lo, static_cast<double>(t) * scenario.window_length);
        const double b = std::min(hi, static_cast<double>(t + 1) * scenario.window_length);
        if (b > a) counts[t] += day[i] * (b - a) / old_len;
      }
    }
    day = std::move(counts);
  }
}

void validate(const Scenario& s) {
  if (s.num_windows < 1) throw ValidationError("num_windows must be >= 1");
  if (s.window_length * s.num_windows != kDayMinutes) {
    throw ValidationError("num_windows * window_length must equal 1440");
  }
  if (!(s.speed_kmh > 0.0)) throw ValidationError("speed_kmh must be > 0");
  if (s.alpha1 < 0.0 || s.alpha1 > 1.0 || s.alpha2 < 0.0 || s.alpha2 > 1.0) {
    throw ValidationError("alpha1 and alpha2 must be in [0, 1]");
  }
  std::set<int> station_ids;
  for (const auto& st : s.stations) {
    if (!station_ids.insert(st.id).second) {
      throw ValidationError("duplicate station id " + std::to_string(st.id));
    }
    if (st.num_slots() < 1) throw ValidationError("station without slots");
    if (st.num_slots() != s.stations.front().num_slots()) {
      throw ValidationError("all stations must have the same number of slots");
    }
    if (st.enabled.size() != st.slot_free_time.size()) {
      throw ValidationError("slot mask size mismatch");
    }
    for (double t : st.slot_free_time) {
      if (!(t >= 0.0)) throw ValidationError("negative slot free time");
    }
    if (!(st.window_queue_time >= 0.0)) throw ValidationError("negative window queue time");
    if (!(st.weight >= 0.0)) throw ValidationError("negative station weight");
  }
  std::set<int> request_ids;
  for (const auto& r : s.requests) {
    if (!request_ids.insert(r.id).second) {
      throw ValidationError("duplicate request id " + std::to_string(r.id));
    }
    if (!(r.request_time >= 0.0 && r.request_time < kDayMinutes)) {
      throw ValidationError("request time outside the day");
    }
    if (!(r.demand > 0.0)) throw ValidationError("request demand must be > 0");
    if (!(r.max_distance > 0.0)) throw ValidationError("request max distance must be > 0");
    if (!(r.beta >= 0.0 && r.beta <= 1.0)) throw ValidationError("beta must be in [0, 1]");
    if (r.window != window_of(r.request_time, s.window_length) || r.window >= s.num_windows) {
      throw ValidationError("request window inconsistent with request time");
    }
  }
}

}  // namespace decharge
