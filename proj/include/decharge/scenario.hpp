#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "decharge/geo.hpp"

namespace decharge {

struct ChargingStation {
  int id = 0;
  GeoPoint location;
  /// Minutes since day start at which each slot becomes free.
  std::vector<Minutes> slot_free_time;
  /// Per slot: false for slots that are down for the whole day.
  std::vector<bool> enabled;
  /// Queue accumulated by the most recent window update.
  Minutes window_queue_time = 0.0;
  /// Historical charging frequency, drives synthetic request placement.
  double weight = 1.0;

  int num_slots() const noexcept { return static_cast<int>(slot_free_time.size()); }
  int enabled_slots() const noexcept;
};

struct ChargingRequest {
  int id = 0;
  Minutes request_time = 0.0;
  Minutes demand = 0.0;
  GeoPoint location;
  Kilometers max_distance = 0.0;
  double beta = 1.0;
  int window = 0;
};

/// One simulated day.
struct Scenario {
  std::vector<ChargingStation> stations;
  std::vector<ChargingRequest> requests;
  int num_windows = 1;
  Minutes window_length = kDayMinutes;
  double speed_kmh = 30.0;
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  std::uint64_t seed = 0;
  int day = 0;
  Projection projection;
  /// Per-day request counts per window from past days; trains the demand predictor.
  std::vector<std::vector<double>> history;
};

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  double mass = 0.0;
};

struct GeneratorConfig {
  std::vector<ChargingStation> stations;
  Projection projection;
  int num_requests = 180;
  double availability_ratio = 1.0;
  std::vector<HistogramBin> time_bins;
  std::vector<HistogramBin> demand_bins;
  Kilometers max_km_lo = 3.0;
  Kilometers max_km_hi = 10.0;
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  int num_windows = 12;
  double speed_kmh = 30.0;
  /// Extra synthetic days whose window counts are stored as history.
  int history_days = 30;
};

struct StationFile {
  std::vector<ChargingStation> stations;
  Projection projection;
};

/// Station CSV: `id,lat,lon,slots,weight`. Stations come back sorted by id
/// with idle slots and zero queue.
StationFile read_station_file(const std::filesystem::path& path);
StationFile parse_station_csv(std::istream& in);
std::vector<ChargingStation> load_stations(const std::filesystem::path& path);

/// Request CSV: `id,start_min,demand_min,lat,lon,max_km`, projected with `projection`.
std::vector<ChargingRequest> parse_request_csv(std::istream& in, const Projection& projection,
                                               Minutes window_length);
std::vector<ChargingRequest> load_requests(const std::filesystem::path& path,
                                           const Projection& projection,
                                           Minutes window_length);

/// Parses the JSON generator config. Relative `stations_file` paths resolve
/// against `base_dir`.
GeneratorConfig parse_generator_config(const std::string& json_text,
                                       const std::filesystem::path& base_dir);
GeneratorConfig load_generator_config(const std::filesystem::path& path);

/// Hourly request-time masses peaking 16:00-20:00.
std::vector<HistogramBin> default_time_bins();
/// Demand masses concentrated below one hour.
std::vector<HistogramBin> default_demand_bins();
/// City-scale synthetic station layout with heavy-tailed weights.
std::vector<ChargingStation> synthetic_stations(int count, int slots, std::uint64_t seed,
                                                Projection* projection = nullptr);

Scenario generate_scenario(const GeneratorConfig& config, std::uint64_t seed);

/// Requests of window t sorted by (request_time, id).
std::vector<ChargingRequest> requests_in_window(const Scenario& scenario, int t);

/// Re-bins the day into `num_windows` windows; 1440 must divide evenly.
void set_num_windows(Scenario& scenario, int num_windows);

/// Re-draws the outage mask: round((1 - ratio) * total slots) slots go down,
/// chosen uniformly with `seed`.
void apply_availability(std::vector<ChargingStation>& stations, double ratio, std::uint64_t seed);

/// Throws ValidationError when any scenario invariant is broken.
void validate(const Scenario& scenario);

int window_of(Minutes request_time, Minutes window_length) noexcept;

}  // namespace decharge
