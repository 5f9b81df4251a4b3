#include "decharge/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "decharge/baselines.hpp"
#include "decharge/errors.hpp"
#include "decharge/objectives.hpp"
#include "decharge/options.hpp"
#include "decharge/rng.hpp"
#include "decharge/scenario_io.hpp"
#include "decharge/station_sim.hpp"

namespace decharge {

namespace {

constexpr std::string_view kMethodNames[] = {"decharge", "greedy", "doc", "sic", "mgm", "cohda"};

void check_config(const RunConfig& c) {
  if (c.beta && !(*c.beta >= 0.0 && *c.beta <= 1.0)) throw ValidationError("beta must be in [0, 1]");
  if (!(c.gamma > 0.0)) throw ValidationError("gamma must be > 0");
  if (c.lags < 1) throw ValidationError("lags must be >= 1");
  if (!(c.selfish_pct >= 0.0 && c.selfish_pct <= 100.0)) {
    throw ValidationError("selfish percentage must be in [0, 100]");
  }
  if (c.repetitions < 1) throw ValidationError("repetitions must be >= 1");
  if (c.iterations < 0) throw ValidationError("iterations must be >= 0");
  if (c.slots_ratio && !(*c.slots_ratio >= 0.0 && *c.slots_ratio <= 1.0)) {
    throw ValidationError("slots ratio must be in [0, 1]");
  }
  if (!(c.charge_power_kw > 0.0)) throw ValidationError("charge power must be > 0");
}

bool can_fit(const std::vector<std::vector<double>>& history, int lags) {
  if (history.size() < 2) return false;
  return std::all_of(history.begin(), history.end(), [&](const auto& day) {
    return day.size() >= static_cast<std::size_t>(lags) + 1;
  });
}

std::uint64_t fnv1a(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::string_view method_name(Method method) noexcept {
  return kMethodNames[static_cast<std::size_t>(method)];
}

Method parse_method(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kMethodNames); ++i) {
    if (kMethodNames[i] == name) return static_cast<Method>(i);
  }
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected decharge, greedy, doc, sic, mgm or cohda)");
}

std::uint64_t run_seed(const Scenario& scenario, const RunConfig& config) noexcept {
  return config.seed.value_or(scenario.seed);
}

Scenario prepare_scenario(const Scenario& scenario, const RunConfig& config) {
  check_config(config);
  Scenario s = scenario;
  if (config.method == Method::kSic) {
    set_num_windows(s, 1);
  } else if (config.windows) {
    set_num_windows(s, *config.windows);
  }
  if (config.slots_ratio) {
    apply_availability(s.stations, *config.slots_ratio,
                       derive_seed(run_seed(scenario, config), SeedTag::kOutage));
  }
  validate(s);
  return s;
}

RunResult run_scenario(const Scenario& scenario, const RunConfig& config) {
  Scenario s = prepare_scenario(scenario, config);
  const std::uint64_t seed = run_seed(scenario, config);
  const Method method = config.method;
  const bool uses_beta = method != Method::kGreedy;

  std::optional<DemandPredictor> predictor = config.predictor;
  if (!predictor && can_fit(s.history, config.lags)) predictor = fit_predictor(s.history, config.lags);

  // Requests that ignore the recommendation, drawn once for the whole day.
  std::vector<char> selfish(s.requests.size(), 0);
  {
    std::vector<std::size_t> idx(s.requests.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(derive_seed(seed, SeedTag::kSelfish));
    rng.shuffle(std::span(idx));
    const auto count = static_cast<std::size_t>(
        std::llround(config.selfish_pct / 100.0 * static_cast<double>(idx.size())));
    for (std::size_t i = 0; i < count && i < idx.size(); ++i) selfish[idx[i]] = 1;
  }
  std::vector<std::size_t> index_of_id;
  {
    int max_id = -1;
    for (const auto& r : s.requests) max_id = std::max(max_id, r.id);
    index_of_id.assign(static_cast<std::size_t>(max_id + 1), 0);
    for (std::size_t i = 0; i < s.requests.size(); ++i) {
      index_of_id[static_cast<std::size_t>(s.requests[i].id)] = i;
    }
  }

  RunResult result;
  result.station_of_request.assign(s.requests.size(), -1);
  result.beta_of_request.assign(s.requests.size(), 1.0);
  std::vector<WindowOutcome> outcomes;
  std::vector<double> window_counts;
  const double alpha2 = method == Method::kDoc ? 0.0 : s.alpha2;
  const EposConfig epos{config.iterations, config.repetitions, config.strategy};

  for (int t = 0; t < s.num_windows; ++t) {
    const auto window = requests_in_window(s, t);
    window_counts.push_back(static_cast<double>(window.size()));
    const std::uint64_t window_seed = derive_seed(seed, SeedTag::kWindow, static_cast<std::uint64_t>(t));

    double growth = 0.0;
    if (predictor && !window.empty()) {
      growth = demand_growth(static_cast<double>(window.size()), predictor->predict(window_counts));
    }

    std::vector<ChargingRequest> agents;
    std::vector<std::vector<ChargingOption>> options;
    std::vector<double> betas;
    WindowOutcome outcome;
    outcome.window = t;
    for (const auto& r : window) {
      auto opts = generate_options(r, s.stations, s.alpha1, alpha2, config.max_options);
      if (opts.empty()) {
        ++outcome.unserved;
        continue;
      }
      const std::size_t idx = index_of_id[static_cast<std::size_t>(r.id)];
      double beta = 1.0;
      if (uses_beta && !selfish[idx]) {
        beta = config.beta ? *config.beta
                           : recommend_beta(r, s.stations, static_cast<int>(window.size()), growth,
                                            config.gamma);
      }
      result.beta_of_request[idx] = beta;
      agents.push_back(r);
      options.push_back(std::move(opts));
      betas.push_back(beta);
    }

    std::vector<int> stations_chosen;
    if (!agents.empty()) {
      const WindowProblem problem(agents, options, betas, s.stations, s.speed_kmh);
      std::vector<int> choice;
      switch (method) {
        case Method::kGreedy:
          choice = greedy_assign(problem);
          break;
        case Method::kMgm:
        case Method::kCohda: {
          auto b = method == Method::kMgm
                       ? run_mgm(problem, config.iterations, window_seed, config.strategy)
                       : run_cohda(problem, config.iterations, window_seed);
          for (const auto& tr : b.trace) result.traces.push_back({t, 0, tr});
          choice = std::move(b.choice);
          break;
        }
        default: {
          auto c = run_coordination(problem, epos, window_seed);
          for (std::size_t r = 0; r < c.traces.size(); ++r) {
            for (const auto& tr : c.traces[r]) result.traces.push_back({t, static_cast<int>(r), tr});
          }
          choice = std::move(c.choice);
          break;
        }
      }
      for (std::size_t a = 0; a < agents.size(); ++a) {
        const auto& k = problem.option(a, static_cast<std::size_t>(choice[a]));
        stations_chosen.push_back(k.station);
        outcome.chosen.push_back(k);
      }
    }

    outcome.assignments = update_station_state(s.stations, agents, stations_chosen, s.speed_kmh);
    for (const auto& st : s.stations) outcome.station_queue.push_back(st.window_queue_time);
    for (const auto& a : outcome.assignments) {
      result.station_of_request[index_of_id[static_cast<std::size_t>(a.request_id)]] = a.station;
      result.assignments.push_back({t, a.request_id, s.stations[static_cast<std::size_t>(a.station)].id,
                                    a.slot_index, a.arrival_time, a.wait_minutes});
    }
    outcomes.push_back(std::move(outcome));
  }

  result.report = compute_report(outcomes, s, {s.speed_kmh, config.charge_power_kw});
  result.report.seed = seed;
  return result;
}

std::string config_hash(const Scenario& scenario, const RunConfig& config) {
  std::ostringstream text;
  write_scenario(text, scenario);
  auto opt = [](const auto& v) { return v ? format_number(static_cast<double>(*v)) : std::string("-"); };
  text << "|method=" << method_name(config.method) << "|beta=" << opt(config.beta)
       << "|gamma=" << format_number(config.gamma) << "|lags=" << config.lags
       << "|windows=" << opt(config.windows) << "|slots=" << opt(config.slots_ratio)
       << "|selfish=" << format_number(config.selfish_pct) << "|reps=" << config.repetitions
       << "|iters=" << config.iterations << "|seed=" << run_seed(scenario, config)
       << "|power=" << format_number(config.charge_power_kw)
       << "|strategy=" << static_cast<int>(config.strategy) << "|max_options=" << config.max_options;
  if (config.predictor) write_predictor(text, *config.predictor);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text.str())));
  return buf;
}

}  // namespace decharge
