#include "decharge/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "decharge/behavior.hpp"
#include "decharge/csv.hpp"
#include "decharge/pipeline.hpp"
#include "decharge/scenario.hpp"
#include "decharge/scenario_io.hpp"
#include "decharge/sweep.hpp"

namespace decharge {

namespace {

struct RunFlags {
  std::string scenario;
  std::string method = "decharge";
  std::optional<double> beta;
  double gamma = 0.1;
  int lags = 3;
  std::optional<int> windows;
  std::optional<double> slots_ratio;
  double selfish_pct = 0.0;
  int repetitions = 40;
  int iterations = 40;
  std::optional<std::uint64_t> seed;
  double power = 7.0;
  std::string strategy = "centroid";
  std::size_t max_options = 0;
  std::string predictor;
  std::string out;
  bool append = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("scenario,--scenario", f.scenario, "Scenario document")->required();
  cmd->add_option("--beta", f.beta, "Fixed charging behaviour for every request")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--gamma", f.gamma, "Scale of the recommended behaviour")->capture_default_str();
  cmd->add_option("--lags", f.lags, "Predictor lag count")->capture_default_str();
  cmd->add_option("--windows", f.windows, "Number of time windows (divides 1440)");
  cmd->add_option("--slots-ratio", f.slots_ratio, "Fraction of slots available")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--selfish-pct", f.selfish_pct, "Percent of requests forced to beta = 1")
      ->check(CLI::Range(0.0, 100.0))
      ->capture_default_str();
  cmd->add_option("--repetitions", f.repetitions)->capture_default_str();
  cmd->add_option("--iterations", f.iterations)->capture_default_str();
  cmd->add_option("--seed", f.seed, "Run seed (defaults to the scenario seed)");
  cmd->add_option("--power", f.power, "Charging power in kW")->capture_default_str();
  cmd->add_option("--strategy", f.strategy, "Tree positioning")
      ->check(CLI::IsMember({"centroid", "pure-random"}))
      ->capture_default_str();
  cmd->add_option("--max-options", f.max_options, "Keep only the k best options (0 = all)");
  cmd->add_option("--predictor", f.predictor, "Predictor file (default: fit on scenario history)");
  cmd->add_option("--out", f.out, "Report CSV (default stdout)");
  cmd->add_flag("--append", f.append, "Append rows without a header when --out exists");
}

RunConfig to_config(const RunFlags& f) {
  RunConfig c;
  c.method = parse_method(f.method);
  c.beta = f.beta;
  c.gamma = f.gamma;
  c.lags = f.lags;
  c.windows = f.windows;
  c.slots_ratio = f.slots_ratio;
  c.selfish_pct = f.selfish_pct;
  c.repetitions = f.repetitions;
  c.iterations = f.iterations;
  c.seed = f.seed;
  c.charge_power_kw = f.power;
  c.strategy = f.strategy == "pure-random" ? TreeStrategy::kPureRandom : TreeStrategy::kCentroid;
  c.max_options = f.max_options;
  if (!f.predictor.empty()) {
    std::ifstream in(f.predictor);
    if (!in) throw std::runtime_error("cannot open predictor '" + f.predictor + "'");
    c.predictor = read_predictor(in);
  }
  return c;
}

// Writes to `path`, or to `fallback` when the path is empty or "-".
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback, bool append = false) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    fresh_ = !append || !std::ifstream(path).good() || std::ifstream(path).peek() == EOF;
    file_ = std::make_unique<std::ofstream>(path, append ? std::ios::app : std::ios::trunc);
    if (!*file_) throw std::runtime_error("cannot write '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& stream() { return *stream_; }
  bool needs_header() const { return fresh_; }
  void close(const std::string& path) {
    if (file_) {
      file_->close();
      if (!*file_) throw std::runtime_error("write failed for '" + path + "'");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
  bool fresh_ = true;
};

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  for (const auto& field : csv::split(text)) out.push_back(csv::to_double(field, 0, "values"));
  return out;
}

std::vector<Method> parse_methods(const std::string& text) {
  std::vector<Method> out;
  for (const auto& field : csv::split(text)) out.push_back(parse_method(field));
  return out;
}

int cmd_gen(const std::string& config_path, std::uint64_t seed, const std::string& out_path,
            std::ostream& out) {
  const auto config = load_generator_config(config_path);
  const auto scenario = generate_scenario(config, seed);
  if (out_path.empty() || out_path == "-") {
    write_scenario(out, scenario);
  } else {
    save_scenario(out_path, scenario);
  }
  return 0;
}

int cmd_fit(const std::string& scenario_path, int lags, const std::string& out_path,
            std::ostream& out) {
  const auto scenario = load_scenario(scenario_path);
  const auto predictor = fit_predictor(scenario.history, lags);
  Output o(out_path, out);
  write_predictor(o.stream(), predictor);
  o.close(out_path);
  return 0;
}

int cmd_run(const RunFlags& f, const std::string& log_epos, const std::string& log_assignments,
            std::ostream& out) {
  const auto scenario = load_scenario(f.scenario);
  const auto config = to_config(f);
  const auto result = run_scenario(scenario, config);

  Output o(f.out, out, f.append);
  if (o.needs_header()) {
    auto header = std::vector<std::string>{"day", "method", "config_hash"};
    for (auto& c : report_columns()) header.push_back(c);
    csv::write_row(o.stream(), header);
  }
  auto row = std::vector<std::string>{std::to_string(result.report.day),
                                      std::string(method_name(config.method)),
                                      config_hash(scenario, config)};
  for (auto& v : report_values(result.report)) row.push_back(v);
  csv::write_row(o.stream(), row);
  o.close(f.out);

  if (!log_epos.empty()) {
    Output t(log_epos, out);
    csv::write_row(t.stream(), {"window", "repetition", "iteration", "global_cost", "num_changes"});
    for (const auto& r : result.traces) {
      csv::write_row(t.stream(), {std::to_string(r.window), std::to_string(r.repetition),
                                  std::to_string(r.trace.iteration), format_number(r.trace.global_cost),
                                  std::to_string(r.trace.num_changes)});
    }
    t.close(log_epos);
  }
  if (!log_assignments.empty()) {
    Output a(log_assignments, out);
    csv::write_row(a.stream(), {"window", "request_id", "station_id", "slot", "arrival_min", "wait_min"});
    for (const auto& r : result.assignments) {
      csv::write_row(a.stream(), {std::to_string(r.window), std::to_string(r.request_id),
                                  std::to_string(r.station_id), std::to_string(r.slot),
                                  format_number(r.arrival_min), format_number(r.wait_min)});
    }
    a.close(log_assignments);
  }
  return 0;
}

int cmd_sweep(const RunFlags& f, const std::string& axis_text, const std::string& values_text,
              const std::string& methods_text, int jobs, std::ostream& out) {
  const auto scenario = load_scenario(f.scenario);
  const auto base = to_config(f);
  const auto axis = parse_axis(axis_text);
  const auto values = parse_values(values_text);
  const auto methods = parse_methods(methods_text);
  const auto rows = run_sweep(scenario, base, axis, values, methods, jobs);

  Output o(f.out, out, f.append);
  if (o.needs_header()) {
    auto header = std::vector<std::string>{"axis", "value", "day", "method", "config_hash"};
    for (auto& c : report_columns()) header.push_back(c);
    csv::write_row(o.stream(), header);
  }
  for (const auto& r : rows) {
    auto row = std::vector<std::string>{std::string(axis_name(axis)), format_number(r.cell.value),
                                        std::to_string(r.report.day),
                                        std::string(method_name(r.cell.method)), r.hash};
    for (auto& v : report_values(r.report)) row.push_back(v);
    csv::write_row(o.stream(), row);
  }
  o.close(f.out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decentralized EV charging coordination simulator", "decharge"};
  app.require_subcommand(1);

  std::string gen_config;
  std::string gen_out;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "Generate a scenario document from a generator config");
  gen->add_option("config,--config", gen_config, "Generator config (JSON)")->required();
  gen->add_option("--seed", gen_seed)->capture_default_str();
  gen->add_option("--out", gen_out, "Scenario path (default stdout)");

  std::string fit_scenario;
  std::string fit_out;
  int fit_lags = 3;
  auto* fit = app.add_subcommand("fit", "Train the demand predictor on a scenario's history");
  fit->add_option("scenario,--scenario", fit_scenario)->required();
  fit->add_option("--lags", fit_lags)->capture_default_str();
  fit->add_option("--out", fit_out, "Predictor path (default stdout)");

  RunFlags run_flags;
  std::string log_epos;
  std::string log_assignments;
  auto* run = app.add_subcommand("run", "Simulate one day with one method");
  add_run_flags(run, run_flags);
  run->add_option("--method", run_flags.method)
      ->check(CLI::IsMember({"decharge", "greedy", "doc", "sic", "mgm", "cohda"}))
      ->capture_default_str();
  run->add_option("--log-epos", log_epos, "Iteration trace CSV");
  run->add_option("--log-assignments", log_assignments, "Assignment log CSV");

  RunFlags sweep_flags;
  std::string axis;
  std::string values;
  std::string methods = "decharge";
  int jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep across methods");
  add_run_flags(sweep, sweep_flags);
  sweep->add_option("--axis", axis)
      ->check(CLI::IsMember({"beta", "slots", "windows", "selfish_pct"}))
      ->required();
  sweep->add_option("--values", values, "Comma-separated values")->required();
  sweep->add_option("--methods", methods, "Comma-separated methods")->capture_default_str();
  sweep->add_option("--method", methods, "Alias of --methods");
  sweep->add_option("--jobs", jobs)->check(CLI::PositiveNumber)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen) return cmd_gen(gen_config, gen_seed, gen_out, out);
    if (*fit) return cmd_fit(fit_scenario, fit_lags, fit_out, out);
    if (*run) return cmd_run(run_flags, log_epos, log_assignments, out);
    if (*sweep) return cmd_sweep(sweep_flags, axis, values, methods, jobs, out);
  } catch (const std::exception& e) {
    err << "decharge: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace decharge
