#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>

#include "decharge/errors.hpp"
#include "decharge/pipeline.hpp"
#include "decharge/scenario.hpp"
#include "decharge/scenario_io.hpp"

namespace py = pybind11;
using namespace decharge;

namespace {

py::dict window_dict(const WindowMetrics& w) {
  py::dict d;
  d["window"] = w.window;
  d["served"] = w.served;
  d["unserved"] = w.unserved;
  d["driver_discomfort"] = w.driver_discomfort;
  d["system_inefficiency"] = w.system_inefficiency;
  d["relative_travel_km"] = w.relative_travel_km;
  d["actual_queuing_h"] = w.actual_queuing_h;
  d["estimated_waiting_h"] = w.estimated_waiting_h;
  return d;
}

py::dict report_dict(const RunReport& r) {
  py::dict d;
  d["day"] = r.day;
  d["seed"] = r.seed;
  d["num_windows"] = r.num_windows;
  d["served"] = r.served;
  d["unserved"] = r.unserved;
  d["driver_discomfort"] = r.driver_discomfort;
  d["system_inefficiency"] = r.system_inefficiency;
  d["overall_operational_cost"] = r.overall_operational_cost;
  d["relative_travel_km"] = r.relative_travel_km;
  d["actual_queuing_h"] = r.actual_queuing_h;
  d["estimated_waiting_h"] = r.estimated_waiting_h;
  d["station_demand_kj"] = r.station_demand_kj;
  d["max_station_demand_kj"] = r.max_station_demand_kj;
  py::list windows;
  for (const auto& w : r.windows) windows.append(window_dict(w));
  d["windows"] = windows;
  return d;
}

RunConfig make_config(const std::string& method, std::optional<double> beta, double gamma,
                      std::optional<int> windows, std::optional<double> slots_ratio,
                      double selfish_pct, int repetitions, int iterations,
                      std::optional<std::uint64_t> seed) {
  RunConfig config;
  config.method = parse_method(method);
  config.beta = beta;
  config.gamma = gamma;
  config.windows = windows;
  config.slots_ratio = slots_ratio;
  config.selfish_pct = selfish_pct;
  config.repetitions = repetitions;
  config.iterations = iterations;
  config.seed = seed;
  return config;
}

#define RUN_ARGS                                                                        \
  py::arg("method") = "decharge", py::arg("beta") = py::none(), py::arg("gamma") = 0.1, \
      py::arg("windows") = py::none(), py::arg("slots_ratio") = py::none(),             \
      py::arg("selfish_pct") = 0.0, py::arg("repetitions") = 40,                        \
      py::arg("iterations") = 40, py::arg("seed") = py::none()

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Decentralized EV charging coordination";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<InfeasibleSelection>(m, "InfeasibleSelection", PyExc_RuntimeError);

  py::class_<ChargingStation>(m, "Station")
      .def_readonly("id", &ChargingStation::id)
      .def_property_readonly("x_km", [](const ChargingStation& s) { return s.location.x_km; })
      .def_property_readonly("y_km", [](const ChargingStation& s) { return s.location.y_km; })
      .def_property_readonly("num_slots", &ChargingStation::num_slots)
      .def_property_readonly("enabled_slots", &ChargingStation::enabled_slots)
      .def_readonly("weight", &ChargingStation::weight);

  py::class_<ChargingRequest>(m, "Request")
      .def_readonly("id", &ChargingRequest::id)
      .def_readonly("request_time", &ChargingRequest::request_time)
      .def_readonly("demand", &ChargingRequest::demand)
      .def_property_readonly("x_km", [](const ChargingRequest& r) { return r.location.x_km; })
      .def_property_readonly("y_km", [](const ChargingRequest& r) { return r.location.y_km; })
      .def_readonly("max_distance", &ChargingRequest::max_distance)
      .def_readonly("window", &ChargingRequest::window);

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("stations", &Scenario::stations)
      .def_readonly("requests", &Scenario::requests)
      .def_readonly("num_windows", &Scenario::num_windows)
      .def_readonly("window_length", &Scenario::window_length)
      .def_readonly("speed_kmh", &Scenario::speed_kmh)
      .def_readonly("seed", &Scenario::seed)
      .def_readonly("day", &Scenario::day)
      .def("to_text", [](const Scenario& s) { return format_scenario(s); })
      .def("save", [](const Scenario& s, const std::filesystem::path& p) { save_scenario(p, s); },
           py::arg("path"));

  m.def("generate",
        [](const std::filesystem::path& config, std::uint64_t seed) {
          return generate_scenario(load_generator_config(config), seed);
        },
        py::arg("config"), py::arg("seed"),
        "Generate a scenario from a JSON generator config file.");
  m.def("load_scenario", &load_scenario, py::arg("path"));

  m.def("run",
        [](const Scenario& scenario, const std::string& method, std::optional<double> beta,
           double gamma, std::optional<int> windows, std::optional<double> slots_ratio,
           double selfish_pct, int repetitions, int iterations,
           std::optional<std::uint64_t> seed) {
          RunConfig config = make_config(method, beta, gamma, windows, slots_ratio,
                                         selfish_pct, repetitions, iterations, seed);
          RunResult result;
          {
            py::gil_scoped_release release;
            result = run_scenario(scenario, config);
          }
          py::dict d = report_dict(result.report);
          d["config_hash"] = config_hash(scenario, config);
          d["station_of_request"] = result.station_of_request;
          d["beta_of_request"] = result.beta_of_request;
          return d;
        },
        py::arg("scenario"), RUN_ARGS,
        "Simulate one day with the given method and return the report as a dict.");

  m.def("config_hash",
        [](const Scenario& scenario, const std::string& method, std::optional<double> beta,
           double gamma, std::optional<int> windows, std::optional<double> slots_ratio,
           double selfish_pct, int repetitions, int iterations,
           std::optional<std::uint64_t> seed) {
          return config_hash(scenario, make_config(method, beta, gamma, windows, slots_ratio,
                                                   selfish_pct, repetitions, iterations, seed));
        },
        py::arg("scenario"), RUN_ARGS);

  m.def("report_columns", &report_columns);
}
