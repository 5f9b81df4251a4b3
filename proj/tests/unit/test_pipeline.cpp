#include <gtest/gtest.h>

#include "decharge/errors.hpp"
#include "decharge/pipeline.hpp"
#include "decharge/sweep.hpp"

using namespace decharge;

namespace {

Scenario small_scenario(std::uint64_t seed = 3, int requests = 120) {
  GeneratorConfig c;
  c.stations = synthetic_stations(30, 2, 5, &c.projection);
  c.num_requests = requests;
  c.availability_ratio = 0.6;
  c.time_bins = default_time_bins();
  c.demand_bins = default_demand_bins();
  c.num_windows = 12;
  c.history_days = 10;
  return generate_scenario(c, seed);
}

RunConfig quick(Method m) {
  RunConfig c;
  c.method = m;
  c.repetitions = 4;
  c.iterations = 10;
  return c;
}

void expect_same_report(const RunReport& a, const RunReport& b) {
  EXPECT_EQ(report_values(a), report_values(b));
}

}  // namespace

TEST(Methods, NamesRoundTrip) {
  for (auto m : {Method::kDecharge, Method::kGreedy, Method::kDoc, Method::kSic, Method::kMgm,
                 Method::kCohda}) {
    EXPECT_EQ(parse_method(method_name(m)), m);
  }
  EXPECT_THROW(parse_method("epos"), std::invalid_argument);
}

TEST(Pipeline, GreedyEqualsFullySelfishDecharge) {
  const auto s = small_scenario();
  auto d = quick(Method::kDecharge);
  d.beta = 1.0;
  const auto a = run_scenario(s, quick(Method::kGreedy));
  const auto b = run_scenario(s, d);
  EXPECT_EQ(a.station_of_request, b.station_of_request);
  expect_same_report(a.report, b.report);
}

TEST(Pipeline, SicEqualsSingleWindowDecharge) {
  const auto s = small_scenario();
  auto d = quick(Method::kDecharge);
  d.windows = 1;
  const auto a = run_scenario(s, quick(Method::kSic));
  const auto b = run_scenario(s, d);
  EXPECT_EQ(a.report.num_windows, 1);
  EXPECT_EQ(a.station_of_request, b.station_of_request);
  expect_same_report(a.report, b.report);
}

TEST(Pipeline, DocEqualsDechargeWithoutObservedQueues) {
  const auto s = small_scenario();
  auto d = quick(Method::kDecharge);
  auto o = quick(Method::kDoc);
  d.windows = o.windows = 1;
  d.beta = o.beta = 0.5;
  EXPECT_EQ(run_scenario(s, d).station_of_request, run_scenario(s, o).station_of_request);
}

TEST(Pipeline, FullySelfishPopulationEqualsGreedy) {
  const auto s = small_scenario();
  auto d = quick(Method::kDecharge);
  d.selfish_pct = 100;
  const auto r = run_scenario(s, d);
  EXPECT_EQ(r.station_of_request, run_scenario(s, quick(Method::kGreedy)).station_of_request);
  for (double b : r.beta_of_request) EXPECT_EQ(b, 1.0);
}

TEST(Pipeline, SelfishShareIsExact) {
  const auto s = small_scenario();
  auto d = quick(Method::kDecharge);
  d.beta = 0.3;
  d.selfish_pct = 40;
  const auto r = run_scenario(s, d);
  int ones = 0;
  for (std::size_t i = 0; i < r.beta_of_request.size(); ++i) {
    if (r.station_of_request[i] < 0) continue;
    EXPECT_TRUE(r.beta_of_request[i] == 1.0 || r.beta_of_request[i] == 0.3);
    ones += r.beta_of_request[i] == 1.0;
  }
  EXPECT_LE(ones, 48);
  EXPECT_GE(ones, 40);
}

TEST(Pipeline, DeterministicAndInputUntouched) {
  const auto s = small_scenario();
  const auto before = s.stations[0].slot_free_time;
  for (auto m : {Method::kDecharge, Method::kMgm, Method::kCohda}) {
    const auto a = run_scenario(s, quick(m));
    const auto b = run_scenario(s, quick(m));
    EXPECT_EQ(a.station_of_request, b.station_of_request);
    expect_same_report(a.report, b.report);
  }
  EXPECT_EQ(s.stations[0].slot_free_time, before);
}

TEST(Pipeline, AssignmentsCoverServedRequests) {
  const auto s = small_scenario();
  const auto r = run_scenario(s, quick(Method::kDecharge));
  EXPECT_EQ(static_cast<int>(r.assignments.size()), r.report.served);
  EXPECT_EQ(r.report.served + r.report.unserved, static_cast<int>(s.requests.size()));
  int windows_seen = -1;
  for (const auto& a : r.assignments) {
    EXPECT_GE(a.window, windows_seen);
    windows_seen = a.window;
    EXPECT_GE(a.wait_min, 0.0);
  }
  for (const auto& t : r.traces) {
    EXPECT_LT(t.repetition, 4);
    EXPECT_LE(t.trace.iteration, 10);
  }
}

TEST(Pipeline, RecommendedBetasStayInRange) {
  const auto s = small_scenario();
  const auto r = run_scenario(s, quick(Method::kDecharge));
  for (double b : r.beta_of_request) {
    EXPECT_GE(b, 0.0);
    EXPECT_LE(b, 1.0);
  }
}

TEST(Pipeline, DegenerateScenariosReportUnserved) {
  auto empty = small_scenario(3, 0);
  const auto r0 = run_scenario(empty, quick(Method::kDecharge));
  EXPECT_EQ(r0.report.served, 0);
  EXPECT_EQ(r0.report.num_windows, 12);

  auto down = small_scenario();
  auto c = quick(Method::kDecharge);
  c.slots_ratio = 0.0;
  const auto r1 = run_scenario(down, c);
  EXPECT_EQ(r1.report.served, 0);
  EXPECT_EQ(r1.report.unserved, static_cast<int>(down.requests.size()));
  EXPECT_EQ(r1.report.max_station_demand_kj, 0.0);
}

TEST(Pipeline, InvalidConfigThrows) {
  const auto s = small_scenario();
  auto c = quick(Method::kDecharge);
  c.beta = 1.5;
  EXPECT_THROW(run_scenario(s, c), ValidationError);
  c = quick(Method::kDecharge);
  c.windows = 7;
  EXPECT_THROW(run_scenario(s, c), ValidationError);
  c = quick(Method::kDecharge);
  c.selfish_pct = 101;
  EXPECT_THROW(run_scenario(s, c), ValidationError);
  c = quick(Method::kDecharge);
  c.repetitions = 0;
  EXPECT_THROW(run_scenario(s, c), ValidationError);
}

TEST(ConfigHash, StableAndSensitive) {
  const auto s = small_scenario();
  const auto c = quick(Method::kDecharge);
  const auto h = config_hash(s, c);
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(h, config_hash(s, c));
  auto c2 = c;
  c2.beta = 0.5;
  EXPECT_NE(h, config_hash(s, c2));
  auto c3 = c;
  c3.seed = s.seed + 1;
  EXPECT_NE(h, config_hash(s, c3));
  EXPECT_NE(h, config_hash(small_scenario(4), c));
}

TEST(Sweep, FiveValuesGiveFiveRowsPerMethod) {
  const auto s = small_scenario(3, 60);
  const std::vector<double> values{0, 0.25, 0.5, 0.75, 1};
  const std::vector<Method> methods{Method::kDecharge, Method::kGreedy};
  const auto rows = run_sweep(s, quick(Method::kDecharge), SweepAxis::kBeta, values, methods, 2);
  ASSERT_EQ(rows.size(), 10u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].cell.value_index, i / 2);
    EXPECT_EQ(rows[i].cell.method, methods[i % 2]);
    EXPECT_EQ(rows[i].cell.value, values[i / 2]);
  }
}

TEST(Sweep, ResultsIndependentOfJobs) {
  const auto s = small_scenario(3, 60);
  const std::vector<double> values{0.25, 0.5, 1.0};
  const std::vector<Method> methods{Method::kDecharge, Method::kMgm, Method::kSic};
  const auto a = run_sweep(s, quick(Method::kDecharge), SweepAxis::kSlots, values, methods, 1);
  const auto b = run_sweep(s, quick(Method::kDecharge), SweepAxis::kSlots, values, methods, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].hash, b[i].hash);
    EXPECT_EQ(report_values(a[i].report), report_values(b[i].report));
  }
}

TEST(Sweep, AxesApplyTheirParameter) {
  const RunConfig base;
  EXPECT_EQ(*apply_axis(base, SweepAxis::kBeta, 0.25).beta, 0.25);
  EXPECT_EQ(*apply_axis(base, SweepAxis::kSlots, 0.5).slots_ratio, 0.5);
  EXPECT_EQ(*apply_axis(base, SweepAxis::kWindows, 6).windows, 6);
  EXPECT_EQ(apply_axis(base, SweepAxis::kSelfishPct, 40).selfish_pct, 40);
  EXPECT_THROW(apply_axis(base, SweepAxis::kWindows, 2.5), ValidationError);
  EXPECT_THROW(sweep_cells(base, SweepAxis::kBeta, {}, {Method::kGreedy}), ValidationError);
  EXPECT_THROW(sweep_cells(base, SweepAxis::kBeta, {0.5}, {}), ValidationError);
  EXPECT_EQ(parse_axis(axis_name(SweepAxis::kSelfishPct)), SweepAxis::kSelfishPct);
}

TEST(Sweep, InvalidCellSurfacesAsError) {
  const auto s = small_scenario(3, 30);
  EXPECT_THROW(run_sweep(s, quick(Method::kDecharge), SweepAxis::kBeta, {0.5, 2.0},
                         {Method::kDecharge}, 2),
               ValidationError);
}
