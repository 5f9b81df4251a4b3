#include "oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace decharge::oracle {

std::vector<double> station_waits(const std::vector<ChargingStation>& stations,
                                  const std::vector<ChargingRequest>& requests,
                                  const std::vector<int>& station_of, double speed_kmh) {
  std::vector<double> waits(stations.size(), 0.0);
  std::vector<std::vector<double>> clocks;
  for (const auto& s : stations) {
    std::vector<double> c;
    for (std::size_t j = 0; j < s.slot_free_time.size(); ++j) {
      if (s.enabled[j]) c.push_back(s.slot_free_time[j]);
    }
    clocks.push_back(c);
  }
  std::vector<std::size_t> order(requests.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (requests[a].request_time != requests[b].request_time) {
      return requests[a].request_time < requests[b].request_time;
    }
    return requests[a].id < requests[b].id;
  });
  for (std::size_t i : order) {
    const auto m = static_cast<std::size_t>(station_of[i]);
    const auto& r = requests[i];
    const double dx = r.location.x_km - stations[m].location.x_km;
    const double dy = r.location.y_km - stations[m].location.y_km;
    const double arrival = r.request_time + std::hypot(dx, dy) / speed_kmh * 60.0;
    auto& c = clocks[m];
    std::size_t best = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] < c[best]) best = j;
    }
    const double start = std::max(c[best], arrival);
    waits[m] += start - arrival;
    c[best] = start + r.demand;
  }
  return waits;
}

Evaluation evaluate(const std::vector<ChargingStation>& stations,
                    const std::vector<ChargingRequest>& requests,
                    const std::vector<std::vector<ChargingOption>>& options,
                    const std::vector<double>& betas, const std::vector<int>& choice,
                    double speed_kmh) {
  std::vector<int> station_of;
  Evaluation e;
  double weighted = 0.0;
  double o2_weight = 0.0;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const auto& k = options[i][static_cast<std::size_t>(choice[i])];
    station_of.push_back(k.station);
    e.o1_sum += k.discomfort;
    weighted += betas[i] * k.discomfort;
    o2_weight += 1.0 - betas[i];
  }
  const auto waits = station_waits(stations, requests, station_of, speed_kmh);
  double sq = 0.0;
  for (double w : waits) sq += w * w;
  e.o2 = waits.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(waits.size()));
  e.cost = weighted + o2_weight * e.o2;
  return e;
}

void enumerate(const std::vector<std::vector<ChargingOption>>& options,
               const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> choice(options.size(), 0);
  while (true) {
    visit(choice);
    std::size_t i = 0;
    for (; i < choice.size(); ++i) {
      if (++choice[i] < static_cast<int>(options[i].size())) break;
      choice[i] = 0;
    }
    if (i == choice.size()) return;
  }
}

Optimum exhaustive_min(const std::vector<ChargingStation>& stations,
                       const std::vector<ChargingRequest>& requests,
                       const std::vector<std::vector<ChargingOption>>& options,
                       const std::vector<double>& betas, double speed_kmh,
                       const std::function<double(const Evaluation&)>& key) {
  Optimum best;
  double best_key = INFINITY;
  enumerate(options, [&](const std::vector<int>& c) {
    const auto e = evaluate(stations, requests, options, betas, c, speed_kmh);
    if (key(e) < best_key) {
      best_key = key(e);
      best = {c, e};
    }
  });
  return best;
}

std::vector<int> greedy_oracle(const std::vector<std::vector<ChargingOption>>& options) {
  std::vector<int> out;
  for (const auto& opts : options) {
    int best = 0;
    for (int k = 0; k < static_cast<int>(opts.size()); ++k) {
      const auto& a = opts[static_cast<std::size_t>(k)];
      const auto& b = opts[static_cast<std::size_t>(best)];
      if (a.discomfort < b.discomfort || (a.discomfort == b.discomfort && a.station < b.station)) {
        best = k;
      }
    }
    out.push_back(best);
  }
  return out;
}

std::vector<double> ols_normal_equations(const std::vector<std::vector<double>>& x,
                                         const std::vector<double>& y) {
  const auto n = static_cast<Eigen::Index>(x.size());
  const auto p = static_cast<Eigen::Index>(x.front().size() + 1);
  Eigen::MatrixXd m(n, p);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, 0) = 1.0;
    for (Eigen::Index j = 1; j < p; ++j) m(i, j) = x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)];
    v(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd b = (m.transpose() * m).ldlt().solve(m.transpose() * v);
  return {b.data(), b.data() + b.size()};
}

Instance clustered_instance(std::uint64_t seed, int agents, int stations, double beta,
                            double alpha2, double cluster_sigma_km,
                            double standing_queue) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, cluster_sigma_km);
  std::uniform_real_distribution<double> time(0.0, 20.0);
  std::uniform_real_distribution<double> demand(10.0, 40.0);
  Instance in;
  for (int m = 0; m < stations; ++m) {
    ChargingStation s;
    s.id = m;
    s.location = {static_cast<double>(m), 0.0};
    s.slot_free_time = {0.0};
    s.enabled = {true};
    // Standing queue at the cluster centre so that alpha2 matters.
    s.window_queue_time = m == 0 ? standing_queue : 0.0;
    in.stations.push_back(s);
  }
  for (int i = 0; i < agents; ++i) {
    ChargingRequest r;
    r.id = i;
    r.request_time = std::round(time(gen));
    r.demand = std::round(demand(gen));
    r.location = {noise(gen), noise(gen)};
    r.max_distance = 10.0;
    in.requests.push_back(r);
  }
  std::sort(in.requests.begin(), in.requests.end(), [](const auto& a, const auto& b) {
    return a.request_time != b.request_time ? a.request_time < b.request_time : a.id < b.id;
  });
  for (const auto& r : in.requests) {
    in.options.push_back(generate_options(r, in.stations, 1.0, alpha2));
    in.betas.push_back(beta);
  }
  return in;
}

}  // namespace decharge::oracle
