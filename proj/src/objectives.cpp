#include "decharge/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "decharge/errors.hpp"
#include "decharge/station_sim.hpp"

namespace decharge {

double rms(std::span<const double> values) noexcept {
  if (values.empty()) return 0.0;
  double sum_sq = 0.0;
  for (double v : values) sum_sq += v * v;
  return std::sqrt(sum_sq / static_cast<double>(values.size()));
}

DiscomfortTerms o1_discomfort(const SelectionVector& selection,
                              std::span<const std::vector<ChargingOption>> options) {
  if (selection.stations.size() != options.size()) {
    throw std::invalid_argument("o1_discomfort: selection and option sets differ in length");
  }
  DiscomfortTerms terms;
  terms.per_request.reserve(options.size());
  for (std::size_t i = 0; i < options.size(); ++i) {
    const auto it = std::find_if(options[i].begin(), options[i].end(), [&](const auto& k) {
      return k.station == selection.stations[i];
    });
    if (it == options[i].end()) {
      throw InfeasibleSelection("station " + std::to_string(selection.stations[i]) +
                                " is not an option of request " +
                                std::to_string(selection.request_ids.empty()
                                                   ? static_cast<int>(i)
                                                   : selection.request_ids[i]));
    }
    terms.per_request.push_back(it->discomfort);
    terms.sum += it->discomfort;
  }
  return terms;
}

double o2_inefficiency(const SelectionVector& selection,
                       std::span<const ChargingRequest> requests,
                       std::span<const ChargingStation> stations, double speed_kmh) {
  std::vector<ChargingStation> scratch(stations.begin(), stations.end());
  update_station_state(scratch, requests, selection.stations, speed_kmh);
  std::vector<double> queues;
  queues.reserve(scratch.size());
  for (const auto& st : scratch) queues.push_back(st.window_queue_time);
  return rms(queues);
}

double overall_cost(std::span<const double> o1_per_request, double o2,
                    std::span<const double> betas) {
  if (o1_per_request.size() != betas.size()) {
    throw std::invalid_argument("overall_cost: one beta per request expected");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!(betas[i] >= 0.0 && betas[i] <= 1.0)) {
      throw std::invalid_argument("overall_cost: beta outside [0, 1]");
    }
    total += betas[i] * o1_per_request[i] + (1.0 - betas[i]) * o2;
  }
  return total;
}

WindowProblem::WindowProblem(std::vector<ChargingRequest> agents,
                             std::vector<std::vector<ChargingOption>> options,
                             std::vector<double> betas,
                             std::span<const ChargingStation> stations, double speed_kmh)
    : agents_(std::move(agents)), options_(std::move(options)), betas_(std::move(betas)) {
  if (options_.size() != agents_.size() || betas_.size() != agents_.size()) {
    throw std::invalid_argument("WindowProblem: agents, options and betas differ in length");
  }
  for (std::size_t a = 1; a < agents_.size(); ++a) {
    const auto& p = agents_[a - 1];
    const auto& q = agents_[a];
    if (q.request_time < p.request_time || (q.request_time == p.request_time && q.id <= p.id)) {
      throw std::invalid_argument("WindowProblem: agents must be sorted by (request_time, id)");
    }
  }
  clocks_.resize(stations.size());
  for (std::size_t m = 0; m < stations.size(); ++m) {
    for (std::size_t j = 0; j < stations[m].slot_free_time.size(); ++j) {
      if (stations[m].enabled[j]) clocks_[m].push_back(stations[m].slot_free_time[j]);
    }
  }
  arrivals_.resize(agents_.size());
  for (std::size_t a = 0; a < agents_.size(); ++a) {
    if (!(betas_[a] >= 0.0 && betas_[a] <= 1.0)) {
      throw std::invalid_argument("WindowProblem: beta outside [0, 1]");
    }
    if (options_[a].empty()) {
      throw std::invalid_argument("WindowProblem: agent " + std::to_string(agents_[a].id) +
                                  " has no options");
    }
    o2_weight_ += 1.0 - betas_[a];
    for (const auto& k : options_[a]) {
      if (k.station < 0 || static_cast<std::size_t>(k.station) >= clocks_.size() ||
          clocks_[static_cast<std::size_t>(k.station)].empty()) {
        throw InfeasibleSelection("option of request " + std::to_string(agents_[a].id) +
                                  " points at a station without enabled slots");
      }
      arrivals_[a].push_back(agents_[a].request_time + travel_minutes(k.distance_km, speed_kmh));
    }
  }
}

Minutes WindowProblem::station_queue(std::size_t station, std::span<const int> members,
                                     std::span<const int> choice,
                                     std::vector<Minutes>& scratch) const {
  scratch.assign(clocks_[station].begin(), clocks_[station].end());
  Minutes total = 0.0;
  for (int a : members) {
    const auto agent = static_cast<std::size_t>(a);
    const auto k = static_cast<std::size_t>(choice[agent]);
    total += serve_on_slots(scratch, arrivals_[agent][k], agents_[agent].demand);
  }
  return total;
}

std::vector<Minutes> WindowProblem::station_queues(std::span<const int> choice) const {
  if (choice.size() != agents_.size()) {
    throw std::invalid_argument("choice length does not match agent count");
  }
  std::vector<std::vector<int>> members(clocks_.size());
  for (std::size_t a = 0; a < agents_.size(); ++a) {
    const auto k = choice[a];
    if (k < 0 || static_cast<std::size_t>(k) >= options_[a].size()) {
      throw InfeasibleSelection("choice index out of range for agent " + std::to_string(a));
    }
    members[static_cast<std::size_t>(options_[a][static_cast<std::size_t>(k)].station)]
        .push_back(static_cast<int>(a));
  }
  std::vector<Minutes> queues(clocks_.size(), 0.0);
  std::vector<Minutes> scratch;
  for (std::size_t m = 0; m < clocks_.size(); ++m) {
    if (!members[m].empty()) queues[m] = station_queue(m, members[m], choice, scratch);
  }
  return queues;
}

ObjectiveTerms WindowProblem::evaluate(std::span<const int> choice) const {
  const auto queues = station_queues(choice);
  ObjectiveTerms t;
  double weighted_o1 = 0.0;
  for (std::size_t a = 0; a < agents_.size(); ++a) {
    const double d = options_[a][static_cast<std::size_t>(choice[a])].discomfort;
    t.o1_sum += d;
    weighted_o1 += betas_[a] * d;
  }
  double sum_sq = 0.0;
  for (double q : queues) sum_sq += q * q;
  t.o2 = queues.empty() ? 0.0 : std::sqrt(sum_sq / static_cast<double>(queues.size()));
  t.cost = weighted_o1 + o2_weight_ * t.o2;
  return t;
}

SelectionVector WindowProblem::to_selection(std::span<const int> choice) const {
  SelectionVector s;
  for (std::size_t a = 0; a < agents_.size(); ++a) {
    s.request_ids.push_back(agents_[a].id);
    s.stations.push_back(options_[a][static_cast<std::size_t>(choice[a])].station);
  }
  return s;
}

LoadState::LoadState(const WindowProblem& problem, std::vector<int> choice)
    : problem_(&problem), choice_(std::move(choice)) {
  queues_ = problem.station_queues(choice_);
  members_.resize(problem.num_stations());
  for (std::size_t a = 0; a < choice_.size(); ++a) {
    const auto& k = problem.option(a, static_cast<std::size_t>(choice_[a]));
    members_[static_cast<std::size_t>(k.station)].push_back(static_cast<int>(a));
  }
  for (double q : queues_) sum_sq_ += q * q;
}

double LoadState::cost() const {
  double weighted_o1 = 0.0;
  for (std::size_t a = 0; a < choice_.size(); ++a) {
    weighted_o1 += problem_->beta(a) *
                   problem_->option(a, static_cast<std::size_t>(choice_[a])).discomfort;
  }
  const double o2 =
      queues_.empty() ? 0.0 : std::sqrt(sum_sq_ / static_cast<double>(queues_.size()));
  return weighted_o1 + problem_->o2_weight() * o2;
}

Minutes LoadState::queue_with(std::size_t station, int extra, int extra_option,
                              int skip) const {
  // `extra` joins the station through `extra_option`; `skip` leaves it.
  auto clocks = problem_->clocks(station);
  scratch_.assign(clocks.begin(), clocks.end());
  Minutes total = 0.0;
  bool pending = extra >= 0;
  auto serve = [&](int a, int k) {
    const auto agent = static_cast<std::size_t>(a);
    total += serve_on_slots(scratch_, problem_->arrival(agent, static_cast<std::size_t>(k)),
                            problem_->agents()[agent].demand);
  };
  for (int a : members_[station]) {
    if (pending && extra < a) {
      serve(extra, extra_option);
      pending = false;
    }
    if (a == skip) continue;
    serve(a, choice_[static_cast<std::size_t>(a)]);
  }
  if (pending) serve(extra, extra_option);
  return total;
}

double LoadState::delta_move(std::size_t agent, int k) const {
  const int current = choice_[agent];
  if (k == current) return 0.0;
  const auto& from = problem_->option(agent, static_cast<std::size_t>(current));
  const auto& to = problem_->option(agent, static_cast<std::size_t>(k));
  const double d_o1 = problem_->beta(agent) * (to.discomfort - from.discomfort);
  const double w = problem_->o2_weight();
  if (w == 0.0 || queues_.empty()) return d_o1;
  const auto s0 = static_cast<std::size_t>(from.station);
  const auto s1 = static_cast<std::size_t>(to.station);
  const Minutes q0 = queue_with(s0, -1, -1, static_cast<int>(agent));
  const Minutes q1 = queue_with(s1, static_cast<int>(agent), k, -1);
  const double new_sq = std::max(
      0.0, sum_sq_ - queues_[s0] * queues_[s0] - queues_[s1] * queues_[s1] + q0 * q0 + q1 * q1);
  const auto m = static_cast<double>(queues_.size());
  return d_o1 + w * (std::sqrt(new_sq / m) - std::sqrt(sum_sq_ / m));
}

void LoadState::move(std::size_t agent, int k) {
  const int current = choice_[agent];
  if (k == current) return;
  const auto s0 = static_cast<std::size_t>(problem_->option(agent, static_cast<std::size_t>(current)).station);
  const auto s1 = static_cast<std::size_t>(problem_->option(agent, static_cast<std::size_t>(k)).station);
  const int id = static_cast<int>(agent);
  auto& from = members_[s0];
  from.erase(std::find(from.begin(), from.end(), id));
  auto& to = members_[s1];
  to.insert(std::lower_bound(to.begin(), to.end(), id), id);
  choice_[agent] = k;
  queues_[s0] = queue_with(s0, -1, -1, -1);
  queues_[s1] = queue_with(s1, -1, -1, -1);
  sum_sq_ = 0.0;
  for (double q : queues_) sum_sq_ += q * q;
}

}  // namespace decharge
