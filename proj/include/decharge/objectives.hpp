#pragma once

#include <span>
#include <vector>

#include "decharge/options.hpp"
#include "decharge/scenario.hpp"

namespace decharge {

/// Chosen station per request of one window, aligned with the request list.
struct SelectionVector {
  std::vector<int> request_ids;
  std::vector<int> stations;
};

struct DiscomfortTerms {
  std::vector<double> per_request;
  double sum = 0.0;
};

/// Discomfort of each request's chosen option. Throws InfeasibleSelection if a
/// chosen station is not among that request's options.
DiscomfortTerms o1_discomfort(const SelectionVector& selection,
                              std::span<const std::vector<ChargingOption>> options);

/// RMS of per-station window queues after replaying the window update on a
/// scratch copy of `stations`. The stations passed in are not modified.
double o2_inefficiency(const SelectionVector& selection,
                       std::span<const ChargingRequest> requests,
                       std::span<const ChargingStation> stations, double speed_kmh);

/// sum_n beta_n * o1_n + (1 - beta_n) * o2. Throws std::invalid_argument for
/// beta outside [0, 1] or mismatched lengths.
double overall_cost(std::span<const double> o1_per_request, double o2,
                    std::span<const double> betas);

double rms(std::span<const double> values) noexcept;

struct ObjectiveTerms {
  double o1_sum = 0.0;
  double o2 = 0.0;
  double cost = 0.0;
};

/// Frozen coordination problem of one window: agents (served requests in
/// FCFS order), their options, behaviors and the window-start slot clocks.
/// A choice vector holds one option index per agent.
class WindowProblem {
 public:
  WindowProblem(std::vector<ChargingRequest> agents,
                std::vector<std::vector<ChargingOption>> options,
                std::vector<double> betas, std::span<const ChargingStation> stations,
                double speed_kmh);

  std::size_t num_agents() const noexcept { return agents_.size(); }
  std::size_t num_stations() const noexcept { return clocks_.size(); }
  std::size_t num_options(std::size_t agent) const { return options_[agent].size(); }
  const ChargingOption& option(std::size_t agent, std::size_t k) const {
    return options_[agent][k];
  }
  std::span<const std::vector<ChargingOption>> options() const noexcept { return options_; }
  std::span<const ChargingRequest> agents() const noexcept { return agents_; }
  double beta(std::size_t agent) const { return betas_[agent]; }
  std::span<const double> betas() const noexcept { return betas_; }
  /// sum_n (1 - beta_n): the weight of the shared O2 term.
  double o2_weight() const noexcept { return o2_weight_; }
  Minutes arrival(std::size_t agent, std::size_t k) const { return arrivals_[agent][k]; }
  /// Window-start clocks of the enabled slots of `station`.
  std::span<const Minutes> clocks(std::size_t station) const { return clocks_[station]; }

  /// Per-station window queues the choice would produce.
  std::vector<Minutes> station_queues(std::span<const int> choice) const;
  ObjectiveTerms evaluate(std::span<const int> choice) const;
  double cost(std::span<const int> choice) const { return evaluate(choice).cost; }

  SelectionVector to_selection(std::span<const int> choice) const;
  /// Queue of `station` when exactly `members` (ascending agent indices) go there.
  Minutes station_queue(std::size_t station, std::span<const int> members,
                        std::span<const int> choice, std::vector<Minutes>& scratch) const;

 private:
  std::vector<ChargingRequest> agents_;
  std::vector<std::vector<ChargingOption>> options_;
  std::vector<std::vector<Minutes>> arrivals_;
  std::vector<double> betas_;
  double o2_weight_ = 0.0;
  std::vector<std::vector<Minutes>> clocks_;
};

/// Mutable view of one choice vector with per-station members and queues,
/// supporting cheap single-agent move evaluation.
class LoadState {
 public:
  LoadState(const WindowProblem& problem, std::vector<int> choice);

  const std::vector<int>& choice() const noexcept { return choice_; }
  const WindowProblem& problem() const noexcept { return *problem_; }
  /// Same value as WindowProblem::cost on the current choice.
  double cost() const;
  /// Cost change if `agent` switched to option `k`.
  double delta_move(std::size_t agent, int k) const;
  void move(std::size_t agent, int k);

 private:
  Minutes queue_with(std::size_t station, int extra, int extra_option, int skip) const;

  const WindowProblem* problem_;
  std::vector<int> choice_;
  std::vector<std::vector<int>> members_;
  std::vector<Minutes> queues_;
  double sum_sq_ = 0.0;
  mutable std::vector<Minutes> scratch_;
};

}  // namespace decharge
