#pragma once

#include <cstdint>
#include <vector>

#include "decharge/epos.hpp"
#include "decharge/objectives.hpp"
#include "decharge/rng.hpp"

namespace decharge {

/// Each agent takes its lowest-discomfort option (lowest station on ties).
std::vector<int> greedy_assign(const WindowProblem& problem);

/// Best unilateral move of one agent against the current state.
struct BestResponse {
  int option = 0;
  /// Cost decrease achieved by the move; 0 when the agent keeps its option.
  double gain = 0.0;
};
BestResponse best_response(const LoadState& state, std::size_t agent, double tolerance);

/// Neighbour lists taken from tree adjacency (parent and children).
std::vector<std::vector<int>> tree_neighbors(const TreeTopology& topology);

/// One MGM round: only agents whose gain beats every neighbour's (lower agent
/// index wins ties) move. Returns the number of agents that moved.
int mgm_round(const WindowProblem& problem, const std::vector<std::vector<int>>& neighbors,
              std::vector<int>& choice);

/// One COHDA-style round: agents act once each in a seeded order, adopting
/// their best response to the shared working configuration.
int cohda_round(const WindowProblem& problem, std::vector<int>& choice, Rng& rng);

struct BaselineResult {
  std::vector<int> choice;
  double cost = 0.0;
  std::vector<IterationTrace> trace;
};

BaselineResult run_mgm(const WindowProblem& problem, int max_rounds, std::uint64_t seed,
                       TreeStrategy strategy = TreeStrategy::kCentroid);
BaselineResult run_cohda(const WindowProblem& problem, int max_rounds, std::uint64_t seed);

/// True when no agent can lower the cost by more than `tolerance` alone.
bool is_local_optimum(const WindowProblem& problem, std::span<const int> choice,
                      double tolerance = 1e-9);

}  // namespace decharge
