#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "decharge/objectives.hpp"

namespace decharge {

enum class TreeStrategy {
  /// Sort by distance to the window centroid, then shuffle inside quartile blocks.
  kCentroid,
  kPureRandom,
};

/// Complete binary tree over agents, filled in level order. Position p has
/// children 2p+1 and 2p+2; position 0 is the root.
struct TreeTopology {
  std::vector<int> agent_at;     // position -> agent
  std::vector<int> position_of;  // agent -> position
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return agent_at.size(); }
  int parent(int position) const noexcept { return position == 0 ? -1 : (position - 1) / 2; }
  std::vector<int> children(int position) const;
  int depth() const noexcept;
};

/// Returns nullopt for an empty window (coordination is skipped).
std::optional<TreeTopology> build_tree(std::span<const ChargingRequest> agents,
                                       std::uint64_t seed,
                                       TreeStrategy strategy = TreeStrategy::kCentroid);

struct IterationTrace {
  int iteration = 0;
  double global_cost = 0.0;
  int num_changes = 0;
};

struct AgentState {
  int selected = 0;
  int previous = 0;
  /// Product of approvals along the path to the root.
  bool approved = true;
};

/// One bottom-up/top-down pass. `choice` holds the previous global plan on
/// entry and the approved plan on return. When `states` is non-null it is
/// filled per agent.
IterationTrace run_iteration(const TreeTopology& topology, const WindowProblem& problem,
                             std::vector<int>& choice, int iteration,
                             std::vector<AgentState>* states = nullptr);

struct EposConfig {
  int max_iterations = 40;
  int repetitions = 40;
  TreeStrategy strategy = TreeStrategy::kCentroid;
};

struct CoordinationResult {
  std::vector<int> choice;
  double cost = 0.0;
  int best_repetition = 0;
  /// traces[r] starts with the iteration-0 (initial) cost.
  std::vector<std::vector<IterationTrace>> traces;
};

/// Plan built bottom-up in one pass where each agent picks its best option
/// against the selections of its own subtree only (no global context yet).
std::vector<int> construct_plan(const TreeTopology& topology, const WindowProblem& problem);

/// Lowest-discomfort option per agent (options are sorted, so index 0).
std::vector<int> initial_choice(const WindowProblem& problem);

/// Restarted collective learning from the lowest-discomfort start. The first
/// iteration of each repetition uses construct_plan when that lowers the cost,
/// later ones run_iteration. Keeps the repetition with the lowest final cost
/// (earliest on ties).
CoordinationResult run_coordination(const WindowProblem& problem, const EposConfig& config,
                                    std::uint64_t seed);

}  // namespace decharge
