#include "decharge/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace decharge {

namespace {

constexpr double kRelTolerance = 1e-9;

double tolerance_for(double cost) { return kRelTolerance * std::max(1.0, std::abs(cost)); }

}  // namespace

std::vector<int> greedy_assign(const WindowProblem& problem) {
  std::vector<int> choice(problem.num_agents(), 0);
  for (std::size_t a = 0; a < problem.num_agents(); ++a) {
    int best = 0;
    for (int k = 1; k < static_cast<int>(problem.num_options(a)); ++k) {
      const auto& cand = problem.option(a, static_cast<std::size_t>(k));
      const auto& inc = problem.option(a, static_cast<std::size_t>(best));
      if (cand.discomfort < inc.discomfort ||
          (cand.discomfort == inc.discomfort && cand.station < inc.station)) {
        best = k;
      }
    }
    choice[a] = best;
  }
  return choice;
}

BestResponse best_response(const LoadState& state, std::size_t agent, double tolerance) {
  const int current = state.choice()[agent];
  BestResponse br{current, 0.0};
  const auto options = static_cast<int>(state.problem().num_options(agent));
  for (int k = 0; k < options; ++k) {
    if (k == current) continue;
    const double gain = -state.delta_move(agent, k);
    if (gain > br.gain + tolerance) br = {k, gain};
  }
  return br;
}

std::vector<std::vector<int>> tree_neighbors(const TreeTopology& topology) {
  std::vector<std::vector<int>> out(topology.size());
  for (std::size_t p = 1; p < topology.size(); ++p) {
    const int child = topology.agent_at[p];
    const int parent = topology.agent_at[static_cast<std::size_t>(topology.parent(static_cast<int>(p)))];
    out[static_cast<std::size_t>(child)].push_back(parent);
    out[static_cast<std::size_t>(parent)].push_back(child);
  }
  for (auto& n : out) std::sort(n.begin(), n.end());
  return out;
}

int mgm_round(const WindowProblem& problem, const std::vector<std::vector<int>>& neighbors,
              std::vector<int>& choice) {
  const LoadState state(problem, choice);
  const double before = state.cost();
  const double tol = tolerance_for(before);
  const std::size_t n = problem.num_agents();
  std::vector<BestResponse> br(n);
  for (std::size_t a = 0; a < n; ++a) br[a] = best_response(state, a, tol);

  auto beats = [&](std::size_t a, std::size_t b) {
    return br[a].gain > br[b].gain + tol || (br[a].gain >= br[b].gain - tol && a < b);
  };
  std::vector<std::size_t> winners;
  for (std::size_t a = 0; a < n; ++a) {
    if (br[a].option == choice[a]) continue;
    bool wins = true;
    for (int b : neighbors[a]) {
      if (!beats(a, static_cast<std::size_t>(b))) {
        wins = false;
        break;
      }
    }
    if (wins) winners.push_back(a);
  }
  if (winners.empty()) return 0;

  auto candidate = choice;
  for (auto a : winners) candidate[a] = br[a].option;
  if (problem.cost(candidate) <= before) {
    choice = std::move(candidate);
    return static_cast<int>(winners.size());
  }
  // Non-adjacent winners interact through the shared queue term; fall back to
  // the single largest gain, which alone is a guaranteed improvement.
  const auto top = *std::max_element(winners.begin(), winners.end(), [&](auto x, auto y) {
    return br[x].gain < br[y].gain || (br[x].gain == br[y].gain && x > y);
  });
  choice[top] = br[top].option;
  return 1;
}

int cohda_round(const WindowProblem& problem, std::vector<int>& choice, Rng& rng) {
  LoadState state(problem, choice);
  const double tol = tolerance_for(state.cost());
  std::vector<std::size_t> order(problem.num_agents());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span(order));
  int changes = 0;
  for (auto a : order) {
    const auto br = best_response(state, a, tol);
    if (br.option != state.choice()[a]) {
      state.move(a, br.option);
      ++changes;
    }
  }
  choice = state.choice();
  return changes;
}

BaselineResult run_mgm(const WindowProblem& problem, int max_rounds, std::uint64_t seed,
                       TreeStrategy strategy) {
  BaselineResult result;
  result.choice = greedy_assign(problem);
  result.trace.push_back({0, problem.cost(result.choice), 0});
  const auto topology = build_tree(problem.agents(), derive_seed(seed, SeedTag::kBaseline, 0), strategy);
  if (topology) {
    const auto neighbors = tree_neighbors(*topology);
    for (int round = 1; round <= max_rounds; ++round) {
      const int changes = mgm_round(problem, neighbors, result.choice);
      result.trace.push_back({round, problem.cost(result.choice), changes});
      if (changes == 0) break;
    }
  }
  result.cost = result.trace.back().global_cost;
  return result;
}

BaselineResult run_cohda(const WindowProblem& problem, int max_rounds, std::uint64_t seed) {
  BaselineResult result;
  result.choice = greedy_assign(problem);
  result.trace.push_back({0, problem.cost(result.choice), 0});
  Rng rng(derive_seed(seed, SeedTag::kBaseline, 1));
  for (int round = 1; round <= max_rounds && problem.num_agents() > 0; ++round) {
    const int changes = cohda_round(problem, result.choice, rng);
    result.trace.push_back({round, problem.cost(result.choice), changes});
    if (changes == 0) break;
  }
  result.cost = result.trace.back().global_cost;
  return result;
}

bool is_local_optimum(const WindowProblem& problem, std::span<const int> choice,
                      double tolerance) {
  const LoadState state(problem, std::vector<int>(choice.begin(), choice.end()));
  const double tol = tolerance * std::max(1.0, std::abs(state.cost()));
  for (std::size_t a = 0; a < problem.num_agents(); ++a) {
    if (best_response(state, a, tol).option != choice[a]) return false;
  }
  return true;
}

}  // namespace decharge
