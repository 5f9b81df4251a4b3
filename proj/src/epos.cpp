#include "decharge/epos.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "decharge/rng.hpp"

namespace decharge {

namespace {

// Changes smaller than this (relative to the window cost) count as ties.
constexpr double kRelTolerance = 1e-9;

using BranchDelta = std::vector<std::pair<int, int>>;  // (agent, new option)

void apply_delta(LoadState& state, const BranchDelta& delta) {
  for (const auto& [agent, k] : delta) state.move(static_cast<std::size_t>(agent), k);
}

void revert_delta(LoadState& state, const BranchDelta& delta, const std::vector<int>& previous) {
  for (auto it = delta.rbegin(); it != delta.rend(); ++it) {
    state.move(static_cast<std::size_t>(it->first), previous[static_cast<std::size_t>(it->first)]);
  }
}

}  // namespace

std::vector<int> TreeTopology::children(int position) const {
  std::vector<int> out;
  for (int c : {2 * position + 1, 2 * position + 2}) {
    if (c < static_cast<int>(agent_at.size())) out.push_back(c);
  }
  return out;
}

int TreeTopology::depth() const noexcept {
  int d = 0;
  for (std::size_t n = agent_at.size(); n > 0; n >>= 1) ++d;
  return d;
}

std::optional<TreeTopology> build_tree(std::span<const ChargingRequest> agents,
                                       std::uint64_t seed, TreeStrategy strategy) {
  if (agents.empty()) return std::nullopt;
  const std::size_t n = agents.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  if (strategy == TreeStrategy::kPureRandom) {
    rng.shuffle(std::span(order));
  } else {
    double cx = 0.0;
    double cy = 0.0;
    for (const auto& a : agents) {
      cx += a.location.x_km;
      cy += a.location.y_km;
    }
    const GeoPoint centroid{cx / static_cast<double>(n), cy / static_cast<double>(n)};
    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) dist[i] = distance_km(agents[i].location, centroid);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return dist[static_cast<std::size_t>(a)] < dist[static_cast<std::size_t>(b)]; });
    // At least two agents per block so that small windows still vary.
    const std::size_t block = std::max<std::size_t>(4, (n + 3) / 4);
    for (std::size_t start = 0; start < n; start += block) {
      const std::size_t len = std::min(block, n - start);
      rng.shuffle(std::span(order).subspan(start, len));
    }
  }
  TreeTopology t;
  t.seed = seed;
  t.agent_at = std::move(order);
  t.position_of.assign(n, 0);
  for (std::size_t p = 0; p < n; ++p) t.position_of[static_cast<std::size_t>(t.agent_at[p])] = static_cast<int>(p);
  return t;
}

IterationTrace run_iteration(const TreeTopology& topology, const WindowProblem& problem,
                             std::vector<int>& choice, int iteration,
                             std::vector<AgentState>* states) {
  const std::size_t n = topology.size();
  if (n != problem.num_agents() || choice.size() != n) {
    throw std::invalid_argument("run_iteration: topology, problem and choice disagree");
  }
  const std::vector<int> previous = choice;
  LoadState work(problem, previous);
  const double base_cost = work.cost();
  const double tol = kRelTolerance * std::max(1.0, std::abs(base_cost));

  // branch[p]: changes inside the subtree of position p that survived the
  // approvals made below p. approval[p]: decision of p's parent on p's branch.
  std::vector<BranchDelta> branch(n);
  std::vector<char> approval(n, 1);

  for (int p = static_cast<int>(n) - 1; p >= 0; --p) {
    std::vector<int> changed;
    for (int c : topology.children(p)) {
      if (!branch[static_cast<std::size_t>(c)].empty()) changed.push_back(c);
    }

    // Choose the approval vector for the changed children together with the
    // own selection, minimizing the global cost against the previous plan.
    // Keeping everything as before is the reference; any change must beat it
    // by more than the tolerance. Ties keep the incumbent, then the lowest
    // option index.
    const auto agent = static_cast<std::size_t>(topology.agent_at[static_cast<std::size_t>(p)]);
    const int current = previous[agent];
    unsigned best_mask = 0;
    int best_k = current;
    double best_cost = base_cost;
    const unsigned masks = 1u << changed.size();
    for (unsigned mask = 0; mask < masks; ++mask) {
      for (std::size_t i = 0; i < changed.size(); ++i) {
        if (mask >> i & 1u) apply_delta(work, branch[static_cast<std::size_t>(changed[i])]);
      }
      const double with_children = mask ? work.cost() : base_cost;
      if (with_children < best_cost - tol) {
        best_cost = with_children;
        best_mask = mask;
        best_k = current;
      }
      for (int k = 0; k < static_cast<int>(problem.num_options(agent)); ++k) {
        if (k == current) continue;
        const double c = with_children + work.delta_move(agent, k);
        if (c < best_cost - tol) {
          best_cost = c;
          best_mask = mask;
          best_k = k;
        }
      }
      for (std::size_t i = changed.size(); i-- > 0;) {
        if (mask >> i & 1u) revert_delta(work, branch[static_cast<std::size_t>(changed[i])], previous);
      }
    }

    BranchDelta own_branch;
    for (std::size_t i = 0; i < changed.size(); ++i) {
      const auto c = static_cast<std::size_t>(changed[i]);
      approval[c] = static_cast<char>(best_mask >> i & 1u);
      if (approval[c]) own_branch.insert(own_branch.end(), branch[c].begin(), branch[c].end());
    }
    if (best_k != current) own_branch.emplace_back(static_cast<int>(agent), best_k);
    branch[static_cast<std::size_t>(p)] = std::move(own_branch);
  }

  // Top-down: the root's branch is the approved global plan.
  for (const auto& [agent, k] : branch[0]) choice[static_cast<std::size_t>(agent)] = k;

  if (states) {
    states->assign(n, AgentState{});
    std::vector<char> chain(n, 1);
    for (std::size_t p = 0; p < n; ++p) {
      if (p > 0) chain[p] = static_cast<char>(chain[static_cast<std::size_t>(topology.parent(static_cast<int>(p)))] && approval[p]);
      const auto agent = static_cast<std::size_t>(topology.agent_at[p]);
      (*states)[agent] = {choice[agent], previous[agent], chain[p] != 0};
    }
  }

  IterationTrace trace;
  trace.iteration = iteration;
  trace.num_changes = static_cast<int>(branch[0].size());
  trace.global_cost = problem.cost(choice);
  return trace;
}

std::vector<int> construct_plan(const TreeTopology& topology, const WindowProblem& problem) {
  const std::size_t n = topology.size();
  if (n != problem.num_agents()) throw std::invalid_argument("construct_plan: topology and problem disagree");
  const std::size_t stations = problem.num_stations();
  std::vector<int> choice(n, 0);
  std::vector<std::vector<int>> subtree(n);
  std::vector<std::vector<int>> at(stations);
  std::vector<Minutes> queue(stations, 0.0);
  std::vector<Minutes> scratch;
  std::vector<int> with_agent;

  for (int p = static_cast<int>(n) - 1; p >= 0; --p) {
    auto& members = subtree[static_cast<std::size_t>(p)];
    for (int c : topology.children(p)) {
      auto& sub = subtree[static_cast<std::size_t>(c)];
      members.insert(members.end(), sub.begin(), sub.end());
      std::vector<int>().swap(sub);
    }
    std::sort(members.begin(), members.end());

    // Cost terms of the subtree without this agent.
    double weighted_o1 = 0.0;
    double o2_weight = 0.0;
    for (auto& v : at) v.clear();
    for (int a : members) {
      const auto i = static_cast<std::size_t>(a);
      const auto& k = problem.option(i, static_cast<std::size_t>(choice[i]));
      at[static_cast<std::size_t>(k.station)].push_back(a);
      weighted_o1 += problem.beta(i) * k.discomfort;
      o2_weight += 1.0 - problem.beta(i);
    }
    double sum_sq = 0.0;
    for (std::size_t m = 0; m < stations; ++m) {
      queue[m] = at[m].empty() ? 0.0 : problem.station_queue(m, at[m], choice, scratch);
      sum_sq += queue[m] * queue[m];
    }

    const int agent = topology.agent_at[static_cast<std::size_t>(p)];
    const auto ai = static_cast<std::size_t>(agent);
    const double beta = problem.beta(ai);
    int best_k = 0;
    double best = 0.0;
    for (int k = 0; k < static_cast<int>(problem.num_options(ai)); ++k) {
      const auto& opt = problem.option(ai, static_cast<std::size_t>(k));
      const auto m = static_cast<std::size_t>(opt.station);
      choice[ai] = k;
      with_agent = at[m];
      with_agent.insert(std::upper_bound(with_agent.begin(), with_agent.end(), agent), agent);
      const double q = problem.station_queue(m, with_agent, choice, scratch);
      const double sq = std::max(0.0, sum_sq - queue[m] * queue[m] + q * q);
      const double o2 = stations ? std::sqrt(sq / static_cast<double>(stations)) : 0.0;
      const double cost = weighted_o1 + beta * opt.discomfort + (o2_weight + 1.0 - beta) * o2;
      if (k == 0 || cost < best - kRelTolerance * std::max(1.0, std::abs(best))) {
        best = cost;
        best_k = k;
      }
    }
    choice[ai] = best_k;
    members.insert(std::upper_bound(members.begin(), members.end(), agent), agent);
  }
  return choice;
}

std::vector<int> initial_choice(const WindowProblem& problem) {
  return std::vector<int>(problem.num_agents(), 0);
}

CoordinationResult run_coordination(const WindowProblem& problem, const EposConfig& config,
                                    std::uint64_t seed) {
  if (config.repetitions < 1 || config.max_iterations < 0) {
    throw std::invalid_argument("run_coordination: need repetitions >= 1, iterations >= 0");
  }
  CoordinationResult result;
  result.choice = initial_choice(problem);
  result.cost = problem.cost(result.choice);
  if (problem.num_agents() == 0) return result;

  for (int r = 0; r < config.repetitions; ++r) {
    const auto topology =
        build_tree(problem.agents(), derive_seed(seed, SeedTag::kRepetition, static_cast<std::uint64_t>(r)),
                   config.strategy);
    auto choice = initial_choice(problem);
    std::vector<IterationTrace> trace{{0, problem.cost(choice), 0}};
    for (int it = 1; it <= config.max_iterations; ++it) {
      if (it == 1) {
        // No plan has been broadcast yet: the first pass is built from the
        // subtree aggregates alone and kept only if it beats the start.
        auto built = construct_plan(*topology, problem);
        const double cost = problem.cost(built);
        if (cost < trace[0].global_cost - kRelTolerance * std::max(1.0, std::abs(trace[0].global_cost))) {
          int changes = 0;
          for (std::size_t a = 0; a < built.size(); ++a) changes += built[a] != choice[a];
          choice = std::move(built);
          trace.push_back({it, cost, changes});
          continue;
        }
      }
      trace.push_back(run_iteration(*topology, problem, choice, it));
      if (trace.back().num_changes == 0) break;
    }
    const double final_cost = trace.back().global_cost;
    if (r == 0 || final_cost < result.cost) {
      result.cost = final_cost;
      result.choice = choice;
      result.best_repetition = r;
    }
    result.traces.push_back(std::move(trace));
  }
  return result;
}

}  // namespace decharge
