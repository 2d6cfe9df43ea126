// Copyright 2026 The coopnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coopnet/dic.hpp"

#include <algorithm>
#include <limits>

namespace coopnet {

namespace {

void require_valid(const DiffusionGraph& graph) {
  auto violations = graph.validate();
  if (!violations.empty()) throw std::invalid_argument(violations.front());
}

// True when any still-reachable player sits at a different depth than in the
// truthful graph.
bool survivor_depth_changed(const DepthVector& truthful, const DiffusionGraph& pruned) {
  DepthVector after = pruned.depths();
  for (PlayerId i : pruned.active().members()) {
    if (after.at(i) != truthful.at(i)) return true;
  }
  return false;
}

std::vector<DeviationReport> deviations_for_player(
    const MechanismSpec& spec, const DiffusionGraph& graph, const Game& game,
    const MixedPermissionStructure& structure, const Allocation& truthful,
    const DepthVector& truthful_depths, PlayerId player) {
  std::vector<Edge> invitations = graph.out_edges(player);
  std::vector<DeviationReport> reports;
  if (invitations.empty()) return reports;
  const std::uint64_t subsets = std::uint64_t{1} << invitations.size();
  for (std::uint64_t pick = 1; pick < subsets; ++pick) {
    std::vector<Edge> withheld;
    for (std::size_t k = 0; k < invitations.size(); ++k) {
      if (pick & (std::uint64_t{1} << k)) withheld.push_back(invitations[k]);
    }
    DiffusionGraph pruned = graph.deduced(withheld);
    Allocation deviant =
        run_mechanism(spec, pruned, game, structure.restricted_to(pruned));
    DeviationReport report;
    report.player = player;
    report.withheld_edges = std::move(withheld);
    report.payoff_truthful = truthful.at(player);
    report.payoff_deviant = deviant.at(player);
    report.violation = report.payoff_deviant > report.payoff_truthful;
    report.survivor_depth_changed = survivor_depth_changed(truthful_depths, pruned);
    reports.push_back(std::move(report));
  }
  return reports;
}

std::uint64_t deviation_count(const DiffusionGraph& graph) {
  std::uint64_t total = 0;
  for (PlayerId i : graph.active().members()) {
    const std::size_t degree = graph.out_edges(i).size();
    if (degree >= 63) return std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t mine = (std::uint64_t{1} << degree) - 1;
    if (total > std::numeric_limits<std::uint64_t>::max() - mine) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total += mine;
  }
  return total;
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  return n == 0 ? 0 : rng() % n;
}

PermissionExpression random_condition(std::mt19937_64& rng, Coalition inviters,
                                      int depth) {
  std::vector<PlayerId> pool = inviters.members();
  if (pool.size() == 1 || depth >= 3 || bounded(rng, 100) < 40) {
    return PermissionExpression::atom(pool[bounded(rng, pool.size())]);
  }
  PermissionExpression left = random_condition(rng, inviters, depth + 1);
  PermissionExpression right = random_condition(rng, inviters, depth + 1);
  return bounded(rng, 2) ? PermissionExpression::conj(left, right)
                         : PermissionExpression::disj(left, right);
}

}  // namespace

BudgetExceeded::BudgetExceeded(std::uint64_t required_evaluations, std::uint64_t cap)
    : std::runtime_error("the full deviation sweep needs " +
                         std::to_string(required_evaluations) +
                         " mechanism evaluations, over the budget of " +
                         std::to_string(cap) +
                         "; raise the budget or check players individually"),
      required(required_evaluations),
      budget(cap) {}

EfficiencyCheck check_efficiency(const Allocation& allocation, const Game& game) {
  EfficiencyCheck check;
  check.allocated = allocation.total();
  check.grand_value = game.value(Coalition::full(game.n_players()));
  check.efficient = check.allocated == check.grand_value;
  return check;
}

std::vector<DeviationReport> check_dic_player(
    const MechanismSpec& spec, const DiffusionGraph& graph, const Game& game,
    const std::optional<MixedPermissionStructure>& structure, PlayerId player) {
  require_valid(graph);
  if (player < 0 || player >= graph.n_players()) {
    throw std::invalid_argument("player out of range");
  }
  MixedPermissionStructure resolved = structure ? *structure : natural_structure(graph);
  Allocation truthful = run_mechanism(spec, graph, game, resolved);
  return deviations_for_player(spec, graph, game, resolved, truthful,
                               graph.depths(), player);
}

DicReport check_dic(const MechanismSpec& spec, const DiffusionGraph& graph,
                    const Game& game,
                    const std::optional<MixedPermissionStructure>& structure,
                    std::uint64_t budget) {
  require_valid(graph);
  const std::uint64_t required = deviation_count(graph);
  if (required > budget) throw BudgetExceeded(required, budget);

  MixedPermissionStructure resolved = structure ? *structure : natural_structure(graph);
  DicReport report;
  report.mechanism = spec.describe();
  report.truthful = run_mechanism(spec, graph, game, resolved);
  report.efficiency = check_efficiency(report.truthful, game);
  try {
    report.game_monotone_warning = !is_monotone(game).holds;
  } catch (const std::exception&) {
    report.game_monotone_warning = true;  // cannot certify => warn
  }

  DepthVector truthful_depths = graph.depths();
  report.per_player_worst.assign(static_cast<std::size_t>(graph.n_players()),
                                 std::nullopt);
  for (PlayerId i = 0; i < graph.n_players(); ++i) {
    if (!graph.active().contains(i)) continue;
    std::vector<DeviationReport> mine = deviations_for_player(
        spec, graph, game, resolved, report.truthful, truthful_depths, i);
    for (DeviationReport& deviation : mine) {
      ++report.deviations_checked;
      if (deviation.survivor_depth_changed) ++report.depth_change_deviations;
      auto& worst = report.per_player_worst[static_cast<std::size_t>(i)];
      if (!worst || deviation.payoff_deviant - deviation.payoff_truthful >
                        worst->payoff_deviant - worst->payoff_truthful) {
        worst = deviation;
      }
      if (deviation.violation) report.violations.push_back(std::move(deviation));
    }
  }
  report.dic = report.violations.empty();
  return report;
}

DiffusionGraph random_tree_graph(std::mt19937_64& rng, int n_players, int max_depth) {
  if (n_players < 1) throw std::invalid_argument("need at least one player");
  std::vector<int> depth(static_cast<std::size_t>(n_players), 0);
  std::vector<Edge> edges;
  std::vector<PlayerId> eligible{0};
  for (PlayerId i = 1; i < n_players; ++i) {
    PlayerId parent = eligible[bounded(rng, eligible.size())];
    depth[static_cast<std::size_t>(i)] = depth[static_cast<std::size_t>(parent)] + 1;
    edges.push_back({parent, i});
    if (depth[static_cast<std::size_t>(i)] < max_depth) eligible.push_back(i);
  }
  return DiffusionGraph(n_players, GraphMode::Tree, Coalition().with(0),
                        std::move(edges));
}

DiffusionGraph random_layered_dag(std::mt19937_64& rng, int n_players) {
  if (n_players < 1) throw std::invalid_argument("need at least one player");
  std::vector<int> layer(static_cast<std::size_t>(n_players), 0);
  for (PlayerId i = 1; i < n_players; ++i) {
    // Player 1 always opens layer 1 so the graph has at least one edge.
    const bool advance = (i == 1) || bounded(rng, 2) == 1;
    layer[static_cast<std::size_t>(i)] =
        layer[static_cast<std::size_t>(i - 1)] + (advance ? 1 : 0);
  }
  Coalition initiators;
  std::vector<Edge> edges;
  for (PlayerId i = 0; i < n_players; ++i) {
    if (layer[static_cast<std::size_t>(i)] == 0) {
      initiators = initiators.with(i);
      continue;
    }
    std::vector<PlayerId> previous;
    for (PlayerId j = 0; j < n_players; ++j) {
      if (layer[static_cast<std::size_t>(j)] == layer[static_cast<std::size_t>(i)] - 1) {
        previous.push_back(j);
      }
    }
    bool any = false;
    for (PlayerId j : previous) {
      if (bounded(rng, 2) == 1) {
        edges.push_back({j, i});
        any = true;
      }
    }
    if (!any) edges.push_back({previous[bounded(rng, previous.size())], i});
  }
  std::sort(edges.begin(), edges.end());
  return DiffusionGraph(n_players, GraphMode::Dag, initiators, std::move(edges));
}

DiffusionGraph random_general_dag(std::mt19937_64& rng, int n_players) {
  if (n_players < 1) throw std::invalid_argument("need at least one player");
  std::vector<Edge> edges;
  for (PlayerId i = 1; i < n_players; ++i) {
    bool any = false;
    for (PlayerId j = 0; j < i; ++j) {
      if (bounded(rng, 2) == 1) {
        edges.push_back({j, i});
        any = true;
      }
    }
    if (!any) edges.push_back({static_cast<PlayerId>(bounded(rng, static_cast<std::uint64_t>(i))), i});
  }
  std::sort(edges.begin(), edges.end());
  return DiffusionGraph(n_players, GraphMode::Dag, Coalition().with(0),
                        std::move(edges));
}

Game random_game(std::mt19937_64& rng, int n_players, bool nonnegative) {
  if (n_players < 1 || n_players > kMaxTablePlayers) {
    throw std::invalid_argument("player count out of range for random games");
  }
  const std::uint64_t coalitions = (std::uint64_t{1} << n_players) - 1;
  const std::uint64_t entries = 1 + bounded(rng, static_cast<std::uint64_t>(2 * n_players));
  DividendMap d;
  for (std::uint64_t t = 0; t < entries; ++t) {
    Coalition support(1 + bounded(rng, coalitions));
    Rational dividend(static_cast<long>(1 + bounded(rng, 6)),
                      static_cast<long>(1 + bounded(rng, 4)));
    if (!nonnegative && bounded(rng, 2) == 1) dividend = -dividend;
    d.add(support, dividend);
  }
  if (d.entries().empty()) d.add(Coalition().with(0), Rational(1));
  return game_from_dividends(d, n_players);
}

Weights random_weights(std::mt19937_64& rng, int n_players) {
  Weights weights = Weights::ones(n_players);
  for (auto& w : weights.w) {
    w = Rational(static_cast<long>(1 + bounded(rng, 5)),
                 static_cast<long>(1 + bounded(rng, 3)));
  }
  return weights;
}

MixedPermissionStructure random_structure(std::mt19937_64& rng,
                                          const DiffusionGraph& graph) {
  std::map<PlayerId, PermissionExpression> overrides;
  for (PlayerId i : graph.active().members()) {
    Coalition inviters = graph.in_neighbors(i);
    if (inviters.is_empty()) continue;
    overrides.emplace(i, random_condition(rng, inviters, 0));
  }
  return MixedPermissionStructure::with_conditions(graph, overrides);
}

SweepSummary random_dic_sweep(const MechanismSpec& spec, int n_players,
                              int n_trials, std::uint64_t seed,
                              std::optional<StructureSource> source) {
  if (n_players > 8) {
    throw std::invalid_argument("random sweeps are limited to 8 players");
  }
  const StructureSource resolved_source = source.value_or(
      spec.mode == MechanismSpec::Mode::DagFamily ? StructureSource::RandomLayeredDag
                                                  : StructureSource::RandomTree);
  std::mt19937_64 rng(seed);
  SweepSummary summary;
  for (int trial = 0; trial < n_trials; ++trial) {
    DiffusionGraph graph = [&] {
      switch (resolved_source) {
        case StructureSource::RandomTree:
          return random_tree_graph(rng, n_players);
        case StructureSource::RandomLayeredDag:
          return random_layered_dag(rng, n_players);
        case StructureSource::RandomGeneralDag:
          return random_general_dag(rng, n_players);
      }
      throw std::logic_error("unreachable structure source");
    }();
    MixedPermissionStructure structure =
        resolved_source == StructureSource::RandomTree ? natural_structure(graph)
                                                       : random_structure(rng, graph);
    Game game = random_game(rng, n_players, /*nonnegative=*/true);
    DicReport report = check_dic(spec, graph, game, structure);
    ++summary.trials;
    summary.deviations_checked += report.deviations_checked;
    summary.depth_change_deviations += report.depth_change_deviations;
    if (!report.dic) {
      ++summary.instances_with_violation;
      summary.counterexamples.push_back(SweepCounterexample{
          trial, graph, game, structure, report.violations.front()});
    }
  }
  return summary;
}

SweepSummary random_games_dic_sweep(const MechanismSpec& spec,
                                    const DiffusionGraph& graph,
                                    const MixedPermissionStructure& structure,
                                    int n_trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SweepSummary summary;
  for (int trial = 0; trial < n_trials; ++trial) {
    Game game = random_game(rng, graph.n_players(), /*nonnegative=*/true);
    DicReport report = check_dic(spec, graph, game, structure);
    ++summary.trials;
    summary.deviations_checked += report.deviations_checked;
    summary.depth_change_deviations += report.depth_change_deviations;
    if (!report.dic) {
      ++summary.instances_with_violation;
      summary.counterexamples.push_back(SweepCounterexample{
          trial, graph, game, structure, report.violations.front()});
    }
  }
  return summary;
}

}  // namespace coopnet
