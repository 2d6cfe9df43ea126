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

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "coopnet/mechanism.hpp"

namespace coopnet {

// One deviation: player `player` withholds the invitations `withheld_edges`,
// the instance is re-derived, and the player's payoff is recomputed from
// scratch. A violation means withholding paid strictly more than honesty.
// `survivor_depth_changed` marks deviations where some still-reachable
// player's depth moved — the regime where depth-based weights can shift and
// incentive guarantees require care.
struct DeviationReport {
  PlayerId player = -1;
  std::vector<Edge> withheld_edges;
  Rational payoff_truthful;
  Rational payoff_deviant;
  bool violation = false;
  bool survivor_depth_changed = false;
};

// Exact efficiency check of one allocation against one game.
struct EfficiencyCheck {
  Rational allocated;
  Rational grand_value;
  bool efficient = false;
};

// Aggregate verdict over every single-player deviation of an instance.
struct DicReport {
  std::string mechanism;
  EfficiencyCheck efficiency;
  Allocation truthful;
  // Index = player; empty when the player has no out-edges to withhold.
  std::vector<std::optional<DeviationReport>> per_player_worst;
  std::vector<DeviationReport> violations;
  std::uint64_t deviations_checked = 0;
  std::uint64_t depth_change_deviations = 0;
  bool dic = false;
  // Incentive guarantees are only claimed for monotone games; a non-monotone
  // input is still checked, with this flag raised for the caller to surface.
  bool game_monotone_warning = false;
};

// check_dic refuses instances whose full deviation enumeration would exceed
// the evaluation budget; `required` carries the exact count.
struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(std::uint64_t required_evaluations, std::uint64_t budget);
  std::uint64_t required;
  std::uint64_t budget;
};

inline constexpr std::uint64_t kDefaultDeviationBudget = std::uint64_t{1} << 20;

// Exact rational test: does the allocation hand out exactly the grand
// coalition's worth?
EfficiencyCheck check_efficiency(const Allocation& allocation, const Game& game);

// Every nonempty subset of `player`'s out-edges, each evaluated by deriving
// the pruned instance (graph, game mask, permission structure) and running
// the mechanism again. Sorted by (player, edge set).
std::vector<DeviationReport> check_dic_player(
    const MechanismSpec& spec, const DiffusionGraph& graph, const Game& game,
    const std::optional<MixedPermissionStructure>& structure, PlayerId player);

// Full single-player deviation sweep: number of mechanism evaluations is
// sum_i (2^outdeg(i) - 1); throws BudgetExceeded beyond `budget` (callers
// can fall back to check_dic_player). Also checks efficiency of the
// truthful allocation.
DicReport check_dic(const MechanismSpec& spec, const DiffusionGraph& graph,
                    const Game& game,
                    const std::optional<MixedPermissionStructure>& structure =
                        std::nullopt,
                    std::uint64_t budget = kDefaultDeviationBudget);

// ---- Random instance generation (deterministic per seed) ----------------

// Random invitation tree: player 0 initiates, every later player is invited
// by an earlier one whose depth is below max_depth.
DiffusionGraph random_tree_graph(std::mt19937_64& rng, int n_players,
                                 int max_depth = 5);

// Random layered DAG: players are split into consecutive layers and every
// in-edge comes from the immediately previous layer, so every player's depth
// equals their layer and stays put under any deviation that leaves them
// reachable.
DiffusionGraph random_layered_dag(std::mt19937_64& rng, int n_players);

// Random unrestricted DAG: player i's inviters form a nonempty subset of
// {0..i-1}. Withholding edges here can deepen survivors, so depth-dependent
// weights may shift under deviation.
DiffusionGraph random_general_dag(std::mt19937_64& rng, int n_players);

// Random monotone game as sparse nonnegative interaction dividends
// (nonnegative dividends make every marginal contribution nonnegative).
// With `nonnegative` false, dividends may be negative and monotonicity is
// not guaranteed.
Game random_game(std::mt19937_64& rng, int n_players, bool nonnegative = true);

// Random positive weights.
Weights random_weights(std::mt19937_64& rng, int n_players);

// Random mixed permission structure over the graph's in-edges: each invitee
// gets a random AND/OR tree over (a subset of) their inviters.
MixedPermissionStructure random_structure(std::mt19937_64& rng,
                                          const DiffusionGraph& graph);

// Topology source for sweeps. Trees and layered DAGs keep every survivor's
// depth fixed under deviations; general DAGs do not, and are offered for
// exploration rather than assertion.
enum class StructureSource { RandomTree, RandomLayeredDag, RandomGeneralDag };

struct SweepCounterexample {
  int trial_index = 0;
  DiffusionGraph graph;
  Game game;
  MixedPermissionStructure structure;
  DeviationReport deviation;
};

struct SweepSummary {
  int trials = 0;
  int instances_with_violation = 0;
  std::uint64_t deviations_checked = 0;
  std::uint64_t depth_change_deviations = 0;
  std::vector<SweepCounterexample> counterexamples;
};

// Runs check_dic over `n_trials` random instances (topology from `source`,
// random monotone game, random mixed structure on DAG sources). Every
// violation is returned with the full instance for reproduction. Defaults
// the source by mechanism mode: trees for tree-family mechanisms, layered
// DAGs for the DAG family.
SweepSummary random_dic_sweep(const MechanismSpec& spec, int n_players,
                              int n_trials, std::uint64_t seed,
                              std::optional<StructureSource> source = std::nullopt);

// The same sweep on one fixed topology and structure, randomizing only the
// (monotone) game.
SweepSummary random_games_dic_sweep(const MechanismSpec& spec,
                                    const DiffusionGraph& graph,
                                    const MixedPermissionStructure& structure,
                                    int n_trials, std::uint64_t seed);

}  // namespace coopnet
