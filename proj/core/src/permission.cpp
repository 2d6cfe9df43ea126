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

#include "coopnet/permission.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace coopnet {

namespace {

std::vector<Coalition> in_neighbor_masks(const DiffusionGraph& graph) {
  std::vector<Coalition> masks(static_cast<std::size_t>(graph.n_players()));
  for (const Edge& e : graph.edges()) {
    masks[static_cast<std::size_t>(e.to)] =
        masks[static_cast<std::size_t>(e.to)].with(e.from);
  }
  return masks;
}

PermissionExpression default_condition(Coalition superiors, bool disjunctive) {
  if (superiors.is_empty()) return PermissionExpression::always_true();
  return disjunctive ? PermissionExpression::any_of(superiors)
                     : PermissionExpression::all_of(superiors);
}

}  // namespace

MixedPermissionStructure::MixedPermissionStructure(
    int n, Coalition active, std::vector<Coalition> authored,
    std::vector<Coalition> live, std::vector<PermissionExpression> conditions)
    : n_(n),
      active_(active),
      authored_superiors_(std::move(authored)),
      live_superiors_(std::move(live)),
      conditions_(std::move(conditions)) {}

MixedPermissionStructure MixedPermissionStructure::from_tree(
    const DiffusionGraph& graph) {
  if (graph.mode() != GraphMode::Tree) {
    throw std::invalid_argument(
        "from_tree requires a Tree-mode graph; use disjunctive/conjunctive/"
        "with_conditions for general acyclic graphs");
  }
  return disjunctive(graph);  // one in-neighbor each: OR of one atom == Atom(parent)
}

MixedPermissionStructure MixedPermissionStructure::disjunctive(
    const DiffusionGraph& graph) {
  return with_conditions(graph, {});
}

MixedPermissionStructure MixedPermissionStructure::conjunctive(
    const DiffusionGraph& graph) {
  auto violations = graph.validate();
  if (!violations.empty()) throw std::invalid_argument(violations.front());
  auto superiors = in_neighbor_masks(graph);
  std::vector<PermissionExpression> conditions;
  conditions.reserve(superiors.size());
  for (Coalition s : superiors) conditions.push_back(default_condition(s, false));
  return MixedPermissionStructure(graph.n_players(), graph.active(), superiors,
                                  superiors, std::move(conditions));
}

MixedPermissionStructure MixedPermissionStructure::with_conditions(
    const DiffusionGraph& graph,
    const std::map<PlayerId, PermissionExpression>& overrides) {
  auto violations = graph.validate();
  if (!violations.empty()) throw std::invalid_argument(violations.front());
  auto superiors = in_neighbor_masks(graph);
  std::vector<PermissionExpression> conditions;
  conditions.reserve(superiors.size());
  for (PlayerId i = 0; i < graph.n_players(); ++i) {
    auto it = overrides.find(i);
    if (it == overrides.end()) {
      conditions.push_back(default_condition(superiors[static_cast<std::size_t>(i)], true));
      continue;
    }
    const PermissionExpression& expr = it->second;
    Coalition atom_set = expr.atoms();
    Coalition allowed = superiors[static_cast<std::size_t>(i)];
    if (allowed.is_empty()) {
      throw std::invalid_argument("player " + std::to_string(i) +
                                  " has no inviters and cannot carry a permission condition");
    }
    if (!atom_set.subset_of(allowed)) {
      throw std::invalid_argument("permission condition for player " + std::to_string(i) +
                                  " names a non-inviter");
    }
    if (expr.kind() == PermissionExpression::Kind::AlwaysTrue) {
      throw std::invalid_argument("player " + std::to_string(i) +
                                  " has inviters and must carry a real condition");
    }
    conditions.push_back(expr);
  }
  return MixedPermissionStructure(graph.n_players(), graph.active(), superiors,
                                  superiors, std::move(conditions));
}

MixedPermissionStructure MixedPermissionStructure::from_parts(
    int n_players, std::vector<Coalition> superiors,
    std::vector<PermissionExpression> conditions) {
  if (n_players < 1 || n_players > kMaxPlayers) {
    throw std::invalid_argument("player count out of range");
  }
  auto n = static_cast<std::size_t>(n_players);
  if (superiors.size() != n || conditions.size() != n) {
    throw std::invalid_argument("need one superior set and one condition per player");
  }
  Coalition everyone = Coalition::full(n_players);
  for (PlayerId i = 0; i < n_players; ++i) {
    Coalition s = superiors[static_cast<std::size_t>(i)];
    if (!s.subset_of(everyone) || s.contains(i)) {
      throw std::invalid_argument("superior set of player " + std::to_string(i) +
                                  " is out of range or self-referential");
    }
    for (PlayerId j : s.members()) {
      if (superiors[static_cast<std::size_t>(j)].contains(i)) {
        throw std::invalid_argument("superior relation is not asymmetric between players " +
                                    std::to_string(i) + " and " + std::to_string(j));
      }
    }
    const PermissionExpression& expr = conditions[static_cast<std::size_t>(i)];
    bool free_player = s.is_empty();
    if (free_player != (expr.kind() == PermissionExpression::Kind::AlwaysTrue)) {
      throw std::invalid_argument("player " + std::to_string(i) +
                                  (free_player ? " has no superiors and must need no permission"
                                               : " has superiors and must carry a condition"));
    }
    if (!expr.atoms().subset_of(s)) {
      throw std::invalid_argument("condition for player " + std::to_string(i) +
                                  " names a non-superior");
    }
  }
  // Acyclicity via Kahn's algorithm on the superior relation.
  std::vector<int> pending(n, 0);
  for (PlayerId i = 0; i < n_players; ++i) {
    pending[static_cast<std::size_t>(i)] =
        static_cast<int>(superiors[static_cast<std::size_t>(i)].size());
  }
  std::vector<PlayerId> queue;
  for (PlayerId i = 0; i < n_players; ++i) {
    if (pending[static_cast<std::size_t>(i)] == 0) queue.push_back(i);
  }
  std::size_t seen = 0;
  while (seen < queue.size()) {
    PlayerId u = queue[seen++];
    for (PlayerId w = 0; w < n_players; ++w) {
      if (superiors[static_cast<std::size_t>(w)].contains(u) &&
          --pending[static_cast<std::size_t>(w)] == 0) {
        queue.push_back(w);
      }
    }
  }
  if (seen != n) throw std::invalid_argument("superior relation contains a cycle");
  return MixedPermissionStructure(n_players, everyone, superiors, superiors,
                                  std::move(conditions));
}

MixedPermissionStructure MixedPermissionStructure::restricted_to(
    const DiffusionGraph& graph) const {
  if (graph.n_players() != n_) {
    throw std::invalid_argument("graph player count does not match the structure");
  }
  auto live = in_neighbor_masks(graph);
  for (PlayerId i = 0; i < n_; ++i) {
    if (!live[static_cast<std::size_t>(i)].subset_of(authored_superiors_[static_cast<std::size_t>(i)])) {
      throw std::invalid_argument("graph grants player " + std::to_string(i) +
                                  " an inviter the structure never authorized");
    }
  }
  return MixedPermissionStructure(n_, graph.active(), authored_superiors_, live,
                                  conditions_);
}

bool MixedPermissionStructure::is_autonomous(Coalition e) const {
  if (!e.subset_of(active_)) return false;
  for (PlayerId i : e.members()) {
    if (!conditions_[static_cast<std::size_t>(i)].eval(e, live_superiors_[static_cast<std::size_t>(i)])) {
      return false;
    }
  }
  return true;
}

bool AutonomyOracle::is_autonomous(Coalition e) {
  return autonomous_part(e) == e;
}

Coalition AutonomyOracle::autonomous_part(Coalition e) {
  auto it = alpha_.find(e.bits());
  if (it != alpha_.end()) return Coalition(it->second);
  Coalition part = coopnet::autonomous_part(e, structure_);
  alpha_.emplace(e.bits(), part.bits());
  return part;
}

bool is_autonomous(Coalition e, const MixedPermissionStructure& structure) {
  return structure.is_autonomous(e);
}

Coalition autonomous_part(Coalition e, const MixedPermissionStructure& structure) {
  Coalition work = e & structure.active();
  for (;;) {
    Coalition next = work;
    for (PlayerId i : work.members()) {
      if (!structure.condition(i).eval(work, structure.live_superiors(i))) {
        next = next.without(i);
      }
    }
    if (next == work) return work;
    work = next;
  }
}

std::vector<Coalition> minimal_authorizing(Coalition e,
                                           const MixedPermissionStructure& structure) {
  if (!e.subset_of(structure.active())) return {};
  std::vector<Coalition> autonomous_supersets;
  Coalition room = structure.active() - e;
  for_each_subset(room, [&](Coalition extra) {
    Coalition candidate = e | extra;
    if (structure.is_autonomous(candidate)) autonomous_supersets.push_back(candidate);
  });
  std::vector<Coalition> minimal;
  for (Coalition c : autonomous_supersets) {
    bool is_minimal = true;
    for (Coalition other : autonomous_supersets) {
      if (other != c && other.subset_of(c)) {
        is_minimal = false;
        break;
      }
    }
    if (is_minimal) minimal.push_back(c);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

std::vector<Coalition> lambda_star(Coalition e,
                                   const MixedPermissionStructure& structure) {
  std::vector<Coalition> base = minimal_authorizing(e, structure);
  std::vector<Coalition> closure = base;
  std::sort(closure.begin(), closure.end());
  // Unions of autonomous sets are autonomous (conditions are monotone), so
  // closing under pairwise union terminates within the autonomous family.
  for (;;) {
    std::vector<Coalition> fresh;
    for (std::size_t a = 0; a < closure.size(); ++a) {
      for (std::size_t b = a + 1; b < closure.size(); ++b) {
        Coalition u = closure[a] | closure[b];
        if (!std::binary_search(closure.begin(), closure.end(), u) &&
            std::find(fresh.begin(), fresh.end(), u) == fresh.end()) {
          fresh.push_back(u);
        }
      }
    }
    if (fresh.empty()) return closure;
    closure.insert(closure.end(), fresh.begin(), fresh.end());
    std::sort(closure.begin(), closure.end());
  }
}

Game permission_restriction(const Game& game,
                            const MixedPermissionStructure& structure) {
  int n = game.n_players();
  if (n != structure.n_players()) {
    throw std::invalid_argument("game and structure disagree on player count");
  }
  if (n > kMaxTablePlayers) {
    throw std::invalid_argument("permission restriction is limited to " +
                                std::to_string(kMaxTablePlayers) + " players");
  }
  AutonomyOracle oracle(structure);
  std::vector<Rational> table(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    table[mask] = game.value(oracle.autonomous_part(Coalition(mask)));
  }
  return Game::explicit_table(n, std::move(table));
}

Game permission_restriction_by_decomposition(const Game& game,
                                             const MixedPermissionStructure& structure) {
  int n = game.n_players();
  if (n != structure.n_players()) {
    throw std::invalid_argument("game and structure disagree on player count");
  }
  if (n > 12) {
    throw std::invalid_argument(
        "decomposition cross-check is limited to 12 players");
  }
  const DividendMap input_dividends = dividends(game);
  AutonomyOracle oracle(structure);
  const std::size_t size = std::size_t{1} << n;

  // Integer dividends of each projected unanimity game, keyed by the
  // unanimity carrier; carriers repeat across input games only within one
  // call, so a per-call memo suffices.
  std::map<Coalition, std::vector<std::pair<Coalition, std::int64_t>>> projected;
  DividendMap combined;
  for (const auto& [carrier, weight] : input_dividends.entries()) {
    auto memo = projected.find(carrier);
    if (memo == projected.end()) {
      std::vector<std::int64_t> table(size, 0);
      for (std::uint64_t mask = 0; mask < size; ++mask) {
        table[mask] = carrier.subset_of(oracle.autonomous_part(Coalition(mask))) ? 1 : 0;
      }
      // Fast Moebius transform over the subset lattice, in integers.
      for (int bit = 0; bit < n; ++bit) {
        const std::uint64_t step = std::uint64_t{1} << bit;
        for (std::uint64_t mask = 0; mask < size; ++mask) {
          if (mask & step) table[mask] -= table[mask ^ step];
        }
      }
      std::vector<std::pair<Coalition, std::int64_t>> sparse;
      for (std::uint64_t mask = 1; mask < size; ++mask) {
        if (table[mask] != 0) sparse.emplace_back(Coalition(mask), table[mask]);
      }
      memo = projected.emplace(carrier, std::move(sparse)).first;
    }
    for (const auto& [support, coefficient] : memo->second) {
      combined.add(support, weight * coefficient);
    }
  }
  return game_from_dividends(combined, n);
}

PreservationReport check_preservation(const Game& game,
                                      const MixedPermissionStructure& structure) {
  PreservationReport report;
  Game restricted = permission_restriction(game, structure);
  report.input_monotone = is_monotone(game);
  report.restricted_monotone = is_monotone(restricted);
  report.input_superadditive = is_superadditive(game);
  report.restricted_superadditive = is_superadditive(restricted);
  report.monotone_preserved =
      !report.input_monotone.holds || report.restricted_monotone.holds;
  report.superadditive_preserved =
      !report.input_superadditive.holds || report.restricted_superadditive.holds;
  return report;
}

}  // namespace coopnet
