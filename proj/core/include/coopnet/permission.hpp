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

#include <map>
#include <unordered_map>
#include <vector>

#include "coopnet/expression.hpp"
#include "coopnet/game.hpp"
#include "coopnet/graph.hpp"

namespace coopnet {

// A permission structure: each player has a set of superiors S(i) and a
// monotone AND/OR condition over them. A player with no superiors needs no
// permission (condition AlwaysTrue). The all-AND and all-OR special cases of
// classical permission approaches are expressible through the same type.
//
// A structure read off a pruned invitation graph keeps each player's
// authored condition but shrinks the set of superiors who can still grant
// permission (`live_superiors`); atoms naming an erased inviter evaluate
// false. Players pruned from the graph are excluded from every autonomous
// set and become null in the restricted game.
class MixedPermissionStructure {
 public:
  // Builds from the parent map of a Tree-mode graph: condition Atom(parent)
  // for invitees, AlwaysTrue for initiators. Throws on Dag-mode input.
  static MixedPermissionStructure from_tree(const DiffusionGraph& graph);

  // Any single inviter grants permission (OR over in-neighbors). The natural
  // diffusion default on DAGs.
  static MixedPermissionStructure disjunctive(const DiffusionGraph& graph);

  // Every inviter must agree (AND over in-neighbors).
  static MixedPermissionStructure conjunctive(const DiffusionGraph& graph);

  // Per-player bespoke conditions; players absent from `overrides` default to
  // the disjunctive condition. Atoms must name in-neighbors of the player.
  static MixedPermissionStructure with_conditions(
      const DiffusionGraph& graph,
      const std::map<PlayerId, PermissionExpression>& overrides);

  // A structure given directly by superior sets and conditions (active set =
  // everyone). Validates: S asymmetric and acyclic with at least one free
  // player, condition atoms within S(i), AlwaysTrue exactly when S(i) empty.
  static MixedPermissionStructure from_parts(
      int n_players, std::vector<Coalition> superiors,
      std::vector<PermissionExpression> conditions);

  // This structure as it reads on a pruned graph: same authored conditions,
  // superiors clipped to the graph's surviving in-edges, active set taken
  // from the graph. `graph` must have the same player count.
  MixedPermissionStructure restricted_to(const DiffusionGraph& graph) const;

  int n_players() const { return n_; }
  Coalition active() const { return active_; }
  Coalition superiors(PlayerId i) const { return authored_superiors_[i]; }
  Coalition live_superiors(PlayerId i) const { return live_superiors_[i]; }
  const PermissionExpression& condition(PlayerId i) const { return conditions_[i]; }

  // Every member's condition holds inside E (atoms limited to live
  // superiors). Inactive members disqualify a coalition outright.
  bool is_autonomous(Coalition e) const;

 private:
  MixedPermissionStructure(int n, Coalition active,
                           std::vector<Coalition> authored,
                           std::vector<Coalition> live,
                           std::vector<PermissionExpression> conditions);

  int n_;
  Coalition active_;
  std::vector<Coalition> authored_superiors_;
  std::vector<Coalition> live_superiors_;
  std::vector<PermissionExpression> conditions_;
};

// Memoizing evaluator for autonomy queries and the autonomous-part map over
// one structure; the 2^N sweep of a restriction hits each coalition once but
// deviation checks revisit coalitions across overlapping sweeps.
class AutonomyOracle {
 public:
  explicit AutonomyOracle(const MixedPermissionStructure& structure)
      : structure_(structure) {}

  bool is_autonomous(Coalition e);
  Coalition autonomous_part(Coalition e);

 private:
  const MixedPermissionStructure& structure_;
  std::unordered_map<std::uint64_t, std::uint64_t> alpha_;
};

// True iff every member's permission condition holds inside E.
bool is_autonomous(Coalition e, const MixedPermissionStructure& structure);

// The largest autonomous subset of E, computed by fixpoint deletion:
// repeatedly drop members whose condition fails on the working set. The
// conditions are monotone (no negation), so deletion never removes a member
// of any autonomous subset and the fixpoint is exactly the union of all
// autonomous subsets.
Coalition autonomous_part(Coalition e, const MixedPermissionStructure& structure);

// All inclusion-minimal autonomous supersets of E. Empty when no autonomous
// superset exists (e.g. E touches a pruned player). On tree structures this
// is the singleton ancestor closure of E.
std::vector<Coalition> minimal_authorizing(Coalition e,
                                           const MixedPermissionStructure& structure);

// The closure of minimal_authorizing(e) under unions; every element is
// autonomous. Sorted by bitmask for determinism.
std::vector<Coalition> lambda_star(Coalition e,
                                   const MixedPermissionStructure& structure);

// The permission restriction: the game E -> v(autonomous_part(E)) as an
// explicit table. Members outside every autonomous subset contribute
// nothing; pruned players are null. N <= 24.
Game permission_restriction(const Game& game,
                            const MixedPermissionStructure& structure);

// The same game assembled through the dividend decomposition: project each
// unanimity game u_F with a nonzero dividend through the structure, take the
// projection's (integer) dividends, and recombine scaled by d_v(F). The
// coefficients are computed numerically, never from a closed form. N <= 12;
// used as an independent cross-check of permission_restriction.
Game permission_restriction_by_decomposition(const Game& game,
                                             const MixedPermissionStructure& structure);

// Whether restriction preserves monotonicity / super-additivity on this
// input. `*_preserved` is vacuously true when the input lacks the property.
struct PreservationReport {
  PropertyCheck input_monotone, restricted_monotone;
  PropertyCheck input_superadditive, restricted_superadditive;
  bool monotone_preserved = false;
  bool superadditive_preserved = false;
};

PreservationReport check_preservation(const Game& game,
                                      const MixedPermissionStructure& structure);

}  // namespace coopnet
