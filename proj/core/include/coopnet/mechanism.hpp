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

#include <optional>
#include <string>
#include <vector>

#include "coopnet/game.hpp"
#include "coopnet/graph.hpp"
#include "coopnet/permission.hpp"
#include "coopnet/shapley.hpp"

namespace coopnet {

// Positive weight as a function of invitation depth. Evaluated only at
// depths that occur in a graph; positivity (and, on DAG-mode graphs,
// non-increase) is checked there, not globally.
class WeightFunction {
 public:
  enum class Kind { Constant, Table, Geometric, Linear, DarpaMIT };

  static WeightFunction constant(Rational c);
  // Explicit values per depth 0,1,2,...; depths past the end reuse the last
  // entry, so a table fixes a prefix and holds steady afterwards.
  static WeightFunction table(std::vector<Rational> by_depth);
  // f(d) = base^d.
  static WeightFunction geometric(Rational base);
  // f(d) = offset + slope*d.
  static WeightFunction linear(Rational offset, Rational slope);
  // The red-balloon payout weights: f(0) = 1, f(d) = 2^(d-1) for d >= 1.
  // Doubling weights only make sense where increasing weight functions are
  // allowed, i.e. tree-shaped invitation graphs.
  static WeightFunction darpa_mit();

  Kind kind() const { return kind_; }
  Rational at(int depth) const;
  // Round-trippable spelling: "const:1", "table:1,1,2,3", "geo:1/2",
  // "linear:1+2d", "darpa".
  std::string describe() const;

  bool operator==(const WeightFunction&) const = default;

 private:
  WeightFunction(Kind kind, Rational a, Rational b, std::vector<Rational> table)
      : kind_(kind), a_(std::move(a)), b_(std::move(b)), table_(std::move(table)) {}

  Kind kind_;
  Rational a_, b_;
  std::vector<Rational> table_;
};

// How to reward a diffusion instance.
//   PlainShapley           — Shapley value of the (survivor-masked) game, no
//                            permission logic; the textbook non-robust baseline.
//   PlainPermissionShapley — Shapley value of the permission restriction.
//   TreeFamily             — weighted Shapley of the restriction, weights
//                            f(depth); tree-shaped graphs only.
//   DagFamily              — the same over a mixed permission structure;
//                            accepts trees too, and on DAG-mode graphs
//                            requires f non-increasing.
struct MechanismSpec {
  enum class Mode { PlainShapley, PlainPermissionShapley, TreeFamily, DagFamily };

  Mode mode = Mode::TreeFamily;
  WeightFunction f = WeightFunction::constant(1);

  std::string describe() const;
};

// The structure a graph carries when none is spelled out: parent-permission
// on trees, any-single-inviter (disjunctive) on DAGs.
MixedPermissionStructure natural_structure(const DiffusionGraph& graph);

// Shapley value of the permission restriction under the graph's natural
// structure.
Allocation permission_shapley(const DiffusionGraph& graph, const Game& game);

// Weighted Shapley of the restriction with weights f(depth). Tree-mode
// graphs only; constant f degenerates to permission_shapley.
Allocation tree_mechanism(const DiffusionGraph& graph, const Game& game,
                          const WeightFunction& f);

// Direct evaluation for additive games on trees: contributor k's worth v_k
// splits along k's invitation path in proportion to the path weights,
// ancestor i receiving f(d_i) / (f(0)+...+f(d_k)) * v_k. Must equal
// tree_mechanism exactly; throws std::domain_error on non-additive input.
Allocation additive_tree_closed_form(const DiffusionGraph& graph, const Game& game,
                                     const WeightFunction& f);

// Weighted Shapley of the mixed-structure restriction with weights f(depth).
// On DAG-mode graphs f must be non-increasing over the occurring depths
// (and the doubling DarpaMIT weights are rejected outright).
Allocation dag_mechanism(const DiffusionGraph& graph, const Game& game,
                         const MixedPermissionStructure& structure,
                         const WeightFunction& f);

// Dispatch on spec.mode. `structure` overrides the graph's natural
// structure where one applies; TreeFamily insists on a Tree-mode graph.
Allocation run_mechanism(const MechanismSpec& spec, const DiffusionGraph& graph,
                         const Game& game,
                         const std::optional<MixedPermissionStructure>& structure =
                             std::nullopt);

}  // namespace coopnet
