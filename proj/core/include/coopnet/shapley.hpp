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

#include <vector>

#include "coopnet/game.hpp"

namespace coopnet {

// Strictly positive per-player weights. Scaling all weights by a common
// positive factor never changes a weighted value (only ratios matter).
struct Weights {
  std::vector<Rational> w;

  static Weights ones(int n_players) {
    return Weights{std::vector<Rational>(static_cast<std::size_t>(n_players), Rational(1))};
  }
  const Rational& at(PlayerId i) const { return w[static_cast<std::size_t>(i)]; }
  bool operator==(const Weights&) const = default;
};

// One payoff per player.
struct Allocation {
  std::vector<Rational> payoff;

  const Rational& at(PlayerId i) const { return payoff[static_cast<std::size_t>(i)]; }
  Rational total() const;
  bool operator==(const Allocation&) const = default;
};

// Classical Shapley value via interaction dividends: each coalition's
// dividend splits equally among its members. Allocates v's full worth.
Allocation shapley(const Game& game);

// Weighted Shapley value: coalition E's dividend splits in proportion to
// member weights, w_i / sum_{j in E} w_j. Equal weights reduce to shapley().
// Throws std::domain_error on a nonpositive or missing weight.
Allocation weighted_shapley(const Game& game, const Weights& weights);

// Independent oracle: expectation of marginal contributions over all
// player orders, where an order is drawn by repeatedly picking the LAST
// remaining player with probability proportional to weight — i.e. order
// (r_1..r_n) has probability prod_k w_{r_k} / (w_{r_1}+...+w_{r_k}).
// Exponential-factorial cost; refuses above `max_players` (default 8).
Allocation weighted_shapley_by_orders(const Game& game, const Weights& weights,
                                      int max_players = 8);

// Mechanical demonstration that weight systems and permission structures
// shape payoffs in ways neither can imitate:
//  - a two-player game whose permission outcome (1/2, 1/2) no positive
//    weights reproduce (the short player is null, so every weighted value
//    pays them 0);
//  - a two-player game whose weighted outcome under w=(1,3) differs from
//    the outcome under every permission structure on two players.
struct SeparationReport {
  Allocation permission_outcome;                // (1/2, 1/2)
  bool weights_cannot_reproduce = false;        // no positive weights reach it
  Allocation weighted_outcome;                  // (5/4, 11/4)
  std::vector<Allocation> structure_outcomes;   // empty, 1-over-2, 2-over-1
  bool structures_cannot_reproduce = false;     // none of the three reach it
};

SeparationReport weighted_vs_permission_separation();

}  // namespace coopnet
