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

#include "coopnet/shapley.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "coopnet/permission.hpp"

namespace coopnet {

namespace {

void validate_weights(const Weights& weights, int n_players) {
  if (weights.w.size() != static_cast<std::size_t>(n_players)) {
    throw std::domain_error("expected one weight per player");
  }
  for (std::size_t i = 0; i < weights.w.size(); ++i) {
    if (weights.w[i] <= 0) {
      throw std::domain_error("weight of player " + std::to_string(i) +
                              " must be strictly positive");
    }
  }
}

}  // namespace

Rational Allocation::total() const {
  return std::accumulate(payoff.begin(), payoff.end(), Rational(0));
}

Allocation shapley(const Game& game) {
  const int n = game.n_players();
  Allocation out{std::vector<Rational>(static_cast<std::size_t>(n), Rational(0))};
  const DividendMap d = dividends(game);
  for (const auto& [coalition, dividend] : d.entries()) {
    Rational share = dividend / static_cast<int>(coalition.size());
    for (PlayerId i : coalition.members()) {
      out.payoff[static_cast<std::size_t>(i)] += share;
    }
  }
  return out;
}

Allocation weighted_shapley(const Game& game, const Weights& weights) {
  const int n = game.n_players();
  validate_weights(weights, n);
  Allocation out{std::vector<Rational>(static_cast<std::size_t>(n), Rational(0))};
  const DividendMap d = dividends(game);
  for (const auto& [coalition, dividend] : d.entries()) {
    Rational weight_sum = 0;
    for (PlayerId i : coalition.members()) weight_sum += weights.at(i);
    for (PlayerId i : coalition.members()) {
      out.payoff[static_cast<std::size_t>(i)] += dividend * weights.at(i) / weight_sum;
    }
  }
  return out;
}

Allocation weighted_shapley_by_orders(const Game& game, const Weights& weights,
                                      int max_players) {
  const int n = game.n_players();
  if (n > max_players) {
    throw std::invalid_argument("order enumeration refuses more than " +
                                std::to_string(max_players) +
                                " players (factorial blowup)");
  }
  validate_weights(weights, n);

  // Materialize the value table once; orders then walk it by mask.
  const std::size_t size = std::size_t{1} << n;
  std::vector<Rational> value(size);
  for (std::uint64_t mask = 0; mask < size; ++mask) {
    value[mask] = game.value(Coalition(mask));
  }

  Allocation out{std::vector<Rational>(static_cast<std::size_t>(n), Rational(0))};
  std::vector<PlayerId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  do {
    Rational probability = 1;
    Rational prefix_weight = 0;
    for (PlayerId i : order) {
      prefix_weight += weights.at(i);
      probability *= weights.at(i) / prefix_weight;
    }
    std::uint64_t predecessors = 0;
    for (PlayerId i : order) {
      const std::uint64_t with_i = predecessors | (std::uint64_t{1} << i);
      out.payoff[static_cast<std::size_t>(i)] +=
          probability * (value[with_i] - value[predecessors]);
      predecessors = with_i;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

SeparationReport weighted_vs_permission_separation() {
  SeparationReport report;

  // Game A: v({0}) = 0, v({1}) = v({0,1}) = 1. Player 1 waits on player 0's
  // permission; the restriction zeroes v({1}) and splits the grand worth
  // evenly. Yet player 0 is null in the unrestricted game, so every weighted
  // value pays them 0 — no weights reach 1/2.
  Game game_a = Game::explicit_table(2, {Rational(0), Rational(0), Rational(1), Rational(1)});
  DiffusionGraph chain(2, GraphMode::Tree, Coalition().with(0), {{0, 1}});
  report.permission_outcome =
      shapley(permission_restriction(game_a, MixedPermissionStructure::from_tree(chain)));
  bool player0_null = true;
  const DividendMap dividends_a = dividends(game_a);
  for (const auto& [coalition, dividend] : dividends_a.entries()) {
    (void)dividend;
    if (coalition.contains(0)) player0_null = false;
  }
  report.weights_cannot_reproduce =
      player0_null && report.permission_outcome.at(0) != 0;

  // Game B: v({0}) = 1, v({1}) = 2, v({0,1}) = 4, weighted with w = (1, 3).
  Game game_b = Game::explicit_table(2, {Rational(0), Rational(1), Rational(2), Rational(4)});
  report.weighted_outcome = weighted_shapley(game_b, Weights{{Rational(1), Rational(3)}});

  // All permission structures on two players: nobody over anybody, 0 over 1,
  // 1 over 0 (both-over-both would be cyclic).
  const PermissionExpression t = PermissionExpression::always_true();
  std::vector<MixedPermissionStructure> structures;
  structures.push_back(MixedPermissionStructure::from_parts(
      2, {Coalition(), Coalition()}, {t, t}));
  structures.push_back(MixedPermissionStructure::from_parts(
      2, {Coalition(), Coalition().with(0)}, {t, PermissionExpression::atom(0)}));
  structures.push_back(MixedPermissionStructure::from_parts(
      2, {Coalition().with(1), Coalition()}, {PermissionExpression::atom(1), t}));

  report.structures_cannot_reproduce = true;
  for (const auto& structure : structures) {
    Allocation outcome = shapley(permission_restriction(game_b, structure));
    if (outcome == report.weighted_outcome) report.structures_cannot_reproduce = false;
    report.structure_outcomes.push_back(std::move(outcome));
  }
  return report;
}

}  // namespace coopnet
