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
#include <optional>
#include <utility>
#include <vector>

#include "coopnet/coalition.hpp"
#include "coopnet/rational.hpp"

namespace coopnet {

// Harsanyi dividends: sparse map coalition -> dividend, absent entry = 0.
// The empty coalition is never stored. Reconstruction identity:
//   v(F) = sum of d(E) over E subset of F.
class DividendMap {
 public:
  DividendMap() = default;

  // Adds `value` to the entry for E, erasing it if the sum cancels to zero.
  void add(Coalition e, const Rational& value);
  Rational at(Coalition e) const;  // 0 when absent

  const std::map<Coalition, Rational>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool operator==(const DividendMap&) const = default;

 private:
  std::map<Coalition, Rational> entries_;
};

// A characteristic function v : 2^N -> Q with v(empty) = 0, in one of four
// representations sharing a single evaluation interface:
//   ExplicitTable - one value per coalition (2^N entries, N <= 24);
//   Additive     - one value per player, v(E) = sum over members;
//   Coverage     - groups with worths, v(E) = sum of worths of groups E
//                  intersects (answer-holder semantics);
//   DividendForm - sparse Harsanyi dividends, v(E) = sum over subsets.
class Game {
 public:
  enum class Kind { ExplicitTable, Additive, Coverage, DividendForm };

  // `table[mask]` is v of the coalition with that bitmask; table[0] must be 0
  // and the size must be exactly 2^n. Throws std::invalid_argument otherwise.
  static Game explicit_table(int n_players, std::vector<Rational> table);
  static Game additive(std::vector<Rational> per_player);
  static Game coverage(int n_players,
                       std::vector<std::pair<Coalition, Rational>> groups);
  static Game from_dividends(int n_players, DividendMap dividends);

  int n_players() const { return n_; }
  Kind kind() const { return kind_; }

  // v(coalition). Throws std::invalid_argument if the coalition references a
  // player outside [0, n_players).
  Rational value(Coalition coalition) const;

  // The game restricted to `active` players: value(E) = v(E & active).
  // Players outside `active` become null players. Representation-preserving.
  Game masked(Coalition active) const;

  // Pointwise addition (same player count required).
  friend Game operator+(const Game& a, const Game& b);

  // Representation accessors (valid only for the matching kind).
  const std::vector<Rational>& additive_values() const { return per_player_; }
  const std::vector<std::pair<Coalition, Rational>>& coverage_groups() const {
    return groups_;
  }
  const DividendMap& stored_dividends() const { return dividends_; }

 private:
  Game(int n, Kind kind) : n_(n), kind_(kind) {}
  void check_members(Coalition c) const;

  int n_ = 0;
  Kind kind_ = Kind::Additive;
  std::vector<Rational> table_;                          // ExplicitTable
  std::vector<Rational> per_player_;                     // Additive
  std::vector<std::pair<Coalition, Rational>> groups_;   // Coverage
  DividendMap dividends_;                                // DividendForm
};

// v(coalition); free-function form of Game::value.
Rational eval_value(const Game& game, Coalition coalition);

// Harsanyi dividends of the game by Moebius inversion:
//   d(E) = sum over F subset of E of (-1)^{|E|-|F|} v(F).
// Additive, Coverage, and DividendForm games use exact sparse closed forms;
// ExplicitTable uses the fast subset transform (N <= 24).
DividendMap dividends(const Game& game);

// The game v(F) = sum of d(E) over E subset of F, as a DividendForm game.
// Round-trips with dividends(). Throws if an entry references player >= n.
Game game_from_dividends(const DividendMap& d, int n_players);

// The unanimity game u_E: worth 1 exactly on supersets of E. E must be
// nonempty (the dividend basis excludes the empty set).
Game unanimity_game(Coalition e, int n_players);

// Outcome of a structural property check; `witness` is a violating pair of
// coalitions when the property fails.
struct PropertyCheck {
  bool holds = false;
  std::optional<std::pair<Coalition, Coalition>> witness;
  explicit operator bool() const { return holds; }
};

// v(E) <= v(F) for all E subset of F. Witness on failure is (E, E + {i}).
// Enumerates 2^N single-bit extensions (N <= 24); games whose representation
// guarantees monotonicity short-circuit above the table cap.
PropertyCheck is_monotone(const Game& game);

// v(E) + v(F) <= v(E | F) for all disjoint E, F. Witness is the failing pair.
// Enumerates all 3^N disjoint pairs; refuses above N = 16.
PropertyCheck is_superadditive(const Game& game);

// C_i(v, R) = v(predecessors of i in R, plus i) - v(predecessors).
// `order` must be a permutation of all players containing i.
Rational marginal_contribution(const Game& game,
                               const std::vector<PlayerId>& order, PlayerId i);

}  // namespace coopnet
