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

#include "coopnet/game.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace coopnet {

namespace {

void check_player_count(int n, int cap, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + ": need at least one player");
  if (n > cap)
    throw std::invalid_argument(std::string(what) + ": player count " +
                                std::to_string(n) + " exceeds cap " +
                                std::to_string(cap));
}

}  // namespace

void DividendMap::add(Coalition e, const Rational& value) {
  if (e.is_empty() || value == 0) return;
  auto [it, inserted] = entries_.emplace(e, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) entries_.erase(it);
  }
}

Rational DividendMap::at(Coalition e) const {
  auto it = entries_.find(e);
  return it == entries_.end() ? Rational(0) : it->second;
}

Game Game::explicit_table(int n, std::vector<Rational> table) {
  check_player_count(n, kMaxTablePlayers, "explicit table game");
  if (table.size() != (std::size_t{1} << n))
    throw std::invalid_argument("explicit table game: need exactly 2^" +
                                std::to_string(n) + " entries, got " +
                                std::to_string(table.size()));
  if (table[0] != 0)
    throw std::invalid_argument("explicit table game: v(empty) must be 0");
  Game g(n, Kind::ExplicitTable);
  g.table_ = std::move(table);
  return g;
}

Game Game::additive(std::vector<Rational> per_player) {
  const int n = static_cast<int>(per_player.size());
  check_player_count(n, kMaxPlayers, "additive game");
  Game g(n, Kind::Additive);
  g.per_player_ = std::move(per_player);
  return g;
}

Game Game::coverage(int n, std::vector<std::pair<Coalition, Rational>> groups) {
  check_player_count(n, kMaxPlayers, "coverage game");
  const Coalition universe = Coalition::full(n);
  for (const auto& [group, worth] : groups) {
    (void)worth;
    if (!group.subset_of(universe))
      throw std::invalid_argument("coverage game: group references a player outside [0, n)");
    if (group.is_empty())
      throw std::invalid_argument("coverage game: empty group");
  }
  Game g(n, Kind::Coverage);
  g.groups_ = std::move(groups);
  return g;
}

Game Game::from_dividends(int n, DividendMap dividends) {
  check_player_count(n, kMaxPlayers, "dividend-form game");
  const Coalition universe = Coalition::full(n);
  for (const auto& [e, d] : dividends.entries()) {
    (void)d;
    if (!e.subset_of(universe))
      throw std::invalid_argument("dividend-form game: entry references a player outside [0, n)");
  }
  Game g(n, Kind::DividendForm);
  g.dividends_ = std::move(dividends);
  return g;
}

void Game::check_members(Coalition c) const {
  if (!c.subset_of(Coalition::full(n_)))
    throw std::invalid_argument("coalition references a player outside [0, " +
                                std::to_string(n_) + ")");
}

Rational Game::value(Coalition coalition) const {
  check_members(coalition);
  switch (kind_) {
    case Kind::ExplicitTable:
      return table_[coalition.bits()];
    case Kind::Additive: {
      Rational sum = 0;
      for (PlayerId i : coalition.members()) sum += per_player_[i];
      return sum;
    }
    case Kind::Coverage: {
      Rational sum = 0;
      for (const auto& [group, worth] : groups_)
        if (group.intersects(coalition)) sum += worth;
      return sum;
    }
    case Kind::DividendForm: {
      Rational sum = 0;
      for (const auto& [e, d] : dividends_.entries())
        if (e.subset_of(coalition)) sum += d;
      return sum;
    }
  }
  throw std::logic_error("unreachable game kind");
}

Game Game::masked(Coalition active) const {
  check_members(active);
  switch (kind_) {
    case Kind::ExplicitTable: {
      std::vector<Rational> table(table_.size());
      for (std::uint64_t mask = 0; mask < table_.size(); ++mask)
        table[mask] = table_[(Coalition(mask) & active).bits()];
      return explicit_table(n_, std::move(table));
    }
    case Kind::Additive: {
      std::vector<Rational> vals = per_player_;
      for (PlayerId i = 0; i < n_; ++i)
        if (!active.contains(i)) vals[i] = 0;
      return additive(std::move(vals));
    }
    case Kind::Coverage: {
      std::vector<std::pair<Coalition, Rational>> groups;
      for (const auto& [group, worth] : groups_) {
        const Coalition clipped = group & active;
        if (!clipped.is_empty()) groups.emplace_back(clipped, worth);
      }
      return coverage(n_, std::move(groups));
    }
    case Kind::DividendForm: {
      DividendMap filtered;
      for (const auto& [e, d] : dividends_.entries())
        if (e.subset_of(active)) filtered.add(e, d);
      return from_dividends(n_, std::move(filtered));
    }
  }
  throw std::logic_error("unreachable game kind");
}

Game operator+(const Game& a, const Game& b) {
  if (a.n_players() != b.n_players())
    throw std::invalid_argument("game sum: player counts differ");
  DividendMap sum = dividends(a);
  const DividendMap other = dividends(b);
  for (const auto& [e, d] : other.entries()) sum.add(e, d);
  return Game::from_dividends(a.n_players(), std::move(sum));
}

Rational eval_value(const Game& game, Coalition coalition) {
  return game.value(coalition);
}

DividendMap dividends(const Game& game) {
  const int n = game.n_players();
  DividendMap out;
  switch (game.kind()) {
    case Game::Kind::Additive: {
      for (PlayerId i = 0; i < n; ++i)
        out.add(Coalition{i}, game.additive_values()[i]);
      return out;
    }
    case Game::Kind::Coverage: {
      // An "at least one member of g present" game has dividends
      // d(T) = worth * (-1)^{|T|+1} for every nonempty T subset of g.
      for (const auto& [group, worth] : game.coverage_groups()) {
        for_each_subset(group, [&](Coalition t) {
          if (t.is_empty()) return;
          out.add(t, (t.size() % 2 == 1) ? worth : -worth);
        });
      }
      return out;
    }
    case Game::Kind::DividendForm:
      return game.stored_dividends();
    case Game::Kind::ExplicitTable:
      break;
  }
  // Fast Moebius transform over the full table.
  const std::size_t size = std::size_t{1} << n;
  std::vector<Rational> work(size);
  for (std::uint64_t mask = 0; mask < size; ++mask)
    work[mask] = game.value(Coalition(mask));
  for (int i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t mask = 0; mask < size; ++mask)
      if (mask & bit) work[mask] -= work[mask ^ bit];
  }
  for (std::uint64_t mask = 1; mask < size; ++mask)
    out.add(Coalition(mask), work[mask]);
  return out;
}

Game game_from_dividends(const DividendMap& d, int n_players) {
  return Game::from_dividends(n_players, d);
}

Game unanimity_game(Coalition e, int n_players) {
  if (e.is_empty())
    throw std::invalid_argument("unanimity game: the basis excludes the empty set");
  DividendMap d;
  d.add(e, 1);
  return Game::from_dividends(n_players, std::move(d));
}

PropertyCheck is_monotone(const Game& game) {
  const int n = game.n_players();
  if (n > kMaxTablePlayers) {
    // Only sparse representations reach this size. Additive games are
    // monotone exactly when every per-player value is nonnegative; for the
    // other sparse forms, nonnegative worths/dividends are a sufficient
    // certificate. Anything else needs the exhaustive check, which is capped.
    auto all_nonnegative = [](auto&& range, auto&& proj) {
      for (const auto& item : range)
        if (proj(item) < 0) return false;
      return true;
    };
    switch (game.kind()) {
      case Game::Kind::Additive:
        for (PlayerId i = 0; i < n; ++i)
          if (game.additive_values()[i] < 0)
            return {false, std::make_pair(Coalition::empty(), Coalition{i})};
        return {true, std::nullopt};
      case Game::Kind::Coverage:
        if (all_nonnegative(game.coverage_groups(),
                            [](const auto& g) { return g.second; }))
          return {true, std::nullopt};
        break;
      case Game::Kind::DividendForm:
        if (all_nonnegative(game.stored_dividends().entries(),
                            [](const auto& e) { return e.second; }))
          return {true, std::nullopt};
        break;
      case Game::Kind::ExplicitTable:
        break;
    }
    throw std::invalid_argument("is_monotone: exhaustive check capped at N=24");
  }
  const std::size_t size = std::size_t{1} << n;
  std::vector<Rational> table(size);
  for (std::uint64_t mask = 0; mask < size; ++mask)
    table[mask] = game.value(Coalition(mask));
  for (std::uint64_t mask = 0; mask < size; ++mask) {
    for (PlayerId i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (mask & bit) continue;
      if (table[mask] > table[mask | bit])
        return {false, std::make_pair(Coalition(mask), Coalition(mask | bit))};
    }
  }
  return {true, std::nullopt};
}

PropertyCheck is_superadditive(const Game& game) {
  const int n = game.n_players();
  if (n > 16)
    throw std::invalid_argument("is_superadditive: disjoint-pair check capped at N=16");
  const std::size_t size = std::size_t{1} << n;
  std::vector<Rational> table(size);
  for (std::uint64_t mask = 0; mask < size; ++mask)
    table[mask] = game.value(Coalition(mask));
  const Coalition universe = Coalition::full(n);
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    const Coalition e(mask);
    bool bad = false;
    Coalition bad_f;
    for_each_subset(universe - e, [&](Coalition f) {
      if (bad || f.is_empty()) return;
      if (table[mask] + table[f.bits()] > table[mask | f.bits()]) {
        bad = true;
        bad_f = f;
      }
    });
    if (bad) return {false, std::make_pair(e, bad_f)};
  }
  return {true, std::nullopt};
}

Rational marginal_contribution(const Game& game,
                               const std::vector<PlayerId>& order, PlayerId i) {
  const int n = game.n_players();
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("marginal contribution: order must list every player once");
  Coalition seen;
  for (PlayerId p : order) {
    if (p < 0 || p >= n || seen.contains(p))
      throw std::invalid_argument("marginal contribution: order is not a permutation");
    seen = seen.with(p);
  }
  Coalition before;
  for (PlayerId p : order) {
    if (p == i) break;
    before = before.with(p);
  }
  if (!seen.contains(i))
    throw std::invalid_argument("marginal contribution: player missing from order");
  return game.value(before.with(i)) - game.value(before);
}

}  // namespace coopnet
