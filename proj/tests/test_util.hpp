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

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "gtest/gtest.h"

#include "coopnet/instance_io.hpp"

namespace coopnet {

// gtest value printers (found by ADL).
inline void PrintTo(const Coalition& c, std::ostream* os) {
  *os << '{';
  bool first = true;
  for (PlayerId i : c.members()) {
    if (!first) *os << ',';
    *os << i;
    first = false;
  }
  *os << '}';
}

inline void PrintTo(const Allocation& a, std::ostream* os) {
  *os << '(';
  for (std::size_t i = 0; i < a.payoff.size(); ++i) {
    if (i) *os << ", ";
    *os << to_string(a.payoff[i]);
  }
  *os << ')';
}

inline void PrintTo(const Edge& e, std::ostream* os) {
  *os << e.from << "->" << e.to;
}

namespace testutil {

// Exact rational literal: q("7/12"), q("-3").
inline Rational q(std::string_view text) {
  auto parsed = parse_rational(text);
  if (!parsed) throw std::invalid_argument("bad rational literal: " + std::string(text));
  return *parsed;
}

// Allocation literal from per-player fraction strings.
inline Allocation alloc(std::initializer_list<const char*> payoffs) {
  Allocation out;
  out.payoff.reserve(payoffs.size());
  for (const char* text : payoffs) out.payoff.push_back(q(text));
  return out;
}

// A named instance assembled in code (fixture files carry the same data for
// the parser-level tests).
struct BuiltInstance {
  std::vector<std::string> names;
  DiffusionGraph graph;
  Game game;
};

// Nine-player invitation tree: root r invites a and b; a invites c and d;
// b invites e; c invites f; e invites g and h. Worth 1 for reaching f and 1
// for reaching e or h (two independent answers, one duplicated).
inline constexpr PlayerId kR = 0, kA = 1, kB = 2, kC = 3, kD = 4, kE = 5,
                          kF = 6, kG = 7, kH = 8;

inline BuiltInstance tree_showcase() {
  DiffusionGraph graph(9, GraphMode::Tree, Coalition{kR},
                       {{kR, kA},
                        {kR, kB},
                        {kA, kC},
                        {kA, kD},
                        {kB, kE},
                        {kC, kF},
                        {kE, kG},
                        {kE, kH}});
  Game game = Game::coverage(
      9, {{Coalition{kF}, Rational(1)}, {Coalition{kE, kH}, Rational(1)}});
  return {{"r", "a", "b", "c", "d", "e", "f", "g", "h"}, std::move(graph),
          std::move(game)};
}

// Seven-player DAG with two initiators and bespoke permission conditions for
// the twice-invited players c and e. Worth 1 for reaching e plus 1 more when
// both initiators and e are present.
inline constexpr PlayerId kR1 = 0, kR2 = 1, kDagA = 2, kDagB = 3, kDagC = 4,
                          kDagD = 5, kDagE = 6;

inline BuiltInstance dag_showcase() {
  DiffusionGraph graph(7, GraphMode::Dag, Coalition{kR1, kR2},
                       {{kR1, kDagA},
                        {kR1, kDagC},
                        {kR2, kDagB},
                        {kR2, kDagC},
                        {kDagA, kDagC},
                        {kDagA, kDagD},
                        {kDagB, kDagE},
                        {kDagC, kDagE},
                        {kDagD, kDagE}});
  Game game = Game::coverage(7, {{Coalition{kDagE}, Rational(1)},
                                 {Coalition{kR1, kR2, kDagE}, Rational(1)}});
  return {{"r1", "r2", "a", "b", "c", "d", "e"}, std::move(graph),
          std::move(game)};
}

// The bespoke conditions of dag_showcase: c acts on r2 or (r1 and a), e acts
// on b or (c and d); everyone else accepts any inviter.
inline MixedPermissionStructure dag_showcase_structure(const DiffusionGraph& graph) {
  using PE = PermissionExpression;
  std::map<PlayerId, PermissionExpression> overrides;
  overrides.emplace(kDagC, PE::disj(PE::atom(kR2), PE::conj(PE::atom(kR1), PE::atom(kDagA))));
  overrides.emplace(kDagE, PE::disj(PE::atom(kDagB), PE::conj(PE::atom(kDagC), PE::atom(kDagD))));
  return MixedPermissionStructure::with_conditions(graph, overrides);
}

inline std::string fixture_path(const std::string& name) {
  return std::string(COOPNET_FIXTURE_DIR) + "/" + name;
}

inline std::string cli_path() { return std::string(COOPNET_CLI_PATH); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Runs a shell command with stderr folded into stdout; returns the exit
// status and the combined output.
struct CommandResult {
  int status = -1;
  std::string output;
};

inline CommandResult run_command(const std::string& command) {
  CommandResult result;
  const std::string wrapped = command + " 2>&1";
  FILE* pipe = popen(wrapped.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + command);
  char chunk[4096];
  std::size_t got = 0;
  while ((got = fread(chunk, 1, sizeof chunk, pipe)) > 0)
    result.output.append(chunk, got);
  const int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

// Exact pointwise equality of two games over every coalition (n <= 16).
inline ::testing::AssertionResult games_equal_pointwise(const Game& a, const Game& b) {
  if (a.n_players() != b.n_players())
    return ::testing::AssertionFailure()
           << "player counts differ: " << a.n_players() << " vs " << b.n_players();
  if (a.n_players() > 16)
    return ::testing::AssertionFailure() << "pointwise sweep capped at 16 players";
  const std::uint64_t size = std::uint64_t{1} << a.n_players();
  for (std::uint64_t mask = 0; mask < size; ++mask) {
    const Coalition e(mask);
    const Rational va = a.value(e);
    const Rational vb = b.value(e);
    if (va != vb) {
      std::ostringstream where;
      PrintTo(e, &where);
      return ::testing::AssertionFailure()
             << "games differ at " << where.str() << ": " << to_string(va)
             << " vs " << to_string(vb);
    }
  }
  return ::testing::AssertionSuccess();
}

// Structural equality of two parsed instances: identical names, graph data,
// game values, permission conditions, and mechanism choice.
inline void expect_instances_equal(const ParsedInstance& a, const ParsedInstance& b) {
  EXPECT_EQ(a.names, b.names);
  EXPECT_EQ(a.graph.n_players(), b.graph.n_players());
  EXPECT_EQ(a.graph.mode(), b.graph.mode());
  EXPECT_EQ(a.graph.initiators(), b.graph.initiators());
  EXPECT_EQ(a.graph.active(), b.graph.active());
  EXPECT_EQ(a.graph.edges(), b.graph.edges());
  EXPECT_TRUE(games_equal_pointwise(a.game, b.game));
  ASSERT_EQ(a.structure.has_value(), b.structure.has_value());
  if (a.structure) {
    const auto name_of = [&](PlayerId i) { return a.names[static_cast<std::size_t>(i)]; };
    for (PlayerId i = 0; i < a.graph.n_players(); ++i) {
      EXPECT_EQ(a.structure->superiors(i), b.structure->superiors(i)) << "player " << i;
      EXPECT_EQ(a.structure->condition(i).to_string(name_of),
                b.structure->condition(i).to_string(name_of))
          << "player " << i;
    }
  }
  ASSERT_EQ(a.mechanism.has_value(), b.mechanism.has_value());
  if (a.mechanism) {
    EXPECT_EQ(a.mechanism->mode, b.mechanism->mode);
    EXPECT_EQ(a.mechanism->f.describe(), b.mechanism->f.describe());
  }
}

}  // namespace testutil
}  // namespace coopnet
