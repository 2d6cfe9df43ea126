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
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

#include "coopnet/dic.hpp"
#include "test_util.hpp"

namespace coopnet {
namespace {

using testutil::kDagA;
using testutil::kDagB;
using testutil::kDagC;
using testutil::kDagD;
using testutil::kDagE;
using testutil::kR1;
using testutil::kR2;

std::vector<Coalition> all_autonomous_sets(const MixedPermissionStructure& s) {
  std::vector<Coalition> out;
  const std::uint64_t size = std::uint64_t{1} << s.n_players();
  for (std::uint64_t mask = 0; mask < size; ++mask)
    if (s.is_autonomous(Coalition(mask))) out.push_back(Coalition(mask));
  return out;
}

// Exhaustive statement of what the fixpoint must produce: the union of all
// autonomous subsets, itself autonomous and idempotent.
void check_autonomous_part_exhaustively(const MixedPermissionStructure& s) {
  const std::uint64_t size = std::uint64_t{1} << s.n_players();
  for (std::uint64_t mask = 0; mask < size; ++mask) {
    const Coalition e(mask);
    const Coalition alpha = autonomous_part(e, s);
    EXPECT_TRUE(alpha.subset_of(e));
    EXPECT_TRUE(is_autonomous(alpha, s));
    EXPECT_EQ(autonomous_part(alpha, s), alpha);
    for_each_subset(e, [&](Coalition f) {
      if (is_autonomous(f, s)) EXPECT_TRUE(f.subset_of(alpha));
    });
  }
}

TEST(PermissionTest, TreeStructureUsesParents) {
  testutil::BuiltInstance tree = testutil::tree_showcase();
  MixedPermissionStructure s = MixedPermissionStructure::from_tree(tree.graph);
  EXPECT_EQ(s.superiors(testutil::kR), Coalition::empty());
  EXPECT_EQ(s.condition(testutil::kR).kind(), PermissionExpression::Kind::AlwaysTrue);
  EXPECT_EQ(s.superiors(testutil::kF), Coalition{testutil::kC});
  EXPECT_EQ(s.condition(testutil::kF).kind(), PermissionExpression::Kind::Atom);
  EXPECT_EQ(s.superiors(testutil::kE), Coalition{testutil::kB});

  DiffusionGraph dag = testutil::dag_showcase().graph;
  EXPECT_THROW(MixedPermissionStructure::from_tree(dag), std::invalid_argument);
}

TEST(PermissionTest, AutonomyOnTheShowcaseDag) {
  testutil::BuiltInstance dag = testutil::dag_showcase();
  MixedPermissionStructure s = testutil::dag_showcase_structure(dag.graph);

  EXPECT_TRUE(is_autonomous(Coalition::empty(), s));
  EXPECT_TRUE(is_autonomous(Coalition::full(7), s));
  // c may act with r2, or with both r1 and a.
  EXPECT_TRUE(is_autonomous(Coalition{kR1, kDagA, kDagC}, s));
  EXPECT_FALSE(is_autonomous(Coalition{kR1, kDagC}, s));
  EXPECT_TRUE(is_autonomous(Coalition{kR2, kDagC}, s));
  // e may act with b, or with both c and d.
  EXPECT_TRUE(is_autonomous(Coalition{kR2, kDagB, kDagE}, s));
  EXPECT_FALSE(is_autonomous(Coalition{kR2, kDagE}, s));
}

TEST(PermissionTest, AutonomousSetsAreClosedUnderUnion) {
  testutil::BuiltInstance dag = testutil::dag_showcase();
  MixedPermissionStructure s = testutil::dag_showcase_structure(dag.graph);
  std::vector<Coalition> autonomous = all_autonomous_sets(s);
  for (const Coalition& e : autonomous)
    for (const Coalition& f : autonomous)
      EXPECT_TRUE(is_autonomous(e | f, s));
}

TEST(PermissionTest, AutonomousPartIsTheLargestAutonomousSubset) {
  testutil::BuiltInstance dag = testutil::dag_showcase();
  check_autonomous_part_exhaustively(testutil::dag_showcase_structure(dag.graph));

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = (trial == 0) ? 10 : 8;
    DiffusionGraph graph = random_general_dag(rng, n);
    MixedPermissionStructure s = random_structure(rng, graph);
    check_autonomous_part_exhaustively(s);
    // Union closure on the same structures.
    std::vector<Coalition> autonomous = all_autonomous_sets(s);
    for (const Coalition& e : autonomous)
      for (const Coalition& f : autonomous)
        EXPECT_TRUE(is_autonomous(e | f, s));
  }
}

TEST(PermissionTest, ShowcaseDagAutonomousParts) {
  testutil::BuiltInstance dag = testutil::dag_showcase();
  MixedPermissionStructure s = testutil::dag_showcase_structure(dag.graph);
  // c and e lack their grants, so only r1 survives.
  EXPECT_EQ(autonomous_part(Coalition{kR1, kDagC, kDagE}, s), Coalition{kR1});
  EXPECT_EQ(autonomous_part(Coalition::full(7), s), Coalition::full(7));
  EXPECT_EQ(autonomous_part(Coalition{kDagA, kDagB}, s), Coalition::empty());
}

TEST(PermissionTest, MinimalAuthorizingSetsOnTheShowcaseDag) {
  testutil::BuiltInstance dag = testutil::dag_showcase();
  MixedPermissionStructure s = testutil::dag_showcase_structure(dag.graph);

  std::vector<Coalition> for_c = minimal_authorizing(Coalition{kDagC}, s);
  ASSERT_EQ(for_c.size(), 2u);
  EXPECT_EQ(for_c[0], (Coalition{kR2, kDagC}));
  EXPECT_EQ(for_c[1], (Coalition{kR1, kDagA, kDagC}));

  std::vector<Coalition> for_e = minimal_authorizing(Coalition{kDagE}, s);
  ASSERT_EQ(for_e.size(), 2u);
  EXPECT_EQ(for_e[0], (Coalition{kR2, kDagB, kDagE}));
  EXPECT_EQ(for_e[1], (Coalition{kR1, kDagA, kDagC, kDagD, kDagE}));

  std::vector<Coalition> closure = lambda_star(Coalition{kDagC}, s);
  ASSERT_EQ(closure.size(), 3u);
  EXPECT_EQ(closure[0], (Coalition{kR2, kDagC}));
  EXPECT_EQ(closure[1], (Coalition{kR1, kDagA, kDagC}));
  EXPECT_EQ(closure[2], (Coalition{kR1, kR2, kDagA, kDagC}));
}

TEST(PermissionTest, MinimalAuthorizingIsMinimalEverywhere) {
  testutil::BuiltInstance dag = testutil::dag_showcase();
  MixedPermissionStructure s = testutil::dag_showcase_structure(dag.graph);
  const std::uint64_t size = std::uint64_t{1} << 7;
  for (std::uint64_t mask = 0; mask < size; ++mask) {
    const Coalition e(mask);
    for (const Coalition& f : minimal_authorizing(e, s)) {
      EXPECT_TRUE(e.subset_of(f));
      EXPECT_TRUE(is_autonomous(f, s));
      // No proper autonomous subset of f still contains e.
      for_each_subset(f - e, [&](Coalition extra) {
        const Coalition candidate = e | extra;
        if (candidate == f) return;
        EXPECT_FALSE(is_autonomous(candidate, s))
            << "mask " << mask << " has a smaller authorizing set";
      });
    }
  }
}

TEST(PermissionTest, TreeRestrictionAuthorizesAncestorPaths) {
  testutil::BuiltInstance tree = testutil::tree_showcase();
  MixedPermissionStructure s = MixedPermissionStructure::from_tree(tree.graph);

  // Parent pointers of the bundled tree.
  std::vector<PlayerId> parent(9, -1);
  for (const Edge& e : tree.graph.edges()) parent[static_cast<std::size_t>(e.to)] = e.from;

  const auto path_closed = [&](Coalition e, PlayerId i) {
    for (PlayerId at = i; at != -1; at = parent[static_cast<std::size_t>(at)])
      if (!e.contains(at)) return false;
    return true;
  };

  const std::uint64_t size = std::uint64_t{1} << 9;
  for (std::uint64_t mask = 0; mask < size; ++mask) {
    const Coalition e(mask);
    Coalition expected;
    for (PlayerId i : e.members())
      if (path_closed(e, i)) expected = expected.with(i);
    EXPECT_EQ(autonomous_part(e, s), expected) << "mask " << mask;
  }

  // The one minimal authorizing set of any coalition is its ancestor closure.
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const Coalition e(rng() % size);
    Coalition closure = e;
    for (PlayerId i : e.members())
      for (PlayerId at = i; at != -1; at = parent[static_cast<std::size_t>(at)])
        closure = closure.with(at);
    std::vector<Coalition> minimal = minimal_authorizing(e, s);
    ASSERT_EQ(minimal.size(), 1u) << "trial " << trial;
    EXPECT_EQ(minimal[0], closure) << "trial " << trial;
  }
}

TEST(PermissionTest, RestrictionProjectsThroughAutonomousParts) {
  testutil::BuiltInstance dag = testutil::dag_showcase();
  MixedPermissionStructure s = testutil::dag_showcase_structure(dag.graph);
  Game restricted = permission_restriction(dag.game, s);

  // Spot values: an initiator keeps the shared answer's worth on their own.
  EXPECT_EQ(restricted.value(Coalition{kR1}), Rational(1));
  EXPECT_EQ(restricted.value(Coalition{kDagE}), Rational(0));
  EXPECT_EQ(restricted.value(Coalition{kR2, kDagB, kDagE}), Rational(2));
  EXPECT_EQ(restricted.value(Coalition::full(7)), Rational(2));

  // The full interaction pattern of the projected game.
  DividendMap expected;
  expected.add(Coalition{kR1}, Rational(1));
  expected.add(Coalition{kR2}, Rational(1));
  expected.add(Coalition{kR1, kR2}, Rational(-1));
  expected.add(Coalition{kR2, kDagB, kDagE}, Rational(1));
  expected.add(Coalition{kR1, kDagA, kDagC, kDagD, kDagE}, Rational(1));
  expected.add(Coalition::full(7), Rational(-1));
  EXPECT_EQ(dividends(restricted), expected);
}

TEST(PermissionTest, DecompositionMatchesDirectRestriction) {
  testutil::BuiltInstance dag = testutil::dag_showcase();
  MixedPermissionStructure s = testutil::dag_showcase_structure(dag.graph);
  EXPECT_TRUE(testutil::games_equal_pointwise(
      permission_restriction(dag.game, s),
      permission_restriction_by_decomposition(dag.game, s)));

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    DiffusionGraph graph = random_general_dag(rng, n);
    MixedPermissionStructure structure = random_structure(rng, graph);
    Game game = random_game(rng, n, /*nonnegative=*/false);
    EXPECT_TRUE(testutil::games_equal_pointwise(
        permission_restriction(game, structure),
        permission_restriction_by_decomposition(game, structure)))
        << "trial " << trial;
  }
}

TEST(PermissionTest, RestrictionPreservesMonotonicityAndSuperadditivity) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    DiffusionGraph graph = random_general_dag(rng, n);
    MixedPermissionStructure structure = random_structure(rng, graph);
    Game game = random_game(rng, n, /*nonnegative=*/true);
    PreservationReport report = check_preservation(game, structure);
    EXPECT_TRUE(report.input_monotone.holds);
    EXPECT_TRUE(report.restricted_monotone.holds) << "trial " << trial;
    EXPECT_TRUE(report.monotone_preserved);
    EXPECT_TRUE(report.input_superadditive.holds);
    EXPECT_TRUE(report.restricted_superadditive.holds) << "trial " << trial;
    EXPECT_TRUE(report.superadditive_preserved);
  }
}

TEST(PermissionTest, PreservationIsVacuousWithoutTheInputProperty) {
  // Player 1 subtracts value, so the input is not monotone.
  Game game = Game::explicit_table(
      2, {Rational(0), Rational(2), Rational(0), Rational(1)});
  DiffusionGraph chain(2, GraphMode::Tree, Coalition{0}, {{0, 1}});
  MixedPermissionStructure s = MixedPermissionStructure::from_tree(chain);
  PreservationReport report = check_preservation(game, s);
  EXPECT_FALSE(report.input_monotone.holds);
  EXPECT_TRUE(report.monotone_preserved);
}

TEST(PermissionTest, OracleAgreesWithRecomputation) {
  std::mt19937_64 rng(25);
  DiffusionGraph graph = random_general_dag(rng, 8);
  MixedPermissionStructure s = random_structure(rng, graph);
  AutonomyOracle oracle(s);
  const std::uint64_t size = std::uint64_t{1} << 8;
  for (int pass = 0; pass < 2; ++pass) {  // second pass hits the cache
    for (std::uint64_t mask = 0; mask < size; ++mask) {
      const Coalition e(mask);
      EXPECT_EQ(oracle.is_autonomous(e), is_autonomous(e, s));
      EXPECT_EQ(oracle.autonomous_part(e), autonomous_part(e, s));
    }
  }
}

TEST(PermissionTest, ConditionConstructorsValidate) {
  testutil::BuiltInstance dag = testutil::dag_showcase();
  using PE = PermissionExpression;

  // An atom must name an actual inviter.
  std::map<PlayerId, PermissionExpression> bad_atom;
  bad_atom.emplace(kDagC, PE::atom(kDagB));
  EXPECT_THROW(MixedPermissionStructure::with_conditions(dag.graph, bad_atom),
               std::invalid_argument);

  // An invited player cannot declare themself free.
  std::map<PlayerId, PermissionExpression> free_invitee;
  free_invitee.emplace(kDagC, PE::always_true());
  EXPECT_THROW(MixedPermissionStructure::with_conditions(dag.graph, free_invitee),
               std::invalid_argument);

  // Omitted players default to any-single-inviter.
  MixedPermissionStructure s =
      MixedPermissionStructure::with_conditions(dag.graph, {});
  EXPECT_TRUE(is_autonomous(Coalition{kR1, kDagC}, s));

  // Conjunctive requires every inviter.
  MixedPermissionStructure conj = MixedPermissionStructure::conjunctive(dag.graph);
  EXPECT_FALSE(is_autonomous(Coalition{kR1, kDagC}, conj));
  EXPECT_FALSE(is_autonomous(Coalition{kR1, kR2, kDagC}, conj));
  EXPECT_TRUE(is_autonomous(Coalition{kR1, kR2, kDagA, kDagC}, conj));
}

TEST(PermissionTest, FromPartsValidatesShape) {
  using PE = PermissionExpression;

  // Mutual superiors are asymmetric violations.
  EXPECT_THROW(MixedPermissionStructure::from_parts(
                   2, {Coalition{1}, Coalition{0}}, {PE::atom(1), PE::atom(0)}),
               std::invalid_argument);

  // Atoms must stay inside the declared superiors.
  EXPECT_THROW(MixedPermissionStructure::from_parts(
                   2, {Coalition::empty(), Coalition{0}},
                   {PE::always_true(), PE::atom(1)}),
               std::invalid_argument);

  // A player with superiors cannot carry the free condition.
  EXPECT_THROW(MixedPermissionStructure::from_parts(
                   2, {Coalition::empty(), Coalition{0}},
                   {PE::always_true(), PE::always_true()}),
               std::invalid_argument);

  MixedPermissionStructure s = MixedPermissionStructure::from_parts(
      3, {Coalition::empty(), Coalition{0}, Coalition{0, 1}},
      {PE::always_true(), PE::atom(0), PE::disj(PE::atom(0), PE::atom(1))});
  EXPECT_TRUE(is_autonomous(Coalition{0, 1, 2}, s));
  EXPECT_TRUE(is_autonomous(Coalition{0, 2}, s));
  EXPECT_FALSE(is_autonomous(Coalition{1, 2}, s));
}

TEST(PermissionTest, PrunedGraphsSilenceErasedInviters) {
  testutil::BuiltInstance dag = testutil::dag_showcase();
  MixedPermissionStructure s = testutil::dag_showcase_structure(dag.graph);

  // Withholding r1 -> a removes a, and d behind it.
  DiffusionGraph pruned = dag.graph.deduced({{kR1, kDagA}});
  ASSERT_EQ(pruned.active(), Coalition::full(7).without(kDagA).without(kDagD));
  MixedPermissionStructure reduced = s.restricted_to(pruned);

  // c keeps its authored condition but a can no longer vouch for it.
  EXPECT_EQ(reduced.live_superiors(kDagC), (Coalition{kR1, kR2}));
  EXPECT_FALSE(is_autonomous(Coalition{kR1, kDagA, kDagC}, reduced));
  EXPECT_TRUE(is_autonomous(Coalition{kR2, kDagC}, reduced));

  // Coalitions touching a dropped player are never autonomous.
  EXPECT_FALSE(is_autonomous(Coalition{kR1, kDagA}, reduced));
  EXPECT_EQ(autonomous_part(Coalition{kR1, kDagA}, reduced), Coalition{kR1});

  // e's c-and-d grant is dead with d gone; b still suffices.
  EXPECT_TRUE(is_autonomous(Coalition{kR2, kDagB, kDagE}, reduced));
  EXPECT_FALSE(
      is_autonomous(Coalition{kR1, kR2, kDagC, kDagE}, reduced));

  // Dropped players are null in the projected game.
  Game restricted = permission_restriction(dag.game, reduced);
  Allocation payoffs = shapley(restricted);
  EXPECT_EQ(payoffs.at(kDagA), Rational(0));
  EXPECT_EQ(payoffs.at(kDagD), Rational(0));
  EXPECT_EQ(payoffs.total(), restricted.value(Coalition::full(7)));
}

}  // namespace
}  // namespace coopnet
