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

#include "coopnet/mechanism.hpp"

#include <random>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

#include "coopnet/dic.hpp"
#include "test_util.hpp"

namespace coopnet {
namespace {

using testutil::alloc;
using testutil::q;

Game random_additive_game(std::mt19937_64& rng, int n) {
  std::vector<Rational> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Zeros included: non-contributors are common in invitation games.
    const int num = static_cast<int>(rng() % 7);
    const int den = 1 + static_cast<int>(rng() % 3);
    values[static_cast<std::size_t>(i)] = Rational(num, den);
  }
  return Game::additive(std::move(values));
}

TEST(WeightFunctionTest, EvaluatesEveryKind) {
  WeightFunction constant = WeightFunction::constant(q("3/2"));
  EXPECT_EQ(constant.at(0), q("3/2"));
  EXPECT_EQ(constant.at(7), q("3/2"));

  WeightFunction table = WeightFunction::table({Rational(1), Rational(1), Rational(2), Rational(3)});
  EXPECT_EQ(table.at(0), Rational(1));
  EXPECT_EQ(table.at(2), Rational(2));
  EXPECT_EQ(table.at(3), Rational(3));
  EXPECT_EQ(table.at(9), Rational(3));  // past the end the last entry holds

  WeightFunction geometric = WeightFunction::geometric(q("1/2"));
  EXPECT_EQ(geometric.at(0), Rational(1));
  EXPECT_EQ(geometric.at(3), q("1/8"));

  WeightFunction linear = WeightFunction::linear(Rational(1), Rational(2));
  EXPECT_EQ(linear.at(0), Rational(1));
  EXPECT_EQ(linear.at(3), Rational(7));

  WeightFunction darpa = WeightFunction::darpa_mit();
  EXPECT_EQ(darpa.at(0), Rational(1));
  EXPECT_EQ(darpa.at(1), Rational(1));
  EXPECT_EQ(darpa.at(2), Rational(2));
  EXPECT_EQ(darpa.at(3), Rational(4));
  EXPECT_EQ(darpa.at(4), Rational(8));
}

TEST(WeightFunctionTest, DescribeIsStable) {
  EXPECT_EQ(WeightFunction::constant(Rational(1)).describe(), "const:1");
  EXPECT_EQ(WeightFunction::geometric(q("1/2")).describe(), "geo:1/2");
  EXPECT_EQ(WeightFunction::table({Rational(1), Rational(1), Rational(2), Rational(3)}).describe(),
            "table:1,1,2,3");
  EXPECT_EQ(WeightFunction::darpa_mit().describe(), "darpa");
}

TEST(MechanismTest, PermissionValueOnTheShowcaseTree) {
  testutil::BuiltInstance tree = testutil::tree_showcase();
  Allocation expected = alloc(
      {"7/12", "1/4", "1/3", "1/4", "0", "1/3", "1/4", "0", "0"});
  EXPECT_EQ(permission_shapley(tree.graph, tree.game), expected);
  EXPECT_EQ(permission_shapley(tree.graph, tree.game).total(), Rational(2));
}

TEST(MechanismTest, DepthTableWeightsOnTheShowcaseTree) {
  testutil::BuiltInstance tree = testutil::tree_showcase();
  WeightFunction f = WeightFunction::table(
      {Rational(1), Rational(1), Rational(2), Rational(3)});
  Allocation expected = alloc(
      {"11/28", "1/7", "1/4", "2/7", "0", "1/2", "3/7", "0", "0"});
  EXPECT_EQ(tree_mechanism(tree.graph, tree.game, f), expected);
}

TEST(MechanismTest, HalvingWeightsOnTheShowcaseTree) {
  testutil::BuiltInstance tree = testutil::tree_showcase();
  WeightFunction f = WeightFunction::geometric(q("1/2"));
  Allocation expected = alloc(
      {"116/105", "4/15", "2/7", "2/15", "0", "1/7", "1/15", "0", "0"});
  EXPECT_EQ(tree_mechanism(tree.graph, tree.game, f), expected);
}

TEST(MechanismTest, UnitWeightsOnTheShowcaseDag) {
  testutil::BuiltInstance dag = testutil::dag_showcase();
  MixedPermissionStructure s = testutil::dag_showcase_structure(dag.graph);
  Allocation computed =
      dag_mechanism(dag.graph, dag.game, s, WeightFunction::constant(Rational(1)));
  Allocation expected =
      alloc({"39/70", "29/42", "2/35", "4/21", "2/35", "2/35", "41/105"});
  EXPECT_EQ(computed, expected);
  EXPECT_EQ(computed.total(), Rational(2));

  // Unit weights are exactly the permission value of the same structure.
  EXPECT_EQ(computed, shapley(permission_restriction(dag.game, s)));
}

TEST(MechanismTest, ConstantWeightsDegenerateToPermissionValue) {
  testutil::BuiltInstance tree = testutil::tree_showcase();
  EXPECT_EQ(tree_mechanism(tree.graph, tree.game, WeightFunction::constant(Rational(5))),
            permission_shapley(tree.graph, tree.game));

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    DiffusionGraph graph = random_tree_graph(rng, n);
    Game game = random_game(rng, n);
    EXPECT_EQ(tree_mechanism(graph, game, WeightFunction::constant(Rational(2))),
              permission_shapley(graph, game))
        << "trial " << trial;
  }
}

TEST(MechanismTest, DoublingWeightsHalveAlongTheChain) {
  // r -> a -> b -> c -> d with the answer at the leaf: the finder keeps 1/2,
  // each inviter up the chain gets half again, and the root absorbs the
  // leftover share.
  DiffusionGraph chain(5, GraphMode::Tree, Coalition{0},
                       {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  Game game = Game::additive(
      {Rational(0), Rational(0), Rational(0), Rational(0), Rational(1)});
  Allocation payoffs = tree_mechanism(chain, game, WeightFunction::darpa_mit());
  EXPECT_EQ(payoffs, alloc({"1/16", "1/16", "1/8", "1/4", "1/2"}));
}

TEST(MechanismTest, AdditiveClosedFormMatchesTheGeneralPath) {
  // The bundled chain: invitee b holds the answer.
  DiffusionGraph chain(3, GraphMode::Tree, Coalition{0}, {{0, 1}, {1, 2}});
  Game game = Game::additive({Rational(0), Rational(0), Rational(1)});
  Allocation closed =
      additive_tree_closed_form(chain, game, WeightFunction::darpa_mit());
  EXPECT_EQ(closed, alloc({"1/4", "1/4", "1/2"}));
  EXPECT_EQ(closed, tree_mechanism(chain, game, WeightFunction::darpa_mit()));

  const WeightFunction functions[] = {
      WeightFunction::constant(Rational(1)),
      WeightFunction::geometric(q("1/2")),
      WeightFunction::darpa_mit(),
  };
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 8);
    DiffusionGraph graph = random_tree_graph(rng, n, /*max_depth=*/5);
    Game game_t = random_additive_game(rng, n);
    for (const WeightFunction& f : functions) {
      EXPECT_EQ(additive_tree_closed_form(graph, game_t, f),
                tree_mechanism(graph, game_t, f))
          << "trial " << trial << " f " << f.describe();
    }
  }
}

TEST(MechanismTest, ClosedFormRejectsNonAdditiveGames) {
  testutil::BuiltInstance tree = testutil::tree_showcase();
  EXPECT_THROW(additive_tree_closed_form(tree.graph, tree.game,
                                         WeightFunction::constant(Rational(1))),
               std::domain_error);
}

TEST(MechanismTest, TreeOnlyPathsInsistOnTrees) {
  testutil::BuiltInstance dag = testutil::dag_showcase();
  EXPECT_THROW(
      tree_mechanism(dag.graph, dag.game, WeightFunction::constant(Rational(1))),
      std::domain_error);
  MechanismSpec spec{MechanismSpec::Mode::TreeFamily,
                     WeightFunction::constant(Rational(1))};
  EXPECT_THROW(run_mechanism(spec, dag.graph, dag.game), std::domain_error);
}

TEST(MechanismTest, DagModeRequiresNonIncreasingWeights) {
  testutil::BuiltInstance dag = testutil::dag_showcase();
  MixedPermissionStructure s = testutil::dag_showcase_structure(dag.graph);

  // Doubling weights are categorically out on invitation DAGs.
  EXPECT_THROW(dag_mechanism(dag.graph, dag.game, s, WeightFunction::darpa_mit()),
               std::domain_error);
  // So is any function that grows across occurring depths.
  EXPECT_THROW(dag_mechanism(dag.graph, dag.game, s,
                             WeightFunction::linear(Rational(1), Rational(1))),
               std::domain_error);
  // Non-increasing ones are fine.
  EXPECT_NO_THROW(dag_mechanism(dag.graph, dag.game, s,
                                WeightFunction::geometric(q("1/2"))));

  // On a tree-shaped graph the same family accepts increasing weights.
  testutil::BuiltInstance tree = testutil::tree_showcase();
  MechanismSpec spec{MechanismSpec::Mode::DagFamily, WeightFunction::darpa_mit()};
  EXPECT_NO_THROW(run_mechanism(spec, tree.graph, tree.game));
}

TEST(MechanismTest, WeightsMustBePositiveAtOccurringDepths) {
  DiffusionGraph chain(2, GraphMode::Tree, Coalition{0}, {{0, 1}});
  Game game = Game::additive({Rational(0), Rational(1)});
  EXPECT_THROW(
      tree_mechanism(chain, game, WeightFunction::table({Rational(1), Rational(0)})),
      std::domain_error);
  EXPECT_THROW(
      tree_mechanism(chain, game,
                     WeightFunction::linear(Rational(1), Rational(-1))),
      std::domain_error);
}

TEST(MechanismTest, EveryModeAllocatesTheGrandWorth) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);
    DiffusionGraph tree = random_tree_graph(rng, n);
    DiffusionGraph dag = random_layered_dag(rng, n);
    MixedPermissionStructure structure = random_structure(rng, dag);
    Game game = random_game(rng, n);

    const Rational worth = game.value(Coalition::full(n));
    EXPECT_EQ(run_mechanism({MechanismSpec::Mode::PlainShapley,
                             WeightFunction::constant(Rational(1))},
                            tree, game)
                  .total(),
              worth);
    EXPECT_EQ(run_mechanism({MechanismSpec::Mode::PlainPermissionShapley,
                             WeightFunction::constant(Rational(1))},
                            tree, game)
                  .total(),
              worth);
    EXPECT_EQ(run_mechanism({MechanismSpec::Mode::TreeFamily,
                             WeightFunction::geometric(q("1/3"))},
                            tree, game)
                  .total(),
              worth);
    EXPECT_EQ(run_mechanism({MechanismSpec::Mode::DagFamily,
                             WeightFunction::geometric(q("1/2"))},
                            dag, game, structure)
                  .total(),
              worth);
  }
}

TEST(MechanismTest, NaturalStructureMatchesGraphShape) {
  testutil::BuiltInstance tree = testutil::tree_showcase();
  MixedPermissionStructure from_tree = natural_structure(tree.graph);
  EXPECT_EQ(from_tree.superiors(testutil::kF), Coalition{testutil::kC});

  testutil::BuiltInstance dag = testutil::dag_showcase();
  MixedPermissionStructure disjunctive = natural_structure(dag.graph);
  // Any single inviter suffices under the natural DAG reading.
  EXPECT_TRUE(is_autonomous(Coalition{testutil::kR1, testutil::kDagC}, disjunctive));
}

TEST(MechanismTest, DroppedPlayersEarnNothing) {
  testutil::BuiltInstance tree = testutil::tree_showcase();
  DiffusionGraph pruned = tree.graph.deduced({{testutil::kB, testutil::kE}});
  MechanismSpec spec{MechanismSpec::Mode::TreeFamily,
                     WeightFunction::geometric(q("1/2"))};
  Allocation payoffs = run_mechanism(spec, pruned, tree.game);
  EXPECT_EQ(payoffs.at(testutil::kE), Rational(0));
  EXPECT_EQ(payoffs.at(testutil::kG), Rational(0));
  EXPECT_EQ(payoffs.at(testutil::kH), Rational(0));
  // The masked game still pays out its own grand worth in full.
  EXPECT_EQ(payoffs.total(), tree.game.value(pruned.active()));
}

TEST(MechanismTest, ExplicitStructureOverridesTheNaturalOne) {
  testutil::BuiltInstance dag = testutil::dag_showcase();
  MechanismSpec spec{MechanismSpec::Mode::DagFamily,
                     WeightFunction::constant(Rational(1))};
  Allocation bespoke =
      run_mechanism(spec, dag.graph, dag.game, testutil::dag_showcase_structure(dag.graph));
  Allocation natural = run_mechanism(spec, dag.graph, dag.game);
  EXPECT_NE(bespoke, natural);
  EXPECT_EQ(bespoke.total(), natural.total());
}

}  // namespace
}  // namespace coopnet
