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

#include <stdexcept>
#include <string>

namespace coopnet {

namespace {

Rational pow_rational(const Rational& base, int exponent) {
  Rational out = 1;
  for (int k = 0; k < exponent; ++k) out *= base;
  return out;
}

void require_valid(const DiffusionGraph& graph) {
  auto violations = graph.validate();
  if (!violations.empty()) throw std::invalid_argument(violations.front());
}

// Weights f(depth) for active players; inactive players get a placeholder 1
// (they are null in every restricted game, so their weight never matters,
// but the weighted value insists on positive entries).
Weights depth_weights(const DiffusionGraph& graph, const WeightFunction& f) {
  DepthVector depths = graph.depths();
  const int max_depth = depths.max_depth();
  for (int d = 0; d <= max_depth; ++d) {
    if (f.at(d) <= 0) {
      throw std::domain_error("weight function is not positive at depth " +
                              std::to_string(d));
    }
  }
  if (graph.mode() == GraphMode::Dag) {
    if (f.kind() == WeightFunction::Kind::DarpaMIT) {
      throw std::domain_error(
          "doubling weights are tree-only; general invitation graphs require a "
          "non-increasing weight function");
    }
    for (int d = 0; d + 1 <= max_depth; ++d) {
      if (f.at(d + 1) > f.at(d)) {
        throw std::domain_error("weight function increases between depths " +
                                std::to_string(d) + " and " + std::to_string(d + 1) +
                                "; general invitation graphs require non-increasing weights");
      }
    }
  }
  Weights weights = Weights::ones(graph.n_players());
  for (PlayerId i : graph.active().members()) {
    weights.w[static_cast<std::size_t>(i)] = f.at(depths.at(i));
  }
  return weights;
}

}  // namespace

WeightFunction WeightFunction::constant(Rational c) {
  return WeightFunction(Kind::Constant, std::move(c), 0, {});
}

WeightFunction WeightFunction::table(std::vector<Rational> by_depth) {
  if (by_depth.empty()) throw std::invalid_argument("weight table must not be empty");
  return WeightFunction(Kind::Table, 0, 0, std::move(by_depth));
}

WeightFunction WeightFunction::geometric(Rational base) {
  if (base <= 0) throw std::invalid_argument("geometric weight base must be positive");
  return WeightFunction(Kind::Geometric, std::move(base), 0, {});
}

WeightFunction WeightFunction::linear(Rational offset, Rational slope) {
  return WeightFunction(Kind::Linear, std::move(offset), std::move(slope), {});
}

WeightFunction WeightFunction::darpa_mit() {
  return WeightFunction(Kind::DarpaMIT, 0, 0, {});
}

Rational WeightFunction::at(int depth) const {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  switch (kind_) {
    case Kind::Constant:
      return a_;
    case Kind::Table: {
      auto index = std::min<std::size_t>(static_cast<std::size_t>(depth), table_.size() - 1);
      return table_[index];
    }
    case Kind::Geometric:
      return pow_rational(a_, depth);
    case Kind::Linear:
      return a_ + b_ * depth;
    case Kind::DarpaMIT:
      return depth == 0 ? Rational(1) : pow_rational(2, depth - 1);
  }
  throw std::logic_error("unreachable weight kind");
}

std::string WeightFunction::describe() const {
  switch (kind_) {
    case Kind::Constant:
      return "const:" + to_string(a_);
    case Kind::Table: {
      std::string out = "table:";
      for (std::size_t i = 0; i < table_.size(); ++i) {
        if (i) out += ',';
        out += to_string(table_[i]);
      }
      return out;
    }
    case Kind::Geometric:
      return "geo:" + to_string(a_);
    case Kind::Linear:
      return "linear:" + to_string(a_) + "+" + to_string(b_) + "d";
    case Kind::DarpaMIT:
      return "darpa";
  }
  throw std::logic_error("unreachable weight kind");
}

std::string MechanismSpec::describe() const {
  switch (mode) {
    case Mode::PlainShapley:
      return "plain-shapley";
    case Mode::PlainPermissionShapley:
      return "permission-shapley";
    case Mode::TreeFamily:
      return "tree[" + f.describe() + "]";
    case Mode::DagFamily:
      return "dag[" + f.describe() + "]";
  }
  throw std::logic_error("unreachable mechanism mode");
}

MixedPermissionStructure natural_structure(const DiffusionGraph& graph) {
  return graph.mode() == GraphMode::Tree ? MixedPermissionStructure::from_tree(graph)
                                         : MixedPermissionStructure::disjunctive(graph);
}

Allocation permission_shapley(const DiffusionGraph& graph, const Game& game) {
  require_valid(graph);
  return shapley(permission_restriction(game, natural_structure(graph)));
}

Allocation tree_mechanism(const DiffusionGraph& graph, const Game& game,
                          const WeightFunction& f) {
  require_valid(graph);
  if (graph.mode() != GraphMode::Tree) {
    throw std::domain_error("tree mechanism requires a tree-shaped graph");
  }
  Weights weights = depth_weights(graph, f);
  return weighted_shapley(
      permission_restriction(game, MixedPermissionStructure::from_tree(graph)), weights);
}

Allocation additive_tree_closed_form(const DiffusionGraph& graph, const Game& game,
                                     const WeightFunction& f) {
  require_valid(graph);
  if (graph.mode() != GraphMode::Tree) {
    throw std::domain_error("the closed form applies to tree-shaped graphs only");
  }
  if (game.kind() != Game::Kind::Additive) {
    throw std::domain_error("the closed form applies to additive games only");
  }
  DepthVector depths = graph.depths();
  const int max_depth = depths.max_depth();
  for (int d = 0; d <= max_depth; ++d) {
    if (f.at(d) <= 0) {
      throw std::domain_error("weight function is not positive at depth " +
                              std::to_string(d));
    }
  }
  // parent[i] for active invitees; each active non-initiator has exactly one
  // surviving in-edge.
  std::vector<PlayerId> parent(static_cast<std::size_t>(graph.n_players()), -1);
  for (const Edge& e : graph.edges()) {
    if (graph.active().contains(e.from) && graph.active().contains(e.to)) {
      parent[static_cast<std::size_t>(e.to)] = e.from;
    }
  }
  // Path-weight denominators by depth: f(0) + ... + f(d).
  std::vector<Rational> path_weight(static_cast<std::size_t>(max_depth) + 1);
  Rational running = 0;
  for (int d = 0; d <= max_depth; ++d) {
    running += f.at(d);
    path_weight[static_cast<std::size_t>(d)] = running;
  }

  const std::vector<Rational>& worth = game.additive_values();
  Allocation out{std::vector<Rational>(static_cast<std::size_t>(graph.n_players()), Rational(0))};
  for (PlayerId k : graph.active().members()) {
    const Rational& v_k = worth[static_cast<std::size_t>(k)];
    if (v_k == 0) continue;
    const Rational& denominator = path_weight[static_cast<std::size_t>(depths.at(k))];
    for (PlayerId i = k; i != -1; i = parent[static_cast<std::size_t>(i)]) {
      out.payoff[static_cast<std::size_t>(i)] += f.at(depths.at(i)) * v_k / denominator;
    }
  }
  return out;
}

Allocation dag_mechanism(const DiffusionGraph& graph, const Game& game,
                         const MixedPermissionStructure& structure,
                         const WeightFunction& f) {
  require_valid(graph);
  if (structure.n_players() != graph.n_players()) {
    throw std::invalid_argument("structure and graph disagree on player count");
  }
  Weights weights = depth_weights(graph, f);
  return weighted_shapley(permission_restriction(game, structure), weights);
}

Allocation run_mechanism(const MechanismSpec& spec, const DiffusionGraph& graph,
                         const Game& game,
                         const std::optional<MixedPermissionStructure>& structure) {
  switch (spec.mode) {
    case MechanismSpec::Mode::PlainShapley:
      require_valid(graph);
      return shapley(game.masked(graph.active()));
    case MechanismSpec::Mode::PlainPermissionShapley:
      require_valid(graph);
      return shapley(permission_restriction(
          game, structure ? *structure : natural_structure(graph)));
    case MechanismSpec::Mode::TreeFamily:
      if (structure) {
        require_valid(graph);
        if (graph.mode() != GraphMode::Tree) {
          throw std::domain_error("tree mechanism requires a tree-shaped graph");
        }
        return weighted_shapley(permission_restriction(game, *structure),
                                depth_weights(graph, spec.f));
      }
      return tree_mechanism(graph, game, spec.f);
    case MechanismSpec::Mode::DagFamily:
      return dag_mechanism(graph, game,
                           structure ? *structure : natural_structure(graph), spec.f);
  }
  throw std::logic_error("unreachable mechanism mode");
}

}  // namespace coopnet
