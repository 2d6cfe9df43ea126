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

#include <compare>
#include <string>
#include <vector>

#include "coopnet/coalition.hpp"

namespace coopnet {

// A directed invitation edge: `from` invited `to`.
struct Edge {
  PlayerId from = 0;
  PlayerId to = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class GraphMode { Tree, Dag };

// Shortest invitation distance from the initiator set, per player.
// Initiators sit at depth 0. Inactive players carry kUnreachable.
struct DepthVector {
  static constexpr int kUnreachable = -1;
  std::vector<int> depth;
  int at(PlayerId i) const { return depth[i]; }
  int max_depth() const;
};

// An invitation network: players, the initiator set, and directed invitation
// edges. Tree mode models a forest (one root per initiator, unique parents);
// Dag mode allows several inviters per player.
//
// A graph also carries an `active` player set. Freshly built graphs have all
// players active; the edge-withholding operation below shrinks it. Inactive
// players keep their indices (payoff comparisons across withholding need a
// stable universe) but drop out of validation, depths, and every computation
// downstream.
class DiffusionGraph {
 public:
  // Edges are stored sorted by (from, to); duplicates are rejected here,
  // deeper structural problems are reported by validate().
  DiffusionGraph(int n_players, GraphMode mode, Coalition initiators,
                 std::vector<Edge> edges);

  int n_players() const { return n_; }
  GraphMode mode() const { return mode_; }
  Coalition initiators() const { return initiators_; }
  Coalition active() const { return active_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Structural checks: initiators nonempty and in-degree 0, edge endpoints
  // valid and active, acyclicity, every active player reachable from an
  // initiator, and unique parents in Tree mode. Returns human-readable
  // violations; empty means the graph is well-formed.
  std::vector<std::string> validate() const;
  bool is_valid() const { return validate().empty(); }

  // Multi-source BFS distance from the initiator set over active players.
  // Requires a valid graph.
  DepthVector depths() const;

  // The graph after the listed edges are withheld: players no longer
  // reachable from an initiator become inactive, and the edge set is the
  // survivors' restriction of the remaining edges. Initiators always remain.
  // Throws std::invalid_argument if a removed edge is not present.
  DiffusionGraph deduced(const std::vector<Edge>& removed) const;

  // All edges leaving player i.
  std::vector<Edge> out_edges(PlayerId i) const;

  // Active inviters of j (sources of in-edges).
  Coalition in_neighbors(PlayerId j) const;

 private:
  int n_;
  GraphMode mode_;
  Coalition initiators_;
  Coalition active_;
  std::vector<Edge> edges_;
};

}  // namespace coopnet
