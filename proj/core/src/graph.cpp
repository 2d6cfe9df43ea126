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

#include "coopnet/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace coopnet {

int DepthVector::max_depth() const {
  int mx = 0;
  for (int d : depth)
    if (d > mx) mx = d;
  return mx;
}

DiffusionGraph::DiffusionGraph(int n, GraphMode mode, Coalition initiators,
                               std::vector<Edge> edges)
    : n_(n), mode_(mode), initiators_(initiators),
      active_(Coalition::full(n)), edges_(std::move(edges)) {
  if (n < 1 || n > kMaxPlayers)
    throw std::invalid_argument("graph: player count out of range");
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("graph: duplicate edge");
}

std::vector<std::string> DiffusionGraph::validate() const {
  std::vector<std::string> violations;
  auto complain = [&](std::string msg) { violations.push_back(std::move(msg)); };

  if ((initiators_ & active_).is_empty())
    complain("initiator set is empty");
  if (!initiators_.subset_of(Coalition::full(n_)))
    complain("initiator outside the player range");

  for (const Edge& e : edges_) {
    if (e.from < 0 || e.from >= n_ || e.to < 0 || e.to >= n_) {
      complain("edge endpoint outside the player range");
      return violations;  // later checks index by endpoint
    }
    if (!active_.contains(e.from) || !active_.contains(e.to))
      complain("edge touches an inactive player");
    if (e.from == e.to) complain("self-loop on player " + std::to_string(e.from));
    if (initiators_.contains(e.to))
      complain("edge points into initiator " + std::to_string(e.to));
  }

  // Kahn layering detects cycles among active players.
  std::vector<int> indegree(n_, 0);
  for (const Edge& e : edges_) ++indegree[e.to];
  std::deque<PlayerId> queue;
  for (PlayerId i = 0; i < n_; ++i)
    if (active_.contains(i) && indegree[i] == 0) queue.push_back(i);
  int processed = 0;
  std::vector<int> order_indegree = indegree;
  while (!queue.empty()) {
    PlayerId i = queue.front();
    queue.pop_front();
    ++processed;
    for (const Edge& e : edges_)
      if (e.from == i && --order_indegree[e.to] == 0) queue.push_back(e.to);
  }
  if (processed != (active_ & Coalition::full(n_)).size())
    complain("invitation edges contain a cycle");

  // Reachability from initiators.
  Coalition reached = initiators_ & active_;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Edge& e : edges_)
      if (reached.contains(e.from) && !reached.contains(e.to)) {
        reached = reached.with(e.to);
        grew = true;
      }
  }
  for (PlayerId i = 0; i < n_; ++i)
    if (active_.contains(i) && !reached.contains(i))
      complain("player " + std::to_string(i) + " is unreachable from the initiators");

  if (mode_ == GraphMode::Tree) {
    for (PlayerId i = 0; i < n_; ++i) {
      if (!active_.contains(i) || initiators_.contains(i)) continue;
      if (indegree[i] != 1)
        complain("tree mode: player " + std::to_string(i) + " has " +
                 std::to_string(indegree[i]) + " parents (want exactly 1)");
    }
  }
  return violations;
}

DepthVector DiffusionGraph::depths() const {
  DepthVector dv;
  dv.depth.assign(n_, DepthVector::kUnreachable);
  std::deque<PlayerId> queue;
  for (PlayerId i : (initiators_ & active_).members()) {
    dv.depth[i] = 0;
    queue.push_back(i);
  }
  while (!queue.empty()) {
    PlayerId i = queue.front();
    queue.pop_front();
    for (const Edge& e : edges_)
      if (e.from == i && dv.depth[e.to] == DepthVector::kUnreachable) {
        dv.depth[e.to] = dv.depth[i] + 1;
        queue.push_back(e.to);
      }
  }
  return dv;
}

DiffusionGraph DiffusionGraph::deduced(const std::vector<Edge>& removed) const {
  for (const Edge& r : removed)
    if (!std::binary_search(edges_.begin(), edges_.end(), r))
      throw std::invalid_argument("withheld edge (" + std::to_string(r.from) +
                                  "," + std::to_string(r.to) +
                                  ") is not in the graph");
  std::vector<Edge> kept;
  kept.reserve(edges_.size());
  for (const Edge& e : edges_)
    if (std::find(removed.begin(), removed.end(), e) == removed.end())
      kept.push_back(e);

  // Reachability closure from the initiators via the remaining edges.
  Coalition survivors = initiators_ & active_;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Edge& e : kept)
      if (survivors.contains(e.from) && !survivors.contains(e.to)) {
        survivors = survivors.with(e.to);
        grew = true;
      }
  }
  std::vector<Edge> surviving_edges;
  for (const Edge& e : kept)
    if (survivors.contains(e.from) && survivors.contains(e.to))
      surviving_edges.push_back(e);

  DiffusionGraph g(n_, mode_, initiators_, std::move(surviving_edges));
  g.active_ = survivors;
  return g;
}

std::vector<Edge> DiffusionGraph::out_edges(PlayerId i) const {
  std::vector<Edge> out;
  for (const Edge& e : edges_)
    if (e.from == i) out.push_back(e);
  return out;
}

Coalition DiffusionGraph::in_neighbors(PlayerId j) const {
  Coalition in;
  for (const Edge& e : edges_)
    if (e.to == j) in = in.with(e.from);
  return in;
}

}  // namespace coopnet
