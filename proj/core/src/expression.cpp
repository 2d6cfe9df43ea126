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

#include "coopnet/expression.hpp"

#include <stdexcept>

namespace coopnet {

PermissionExpression PermissionExpression::always_true() {
  return PermissionExpression(
      std::make_shared<const Node>(Node{Kind::AlwaysTrue}));
}

PermissionExpression PermissionExpression::atom(PlayerId i) {
  if (i < 0 || i >= kMaxPlayers)
    throw std::invalid_argument("permission atom: player id out of range");
  return PermissionExpression(
      std::make_shared<const Node>(Node{Kind::Atom, i}));
}

PermissionExpression PermissionExpression::conj(PermissionExpression lhs,
                                                PermissionExpression rhs) {
  return PermissionExpression(std::make_shared<const Node>(
      Node{Kind::And, -1, std::move(lhs.node_), std::move(rhs.node_)}));
}

PermissionExpression PermissionExpression::disj(PermissionExpression lhs,
                                                PermissionExpression rhs) {
  return PermissionExpression(std::make_shared<const Node>(
      Node{Kind::Or, -1, std::move(lhs.node_), std::move(rhs.node_)}));
}

namespace {

PermissionExpression fold(Coalition members, bool conjunction) {
  const auto ids = members.members();
  if (ids.empty())
    throw std::invalid_argument("permission expression over no inviters");
  PermissionExpression acc = PermissionExpression::atom(ids[0]);
  for (std::size_t k = 1; k < ids.size(); ++k) {
    PermissionExpression next = PermissionExpression::atom(ids[k]);
    acc = conjunction ? PermissionExpression::conj(std::move(acc), std::move(next))
                      : PermissionExpression::disj(std::move(acc), std::move(next));
  }
  return acc;
}

}  // namespace

PermissionExpression PermissionExpression::any_of(Coalition members) {
  return fold(members, /*conjunction=*/false);
}

PermissionExpression PermissionExpression::all_of(Coalition members) {
  return fold(members, /*conjunction=*/true);
}

bool PermissionExpression::eval_node(const Node& node, Coalition members,
                                     Coalition allowed) {
  switch (node.kind) {
    case Kind::AlwaysTrue:
      return true;
    case Kind::Atom:
      return members.contains(node.atom) && allowed.contains(node.atom);
    case Kind::And:
      return eval_node(*node.lhs, members, allowed) &&
             eval_node(*node.rhs, members, allowed);
    case Kind::Or:
      return eval_node(*node.lhs, members, allowed) ||
             eval_node(*node.rhs, members, allowed);
  }
  return false;
}

bool PermissionExpression::eval(Coalition members, Coalition allowed) const {
  return eval_node(*node_, members, allowed);
}

void PermissionExpression::collect_atoms(const Node& node, Coalition& out) {
  switch (node.kind) {
    case Kind::AlwaysTrue:
      return;
    case Kind::Atom:
      out = out.with(node.atom);
      return;
    case Kind::And:
    case Kind::Or:
      collect_atoms(*node.lhs, out);
      collect_atoms(*node.rhs, out);
      return;
  }
}

Coalition PermissionExpression::atoms() const {
  Coalition out;
  collect_atoms(*node_, out);
  return out;
}

std::string PermissionExpression::render(
    const Node& node, const std::function<std::string(PlayerId)>& name,
    bool parenthesize_or) {
  switch (node.kind) {
    case Kind::AlwaysTrue:
      return "true";
    case Kind::Atom:
      return name(node.atom);
    case Kind::And:
      return render(*node.lhs, name, true) + " & " + render(*node.rhs, name, true);
    case Kind::Or: {
      std::string body =
          render(*node.lhs, name, false) + " | " + render(*node.rhs, name, false);
      return parenthesize_or ? "(" + body + ")" : body;
    }
  }
  return "";
}

std::string PermissionExpression::to_string(
    const std::function<std::string(PlayerId)>& name) const {
  return render(*node_, name, false);
}

}  // namespace coopnet
