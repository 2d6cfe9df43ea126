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

#include <functional>
#include <memory>
#include <string>

#include "coopnet/coalition.hpp"

namespace coopnet {

// A monotone permission condition over a player's inviters: atoms joined by
// AND/OR, no negation. Initiators carry AlwaysTrue. Immutable; nodes are
// shared freely.
class PermissionExpression {
 public:
  enum class Kind { AlwaysTrue, Atom, And, Or };

  static PermissionExpression always_true();
  static PermissionExpression atom(PlayerId i);
  static PermissionExpression conj(PermissionExpression lhs, PermissionExpression rhs);
  static PermissionExpression disj(PermissionExpression lhs, PermissionExpression rhs);

  // OR (resp. AND) over every member; `members` must be nonempty.
  static PermissionExpression any_of(Coalition members);
  static PermissionExpression all_of(Coalition members);

  Kind kind() const { return node_->kind; }

  // Evaluates with atom i true iff i is in `members` AND in `allowed`.
  // The `allowed` mask models inviters whose invitation still stands; an
  // inviter erased by edge withholding can no longer grant permission even
  // when present in the coalition.
  bool eval(Coalition members, Coalition allowed) const;
  bool eval(Coalition members) const {
    return eval(members, Coalition(~std::uint64_t{0}));
  }

  // Every player mentioned by an atom.
  Coalition atoms() const;

  // Infix rendering with `&` binding tighter than `|`; parentheses only
  // where required. `name` maps player ids to display names.
  std::string to_string(const std::function<std::string(PlayerId)>& name) const;

 private:
  struct Node {
    Kind kind;
    PlayerId atom = -1;
    std::shared_ptr<const Node> lhs, rhs;
  };
  explicit PermissionExpression(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  static bool eval_node(const Node& node, Coalition members, Coalition allowed);
  static void collect_atoms(const Node& node, Coalition& out);
  static std::string render(const Node& node,
                            const std::function<std::string(PlayerId)>& name,
                            bool parenthesize_or);

  std::shared_ptr<const Node> node_;
};

}  // namespace coopnet
