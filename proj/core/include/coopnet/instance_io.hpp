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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coopnet/dic.hpp"
#include "coopnet/mechanism.hpp"

namespace coopnet {

// Parse failure with a 1-based source location.
struct ParseError : std::runtime_error {
  ParseError(int line, int column, const std::string& message);
  int line;
  int column;
};

// One instance file: named players, an invitation graph, a game, and
// optionally spelled-out permission conditions and a mechanism choice.
struct ParsedInstance {
  std::vector<std::string> names;
  DiffusionGraph graph;
  Game game;
  std::optional<MixedPermissionStructure> structure;
  std::optional<MechanismSpec> mechanism;

  PlayerId player(std::string_view name) const;  // -1 when unknown
};

// Line-oriented sections: [players] (names/initiators/mode), [edges]
// (`inviter -> invitee`), optional [permissions] (`player: expr` with `&`
// binding tighter than `|`), [game] (representation header `table` |
// `additive` | `coverage` | `dividends`, then `{a,b} = p/q` or `name = p/q`
// lines; tables must list every nonempty coalition), optional [mechanism]
// (`mode = ...`, `f = ...`). `#` starts a comment. Throws ParseError with
// line/column on any defect.
ParsedInstance parse_instance(const std::string& text);

// Canonical text for an instance; parse(serialize(x)) reproduces x and
// serialize is a fixpoint on its own output.
std::string serialize_instance(const ParsedInstance& instance);

// Weight-function spellings: "const:c", "table:a,b,c", "geo:r",
// "linear:a+bd", "darpa". Throws std::invalid_argument on anything else.
WeightFunction parse_weight_function(std::string_view text);

// Mechanism-mode spellings: "plain-shapley", "permission-shapley", "tree",
// "dag". Throws std::invalid_argument on anything else.
MechanismSpec::Mode parse_mechanism_mode(std::string_view text);

enum class ExportFormat { Table, Csv, JsonLines, Dot };

// "table", "csv", "json-lines", "dot".
ExportFormat parse_export_format(std::string_view text);

// Renders an allocation: Table gives aligned name/payoff rows plus an
// efficiency line; Csv is `name,payoff_num,payoff_den` rows under a header;
// JsonLines is one self-describing JSON object per player; Dot draws the
// invitation graph with payoffs in the node labels. `decimal` appends an
// approximate column to Table/Csv output (the exact form always stays).
std::string export_allocation(const std::vector<std::string>& names,
                              const DiffusionGraph& graph, const Game& game,
                              const Allocation& allocation, ExportFormat format,
                              bool decimal = false);

// `{a,b} = p/q` lines, coalitions sorted; reusable as the body of a
// dividends game section.
std::string format_dividends(const std::vector<std::string>& names,
                             const DividendMap& dividends);

// Human-readable verdict: efficiency line, worst deviation per player,
// violation list. JsonLines gives one JSON object per deviation instead.
std::string format_dic_report(const std::vector<std::string>& names,
                              const DicReport& report, ExportFormat format);

}  // namespace coopnet
