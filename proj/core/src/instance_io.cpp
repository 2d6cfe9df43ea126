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

#include "coopnet/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace coopnet {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// One physical line of the input with its comment stripped.
struct Line {
  int number = 0;
  std::string text;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> lines;
  std::string current;
  int number = 1;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back({number++, current});
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) lines.push_back({number, current});
  for (Line& line : lines) {
    if (auto hash = line.text.find('#'); hash != std::string::npos) {
      line.text.erase(hash);
    }
  }
  return lines;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

// Cursor over one line, reporting 1-based columns.
struct LineCursor {
  const Line& line;
  std::size_t pos = 0;

  void skip_spaces() {
    while (pos < line.text.size() &&
           std::isspace(static_cast<unsigned char>(line.text[pos]))) {
      ++pos;
    }
  }
  bool done() {
    skip_spaces();
    return pos >= line.text.size();
  }
  int column() const { return static_cast<int>(pos) + 1; }
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line.number, column(), message);
  }
  char peek() {
    skip_spaces();
    return pos < line.text.size() ? line.text[pos] : '\0';
  }
  bool take(char c) {
    if (peek() != c) return false;
    ++pos;
    return true;
  }
  void expect(char c, const std::string& what) {
    if (!take(c)) fail("expected " + what);
  }
  std::string take_name() {
    skip_spaces();
    if (pos >= line.text.size() || !is_name_start(line.text[pos])) {
      fail("expected a player name");
    }
    std::size_t start = pos;
    while (pos < line.text.size() && is_name_char(line.text[pos])) ++pos;
    return line.text.substr(start, pos - start);
  }
  // A run of non-space, non-delimiter characters (rationals, keywords).
  std::string take_word(std::string_view stop = "") {
    skip_spaces();
    std::size_t start = pos;
    while (pos < line.text.size() &&
           !std::isspace(static_cast<unsigned char>(line.text[pos])) &&
           stop.find(line.text[pos]) == std::string_view::npos) {
      ++pos;
    }
    if (start == pos) fail("expected a value");
    return line.text.substr(start, pos - start);
  }
};

Rational parse_rational_at(LineCursor& cursor, std::string_view stop = "") {
  const int column = (cursor.skip_spaces(), cursor.column());
  std::string word = cursor.take_word(stop);
  auto value = parse_rational(word);
  if (!value) {
    throw ParseError(cursor.line.number, column,
                     "'" + word + "' is not a rational (use p/q or an integer; "
                     "denominator must be nonzero)");
  }
  return *value;
}

// Sections of the file, each a list of content lines.
struct Sections {
  std::map<std::string, std::vector<Line>> by_name;
  std::map<std::string, Line> headers;
};

Sections split_sections(const std::vector<Line>& lines) {
  static const std::set<std::string> known = {"players", "edges", "permissions",
                                              "game", "mechanism"};
  Sections sections;
  std::string current;
  for (const Line& line : lines) {
    if (blank(line.text)) continue;
    LineCursor cursor{line};
    if (cursor.peek() == '[') {
      cursor.take('[');
      std::string name = cursor.take_name();
      cursor.expect(']', "']' after the section name");
      if (!cursor.done()) cursor.fail("unexpected text after the section header");
      if (!known.count(name)) {
        throw ParseError(line.number, 1, "unknown section [" + name + "]");
      }
      if (sections.by_name.count(name)) {
        throw ParseError(line.number, 1, "duplicate section [" + name + "]");
      }
      sections.by_name[name];  // mark present even if empty
      sections.headers.emplace(name, line);
      current = name;
      continue;
    }
    if (current.empty()) {
      throw ParseError(line.number, cursor.column(),
                       "content before the first section; start with [players]");
    }
    sections.by_name[current].push_back(line);
  }
  if (!sections.by_name.count("players")) {
    throw ParseError(1, 1, "missing [players] section");
  }
  if (!sections.by_name.count("game")) {
    throw ParseError(1, 1, "missing [game] section");
  }
  return sections;
}

// key = rest-of-line sections ([players], [mechanism]).
struct KeyValue {
  Line line;
  std::string value;
  std::size_t value_pos = 0;  // offset of the value within the line
};

std::map<std::string, KeyValue> key_value_lines(const std::vector<Line>& lines) {
  std::map<std::string, KeyValue> out;
  for (const Line& line : lines) {
    LineCursor cursor{line};
    std::string key = cursor.take_name();
    cursor.expect('=', "'=' after '" + key + "'");
    cursor.skip_spaces();
    std::string rest = line.text.substr(cursor.pos);
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) {
      rest.pop_back();
    }
    if (rest.empty()) cursor.fail("missing value after '" + key + " ='");
    if (!out.emplace(key, KeyValue{line, rest, cursor.pos}).second) {
      throw ParseError(line.number, 1, "duplicate key '" + key + "'");
    }
  }
  return out;
}

class NameTable {
 public:
  explicit NameTable(const std::vector<std::string>& names) : names_(names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      index_.emplace(names[i], static_cast<PlayerId>(i));
    }
  }
  PlayerId find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    return it == index_.end() ? -1 : it->second;
  }
  PlayerId require(LineCursor& cursor) const {
    const int column = (cursor.skip_spaces(), cursor.column());
    std::string name = cursor.take_name();
    PlayerId id = find(name);
    if (id < 0) {
      throw ParseError(cursor.line.number, column, "unknown player '" + name + "'");
    }
    return id;
  }
  const std::string& name(PlayerId i) const { return names_[static_cast<std::size_t>(i)]; }

 private:
  const std::vector<std::string>& names_;
  std::map<std::string, PlayerId, std::less<>> index_;
};

// `{a,b,c}` coalition literal.
Coalition parse_coalition(LineCursor& cursor, const NameTable& names) {
  cursor.expect('{', "'{' opening a coalition");
  Coalition members;
  if (cursor.take('}')) {
    cursor.fail("coalition must not be empty");
  }
  for (;;) {
    const int column = (cursor.skip_spaces(), cursor.column());
    PlayerId id = names.require(cursor);
    if (members.contains(id)) {
      throw ParseError(cursor.line.number, column,
                       "player '" + names.name(id) + "' listed twice");
    }
    members = members.with(id);
    if (cursor.take('}')) return members;
    cursor.expect(',', "',' or '}' in the coalition");
  }
}

// Permission grammar: or := and ('|' and)*; and := prim ('&' prim)*;
// prim := name | '(' or ')'.
PermissionExpression parse_or(LineCursor& cursor, const NameTable& names);

PermissionExpression parse_primary(LineCursor& cursor, const NameTable& names) {
  if (cursor.take('(')) {
    PermissionExpression inner = parse_or(cursor, names);
    cursor.expect(')', "')'");
    return inner;
  }
  return PermissionExpression::atom(names.require(cursor));
}

PermissionExpression parse_and(LineCursor& cursor, const NameTable& names) {
  PermissionExpression left = parse_primary(cursor, names);
  while (cursor.take('&')) {
    left = PermissionExpression::conj(left, parse_primary(cursor, names));
  }
  return left;
}

PermissionExpression parse_or(LineCursor& cursor, const NameTable& names) {
  PermissionExpression left = parse_and(cursor, names);
  while (cursor.take('|')) {
    left = PermissionExpression::disj(left, parse_and(cursor, names));
  }
  return left;
}

std::vector<std::string> parse_players_names(const KeyValue& entry) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  LineCursor cursor{entry.line};
  cursor.pos = entry.value_pos;
  while (!cursor.done()) {
    const int column = cursor.column();
    std::string name = cursor.take_name();
    if (!seen.insert(name).second) {
      throw ParseError(entry.line.number, column,
                       "duplicate player name '" + name + "'");
    }
    names.push_back(std::move(name));
  }
  return names;
}

Game parse_game_section(const std::vector<Line>& lines, const Line& header,
                        const NameTable& names, int n_players) {
  if (lines.empty()) {
    throw ParseError(header.number, 1,
                     "[game] needs a representation header: table, additive, "
                     "coverage, or dividends");
  }
  LineCursor first{lines.front()};
  std::string representation = first.take_name();
  if (!first.done()) first.fail("unexpected text after the representation");

  if (representation == "additive") {
    std::vector<Rational> worth(static_cast<std::size_t>(n_players), Rational(0));
    std::vector<bool> seen(static_cast<std::size_t>(n_players), false);
    for (std::size_t k = 1; k < lines.size(); ++k) {
      LineCursor cursor{lines[k]};
      PlayerId id = names.require(cursor);
      if (seen[static_cast<std::size_t>(id)]) {
        throw ParseError(lines[k].number, 1,
                         "player '" + names.name(id) + "' valued twice");
      }
      seen[static_cast<std::size_t>(id)] = true;
      cursor.expect('=', "'=' after the player name");
      worth[static_cast<std::size_t>(id)] = parse_rational_at(cursor);
      if (!cursor.done()) cursor.fail("unexpected trailing text");
    }
    return Game::additive(std::move(worth));
  }

  if (representation == "table" || representation == "dividends" ||
      representation == "coverage") {
    std::vector<std::pair<Coalition, Rational>> entries;
    std::map<Coalition, int> first_line;
    for (std::size_t k = 1; k < lines.size(); ++k) {
      LineCursor cursor{lines[k]};
      Coalition coalition = parse_coalition(cursor, names);
      cursor.expect('=', "'=' after the coalition");
      Rational value = parse_rational_at(cursor);
      if (!cursor.done()) cursor.fail("unexpected trailing text");
      if (representation != "coverage") {  // repeated coverage groups may add up
        auto [it, inserted] = first_line.emplace(coalition, lines[k].number);
        if (!inserted) {
          throw ParseError(lines[k].number, 1, "coalition defined twice");
        }
      }
      entries.emplace_back(coalition, std::move(value));
    }
    if (representation == "coverage") {
      return Game::coverage(n_players, std::move(entries));
    }
    if (representation == "dividends") {
      DividendMap d;
      for (auto& [coalition, value] : entries) d.add(coalition, value);
      return Game::from_dividends(n_players, std::move(d));
    }
    // table: exhaustive listing of every nonempty coalition.
    const std::uint64_t size = std::uint64_t{1} << n_players;
    std::vector<Rational> table(size, Rational(0));
    for (auto& [coalition, value] : entries) {
      table[coalition.bits()] = std::move(value);
    }
    for (std::uint64_t mask = 1; mask < size; ++mask) {
      if (!first_line.count(Coalition(mask))) {
        std::string missing;
        for (PlayerId i : Coalition(mask).members()) {
          if (!missing.empty()) missing += ',';
          missing += names.name(i);
        }
        throw ParseError(header.number, 1,
                         "table games list every nonempty coalition; missing {" +
                             missing + "}");
      }
    }
    return Game::explicit_table(n_players, std::move(table));
  }

  throw ParseError(lines.front().number, 1,
                   "unknown representation '" + representation +
                       "' (expected table, additive, coverage, or dividends)");
}

std::string render_expression(const PermissionExpression& expr, const NameTable& names) {
  return expr.to_string([&](PlayerId i) { return names.name(i); });
}

std::string coalition_text(Coalition c, const std::vector<std::string>& names) {
  std::string out = "{";
  bool first = true;
  for (PlayerId i : c.members()) {
    if (!first) out += ',';
    out += names[static_cast<std::size_t>(i)];
    first = false;
  }
  return out + "}";
}

std::string decimal_text(const Rational& r) {
  std::ostringstream out;
  out << r.convert_to<double>();
  return out.str();
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

ParseError::ParseError(int line_number, int column_number, const std::string& message)
    : std::runtime_error("line " + std::to_string(line_number) + ", column " +
                         std::to_string(column_number) + ": " + message),
      line(line_number),
      column(column_number) {}

PlayerId ParsedInstance::player(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<PlayerId>(i);
  }
  return -1;
}

ParsedInstance parse_instance(const std::string& text) {
  Sections sections = split_sections(split_lines(text));

  // [players]
  auto players_kv = key_value_lines(sections.by_name.at("players"));
  const Line& players_header = sections.headers.at("players");
  auto require_key = [&](const char* key) -> KeyValue& {
    auto it = players_kv.find(key);
    if (it == players_kv.end()) {
      throw ParseError(players_header.number, 1,
                       std::string("[players] is missing '") + key + " = ...'");
    }
    return it->second;
  };
  KeyValue& names_entry = require_key("names");
  std::vector<std::string> names = parse_players_names(names_entry);
  if (names.empty()) {
    throw ParseError(names_entry.line.number, 1, "need at least one player");
  }
  if (names.size() > static_cast<std::size_t>(kMaxTablePlayers)) {
    throw ParseError(names_entry.line.number, 1,
                     "instance files support at most " +
                         std::to_string(kMaxTablePlayers) + " players");
  }
  NameTable table(names);

  KeyValue& initiators_entry = require_key("initiators");
  Coalition initiators;
  {
    LineCursor cursor{initiators_entry.line};
    cursor.pos = initiators_entry.value_pos;
    while (!cursor.done()) initiators = initiators.with(table.require(cursor));
  }

  KeyValue& mode_entry = require_key("mode");
  GraphMode mode;
  if (mode_entry.value == "tree") {
    mode = GraphMode::Tree;
  } else if (mode_entry.value == "dag") {
    mode = GraphMode::Dag;
  } else {
    throw ParseError(mode_entry.line.number, 1,
                     "mode must be 'tree' or 'dag', not '" + mode_entry.value + "'");
  }
  for (const auto& [key, entry] : players_kv) {
    if (key != "names" && key != "initiators" && key != "mode") {
      throw ParseError(entry.line.number, 1, "unknown [players] key '" + key + "'");
    }
  }

  // [edges]
  std::vector<Edge> edges;
  Line edges_header = players_header;
  if (auto it = sections.by_name.find("edges"); it != sections.by_name.end()) {
    edges_header = sections.headers.at("edges");
    for (const Line& line : it->second) {
      LineCursor cursor{line};
      PlayerId from = table.require(cursor);
      cursor.expect('-', "'->' between inviter and invitee");
      cursor.pos = cursor.line.text.find('>', cursor.pos) == cursor.pos
                       ? cursor.pos + 1
                       : (cursor.fail("'->' between inviter and invitee"), 0);
      PlayerId to = table.require(cursor);
      if (!cursor.done()) cursor.fail("unexpected trailing text");
      edges.push_back({from, to});
    }
  }

  DiffusionGraph graph = [&] {
    try {
      return DiffusionGraph(static_cast<int>(names.size()), mode, initiators,
                            std::move(edges));
    } catch (const std::invalid_argument& error) {
      throw ParseError(edges_header.number, 1, error.what());
    }
  }();
  if (auto violations = graph.validate(); !violations.empty()) {
    throw ParseError(edges_header.number, 1, violations.front());
  }

  // [permissions]
  std::optional<MixedPermissionStructure> structure;
  if (auto it = sections.by_name.find("permissions"); it != sections.by_name.end()) {
    std::map<PlayerId, PermissionExpression> overrides;
    std::map<PlayerId, int> owner_line;
    for (const Line& line : it->second) {
      LineCursor cursor{line};
      const int column = (cursor.skip_spaces(), cursor.column());
      PlayerId owner = table.require(cursor);
      cursor.expect(':', "':' after the player name");
      PermissionExpression expr = parse_or(cursor, table);
      if (!cursor.done()) cursor.fail("unexpected trailing text");
      if (!owner_line.emplace(owner, line.number).second) {
        throw ParseError(line.number, column,
                         "permission for '" + table.name(owner) + "' given twice");
      }
      overrides.emplace(owner, std::move(expr));
    }
    try {
      structure = MixedPermissionStructure::with_conditions(graph, overrides);
    } catch (const std::invalid_argument& error) {
      int line = sections.headers.at("permissions").number;
      for (const auto& [owner, at] : owner_line) {
        if (std::string(error.what()).find("player " + std::to_string(owner)) !=
            std::string::npos) {
          line = at;
        }
      }
      throw ParseError(line, 1, error.what());
    }
  }

  // [game]
  Game game = [&]() -> Game {
    try {
      return parse_game_section(sections.by_name.at("game"),
                                sections.headers.at("game"), table,
                                static_cast<int>(names.size()));
    } catch (const ParseError&) {
      throw;
    } catch (const std::invalid_argument& error) {
      throw ParseError(sections.headers.at("game").number, 1, error.what());
    }
  }();

  // [mechanism]
  std::optional<MechanismSpec> mechanism;
  if (auto it = sections.by_name.find("mechanism"); it != sections.by_name.end()) {
    auto kv = key_value_lines(it->second);
    auto mode_it = kv.find("mode");
    if (mode_it == kv.end()) {
      throw ParseError(sections.headers.at("mechanism").number, 1,
                       "[mechanism] is missing 'mode = ...'");
    }
    MechanismSpec spec;
    try {
      spec.mode = parse_mechanism_mode(mode_it->second.value);
    } catch (const std::invalid_argument& error) {
      throw ParseError(mode_it->second.line.number, 1, error.what());
    }
    if (auto f_it = kv.find("f"); f_it != kv.end()) {
      try {
        spec.f = parse_weight_function(f_it->second.value);
      } catch (const std::invalid_argument& error) {
        throw ParseError(f_it->second.line.number, 1, error.what());
      }
    }
    for (const auto& [key, entry] : kv) {
      if (key != "mode" && key != "f") {
        throw ParseError(entry.line.number, 1,
                         "unknown [mechanism] key '" + key + "'");
      }
    }
    mechanism = spec;
  }

  return ParsedInstance{std::move(names), std::move(graph), std::move(game),
                        std::move(structure), std::move(mechanism)};
}

std::string serialize_instance(const ParsedInstance& instance) {
  const std::vector<std::string>& names = instance.names;
  NameTable table(names);
  std::ostringstream out;

  out << "[players]\n";
  out << "names =";
  for (const std::string& name : names) out << ' ' << name;
  out << "\ninitiators =";
  for (PlayerId i : instance.graph.initiators().members()) out << ' ' << names[static_cast<std::size_t>(i)];
  out << "\nmode = " << (instance.graph.mode() == GraphMode::Tree ? "tree" : "dag") << "\n";

  out << "\n[edges]\n";
  for (const Edge& e : instance.graph.edges()) {
    out << names[static_cast<std::size_t>(e.from)] << " -> "
        << names[static_cast<std::size_t>(e.to)] << "\n";
  }

  if (instance.structure) {
    out << "\n[permissions]\n";
    for (PlayerId i = 0; i < instance.graph.n_players(); ++i) {
      if (instance.graph.in_neighbors(i).is_empty()) continue;
      out << names[static_cast<std::size_t>(i)] << ": "
          << render_expression(instance.structure->condition(i), table) << "\n";
    }
  }

  out << "\n[game]\n";
  const Game& game = instance.game;
  switch (game.kind()) {
    case Game::Kind::Additive: {
      out << "additive\n";
      const auto& worth = game.additive_values();
      for (PlayerId i = 0; i < game.n_players(); ++i) {
        if (worth[static_cast<std::size_t>(i)] != 0) {
          out << names[static_cast<std::size_t>(i)] << " = "
              << to_string(worth[static_cast<std::size_t>(i)]) << "\n";
        }
      }
      break;
    }
    case Game::Kind::Coverage: {
      out << "coverage\n";
      for (const auto& [group, worth] : game.coverage_groups()) {
        out << coalition_text(group, names) << " = " << to_string(worth) << "\n";
      }
      break;
    }
    case Game::Kind::DividendForm: {
      out << "dividends\n";
      out << format_dividends(names, game.stored_dividends());
      break;
    }
    case Game::Kind::ExplicitTable: {
      out << "table\n";
      const std::uint64_t size = std::uint64_t{1} << game.n_players();
      for (std::uint64_t mask = 1; mask < size; ++mask) {
        out << coalition_text(Coalition(mask), names) << " = "
            << to_string(game.value(Coalition(mask))) << "\n";
      }
      break;
    }
  }

  if (instance.mechanism) {
    out << "\n[mechanism]\n";
    const MechanismSpec& spec = *instance.mechanism;
    switch (spec.mode) {
      case MechanismSpec::Mode::PlainShapley:
        out << "mode = plain-shapley\n";
        break;
      case MechanismSpec::Mode::PlainPermissionShapley:
        out << "mode = permission-shapley\n";
        break;
      case MechanismSpec::Mode::TreeFamily:
        out << "mode = tree\nf = " << spec.f.describe() << "\n";
        break;
      case MechanismSpec::Mode::DagFamily:
        out << "mode = dag\nf = " << spec.f.describe() << "\n";
        break;
    }
  }
  return out.str();
}

WeightFunction parse_weight_function(std::string_view text) {
  auto rational_or_throw = [&](std::string_view part) {
    auto value = parse_rational(part);
    if (!value) {
      throw std::invalid_argument("'" + std::string(part) +
                                  "' is not a rational number");
    }
    return *value;
  };
  if (text == "darpa") return WeightFunction::darpa_mit();
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument(
        "weight function must be const:c, table:a,b,..., geo:r, linear:a+bd, "
        "or darpa");
  }
  std::string_view kind = text.substr(0, colon);
  std::string_view rest = text.substr(colon + 1);
  if (kind == "const") return WeightFunction::constant(rational_or_throw(rest));
  if (kind == "geo") return WeightFunction::geometric(rational_or_throw(rest));
  if (kind == "table") {
    std::vector<Rational> values;
    std::size_t start = 0;
    while (start <= rest.size()) {
      std::size_t comma = rest.find(',', start);
      std::string_view part = rest.substr(
          start, comma == std::string_view::npos ? rest.size() - start : comma - start);
      values.push_back(rational_or_throw(part));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return WeightFunction::table(std::move(values));
  }
  if (kind == "linear") {
    auto plus = rest.find('+', 1);  // offset may itself start with '-'
    if (plus == std::string_view::npos || rest.empty() || rest.back() != 'd') {
      throw std::invalid_argument("linear weights are written linear:a+bd");
    }
    Rational offset = rational_or_throw(rest.substr(0, plus));
    Rational slope = rational_or_throw(rest.substr(plus + 1, rest.size() - plus - 2));
    return WeightFunction::linear(std::move(offset), std::move(slope));
  }
  throw std::invalid_argument("unknown weight function kind '" + std::string(kind) +
                              "'");
}

MechanismSpec::Mode parse_mechanism_mode(std::string_view text) {
  if (text == "plain-shapley") return MechanismSpec::Mode::PlainShapley;
  if (text == "permission-shapley") return MechanismSpec::Mode::PlainPermissionShapley;
  if (text == "tree") return MechanismSpec::Mode::TreeFamily;
  if (text == "dag") return MechanismSpec::Mode::DagFamily;
  throw std::invalid_argument(
      "mechanism must be plain-shapley, permission-shapley, tree, or dag");
}

ExportFormat parse_export_format(std::string_view text) {
  if (text == "table") return ExportFormat::Table;
  if (text == "csv") return ExportFormat::Csv;
  if (text == "json-lines") return ExportFormat::JsonLines;
  if (text == "dot") return ExportFormat::Dot;
  throw std::invalid_argument("format must be table, csv, json-lines, or dot");
}

std::string export_allocation(const std::vector<std::string>& names,
                              const DiffusionGraph& graph, const Game& game,
                              const Allocation& allocation, ExportFormat format,
                              bool decimal) {
  std::ostringstream out;
  const int n = graph.n_players();
  switch (format) {
    case ExportFormat::Table: {
      std::size_t width = 6;
      for (const std::string& name : names) width = std::max(width, name.size());
      for (PlayerId i = 0; i < n; ++i) {
        out << names[static_cast<std::size_t>(i)]
            << std::string(width - names[static_cast<std::size_t>(i)].size() + 2, ' ')
            << to_string(allocation.at(i));
        if (decimal) out << "  (~" << decimal_text(allocation.at(i)) << ")";
        if (!graph.active().contains(i)) out << "  [not reached]";
        out << "\n";
      }
      EfficiencyCheck efficiency = check_efficiency(allocation, game);
      out << "total" << std::string(width - 3, ' ') << to_string(efficiency.allocated)
          << "\n";
      out << "efficiency: allocated " << to_string(efficiency.allocated)
          << " of v(all) = " << to_string(efficiency.grand_value) << " -> "
          << (efficiency.efficient ? "exact" : "MISMATCH") << "\n";
      break;
    }
    case ExportFormat::Csv: {
      out << "name,payoff_num,payoff_den";
      if (decimal) out << ",approx";
      out << "\n";
      for (PlayerId i = 0; i < n; ++i) {
        out << names[static_cast<std::size_t>(i)] << ','
            << numerator_of(allocation.at(i)).str() << ','
            << denominator_of(allocation.at(i)).str();
        if (decimal) out << ',' << decimal_text(allocation.at(i));
        out << "\n";
      }
      break;
    }
    case ExportFormat::JsonLines: {
      for (PlayerId i = 0; i < n; ++i) {
        out << "{\"name\":\"" << json_escape(names[static_cast<std::size_t>(i)])
            << "\",\"num\":\"" << numerator_of(allocation.at(i)).str()
            << "\",\"den\":\"" << denominator_of(allocation.at(i)).str() << "\"}\n";
      }
      break;
    }
    case ExportFormat::Dot: {
      out << "digraph invitations {\n  rankdir=LR;\n";
      for (PlayerId i = 0; i < n; ++i) {
        out << "  \"" << names[static_cast<std::size_t>(i)] << "\" [label=\""
            << names[static_cast<std::size_t>(i)] << "\\n"
            << to_string(allocation.at(i)) << "\"";
        if (graph.initiators().contains(i)) out << ", shape=doublecircle";
        if (!graph.active().contains(i)) out << ", style=dashed";
        out << "];\n";
      }
      for (const Edge& e : graph.edges()) {
        out << "  \"" << names[static_cast<std::size_t>(e.from)] << "\" -> \""
            << names[static_cast<std::size_t>(e.to)] << "\";\n";
      }
      out << "}\n";
      break;
    }
  }
  return out.str();
}

std::string format_dividends(const std::vector<std::string>& names,
                             const DividendMap& dividends) {
  std::ostringstream out;
  for (const auto& [coalition, value] : dividends.entries()) {
    out << coalition_text(coalition, names) << " = " << to_string(value) << "\n";
  }
  return out.str();
}

std::string format_dic_report(const std::vector<std::string>& names,
                              const DicReport& report, ExportFormat format) {
  std::ostringstream out;
  auto edge_list = [&](const std::vector<Edge>& edges) {
    std::string text;
    for (const Edge& e : edges) {
      if (!text.empty()) text += ' ';
      text += names[static_cast<std::size_t>(e.from)] + "->" +
              names[static_cast<std::size_t>(e.to)];
    }
    return text;
  };
  switch (format) {
    case ExportFormat::JsonLines: {
      out << "{\"type\":\"summary\",\"mechanism\":\"" << json_escape(report.mechanism)
          << "\",\"dic\":" << (report.dic ? "true" : "false")
          << ",\"efficient\":" << (report.efficiency.efficient ? "true" : "false")
          << ",\"deviations\":" << report.deviations_checked
          << ",\"violations\":" << report.violations.size()
          << ",\"depth_shifts\":" << report.depth_change_deviations << "}\n";
      for (const DeviationReport& v : report.violations) {
        out << "{\"type\":\"violation\",\"player\":\""
            << json_escape(names[static_cast<std::size_t>(v.player)])
            << "\",\"withhold\":\"" << json_escape(edge_list(v.withheld_edges))
            << "\",\"truthful\":\"" << to_string(v.payoff_truthful)
            << "\",\"deviant\":\"" << to_string(v.payoff_deviant) << "\"}\n";
      }
      return out.str();
    }
    case ExportFormat::Csv: {
      out << "player,withhold,truthful,deviant,violation\n";
      for (const auto& worst : report.per_player_worst) {
        if (!worst) continue;
        out << names[static_cast<std::size_t>(worst->player)] << ",\""
            << edge_list(worst->withheld_edges) << "\","
            << to_string(worst->payoff_truthful) << ','
            << to_string(worst->payoff_deviant) << ','
            << (worst->violation ? "yes" : "no") << "\n";
      }
      return out.str();
    }
    case ExportFormat::Table:
    case ExportFormat::Dot:
      break;  // the human rendering below
  }

  out << "mechanism: " << report.mechanism << "\n";
  out << "efficiency: allocated " << to_string(report.efficiency.allocated)
      << " of v(all) = " << to_string(report.efficiency.grand_value) << " -> "
      << (report.efficiency.efficient ? "exact" : "MISMATCH") << "\n";
  if (report.game_monotone_warning) {
    out << "warning: the game is not certifiably monotone; incentive guarantees "
           "are only claimed for monotone games\n";
  }
  out << "worst deviation per player:\n";
  for (std::size_t i = 0; i < report.per_player_worst.size(); ++i) {
    const auto& worst = report.per_player_worst[i];
    if (!worst) continue;
    out << "  " << names[i] << ": withhold {" << edge_list(worst->withheld_edges)
        << "} pays " << to_string(worst->payoff_deviant) << " vs truthful "
        << to_string(worst->payoff_truthful)
        << (worst->violation ? "  VIOLATION" : "") << "\n";
  }
  out << "deviations checked: " << report.deviations_checked << "\n";
  if (report.depth_change_deviations > 0) {
    out << "deviations shifting a survivor's depth: " << report.depth_change_deviations
        << " (depth-weighted guarantees do not cover these)\n";
  }
  out << "verdict: " << (report.dic ? "DIC" : "NOT DIC") << " ("
      << report.violations.size() << " violation"
      << (report.violations.size() == 1 ? "" : "s") << ")\n";
  return out.str();
}

}  // namespace coopnet
