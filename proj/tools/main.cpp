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

// coopnet: exact cooperative-game rewards on invitation graphs.
//
// Exit codes (stable for scripting):
//   0  success; for check-dic and sweep, no incentive violation found
//   1  a property violation was found (deviation pays, or allocation is
//      not efficient)
//   2  usage, parse, or resource errors

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "coopnet/dic.hpp"
#include "coopnet/instance_io.hpp"
#include "coopnet/mechanism.hpp"

namespace {

using namespace coopnet;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ParsedInstance load_instance(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_instance(text);
  } catch (const ParseError& error) {
    throw std::runtime_error(path + ": " + error.what());
  }
}

// Command-line flags win over the file's [mechanism] block; with neither,
// default to the graph's own family with constant weights.
MechanismSpec resolve_mechanism(const ParsedInstance& instance,
                                const std::string& mechanism_flag,
                                const std::string& f_flag) {
  MechanismSpec spec;
  if (!mechanism_flag.empty()) {
    spec.mode = parse_mechanism_mode(mechanism_flag);
  } else if (instance.mechanism) {
    spec = *instance.mechanism;
  } else {
    spec.mode = instance.graph.mode() == GraphMode::Tree
                    ? MechanismSpec::Mode::TreeFamily
                    : MechanismSpec::Mode::DagFamily;
  }
  if (!f_flag.empty()) {
    spec.f = parse_weight_function(f_flag);
  } else if (!mechanism_flag.empty() && instance.mechanism) {
    spec.f = instance.mechanism->f;  // keep the file's weights under a mode override
  }
  return spec;
}

void warn_if_not_monotone(const Game& game) {
  try {
    PropertyCheck monotone = is_monotone(game);
    if (!monotone.holds) {
      std::cerr << "warning: the game is not monotone; incentive guarantees are "
                   "only claimed for monotone games\n";
    }
  } catch (const std::exception&) {
    std::cerr << "warning: monotonicity could not be certified for this game\n";
  }
}

Game restricted_game(const ParsedInstance& instance, const MechanismSpec& spec) {
  if (spec.mode == MechanismSpec::Mode::PlainShapley) {
    return instance.game.masked(instance.graph.active());
  }
  MixedPermissionStructure structure =
      instance.structure ? *instance.structure : natural_structure(instance.graph);
  return permission_restriction(instance.game, structure);
}

int cmd_solve(const std::string& path, const std::string& mechanism_flag,
              const std::string& f_flag, const std::string& format_name,
              bool decimal, bool show_dividends) {
  ParsedInstance instance = load_instance(path);
  MechanismSpec spec = resolve_mechanism(instance, mechanism_flag, f_flag);
  ExportFormat format = parse_export_format(format_name);
  warn_if_not_monotone(instance.game);
  Allocation allocation =
      run_mechanism(spec, instance.graph, instance.game, instance.structure);
  std::cout << export_allocation(instance.names, instance.graph, instance.game,
                                 allocation, format, decimal);
  if (show_dividends) {
    std::cout << "\nrestricted-game dividends:\n"
              << format_dividends(instance.names,
                                  dividends(restricted_game(instance, spec)));
  }
  return check_efficiency(allocation, instance.game).efficient ? 0 : 1;
}

int cmd_check_dic(const std::string& path, const std::string& mechanism_flag,
                  const std::string& f_flag, const std::string& format_name,
                  std::uint64_t budget) {
  ParsedInstance instance = load_instance(path);
  MechanismSpec spec = resolve_mechanism(instance, mechanism_flag, f_flag);
  ExportFormat format = parse_export_format(format_name);
  DicReport report;
  try {
    report = check_dic(spec, instance.graph, instance.game, instance.structure, budget);
  } catch (const BudgetExceeded& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
  std::cout << format_dic_report(instance.names, report, format);
  return report.dic && report.efficiency.efficient ? 0 : 1;
}

std::vector<std::string> generated_names(int n_players) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n_players));
  for (int i = 0; i < n_players; ++i) names.push_back("p" + std::to_string(i));
  return names;
}

int cmd_sweep(int n_players, int trials, std::uint64_t seed,
              const std::string& mechanism_flag, const std::string& f_flag,
              const std::string& source_name) {
  MechanismSpec spec;
  spec.mode = parse_mechanism_mode(mechanism_flag);
  if (!f_flag.empty()) spec.f = parse_weight_function(f_flag);

  std::optional<StructureSource> source;
  if (!source_name.empty()) {
    if (source_name == "random-tree") {
      source = StructureSource::RandomTree;
    } else if (source_name == "random-dag-layered") {
      source = StructureSource::RandomLayeredDag;
    } else if (source_name == "random-dag-general") {
      source = StructureSource::RandomGeneralDag;
    } else {
      throw std::runtime_error(
          "source must be random-tree, random-dag-layered, or random-dag-general");
    }
  }

  SweepSummary summary = random_dic_sweep(spec, n_players, trials, seed, source);
  std::cout << "mechanism: " << spec.describe() << "\n"
            << "trials: " << summary.trials << "\n"
            << "deviations checked: " << summary.deviations_checked << "\n"
            << "deviations shifting a survivor's depth: "
            << summary.depth_change_deviations << "\n"
            << "instances with a violation: " << summary.instances_with_violation
            << "\n";
  for (const SweepCounterexample& example : summary.counterexamples) {
    std::vector<std::string> names = generated_names(example.graph.n_players());
    ParsedInstance repro{names, example.graph, example.game, example.structure, spec};
    std::cout << "\n--- violation in trial " << example.trial_index << " ---\n"
              << serialize_instance(repro) << "# player "
              << names[static_cast<std::size_t>(example.deviation.player)]
              << " withholds {";
    for (std::size_t k = 0; k < example.deviation.withheld_edges.size(); ++k) {
      const Edge& e = example.deviation.withheld_edges[k];
      std::cout << (k ? " " : "") << names[static_cast<std::size_t>(e.from)] << "->"
                << names[static_cast<std::size_t>(e.to)];
    }
    std::cout << "}: truthful " << to_string(example.deviation.payoff_truthful)
              << ", deviant " << to_string(example.deviation.payoff_deviant) << "\n";
  }
  return summary.instances_with_violation > 0 ? 1 : 0;
}

int cmd_dividends(const std::string& path, bool restricted,
                  const std::string& mechanism_flag, const std::string& f_flag) {
  ParsedInstance instance = load_instance(path);
  if (!restricted) {
    std::cout << format_dividends(instance.names, dividends(instance.game));
    return 0;
  }
  MechanismSpec spec = resolve_mechanism(instance, mechanism_flag, f_flag);
  std::cout << format_dividends(instance.names,
                                dividends(restricted_game(instance, spec)));
  return 0;
}

int cmd_restrict(const std::string& path) {
  ParsedInstance instance = load_instance(path);
  if (instance.graph.n_players() > 16) {
    throw std::runtime_error(
        "restrict prints all coalitions and supports at most 16 players");
  }
  MixedPermissionStructure structure = instance.structure
                                           ? *instance.structure
                                           : natural_structure(instance.graph);
  Game restricted = permission_restriction(instance.game, structure);
  std::cout << "table\n";
  const std::uint64_t size = std::uint64_t{1} << restricted.n_players();
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    Coalition coalition(mask);
    std::string text = "{";
    bool first = true;
    for (PlayerId i : coalition.members()) {
      if (!first) text += ',';
      text += instance.names[static_cast<std::size_t>(i)];
      first = false;
    }
    std::cout << text << "} = " << to_string(restricted.value(coalition)) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact cooperative-game rewards on invitation graphs"};
  app.require_subcommand(1);

  std::string path, mechanism_flag, f_flag, source_name;
  std::string format_name = "table";
  bool decimal = false, show_dividends = false, restricted = false;
  std::uint64_t budget = kDefaultDeviationBudget;
  std::uint64_t seed = 0;
  int n_players = 6, trials = 50;

  CLI::App* solve = app.add_subcommand("solve", "compute the reward allocation");
  solve->add_option("file", path, "instance file")->required();
  solve->add_option("--mechanism", mechanism_flag,
                    "plain-shapley | permission-shapley | tree | dag");
  solve->add_option("--f", f_flag, "weight function (const:c, table:a,b,.., geo:r, "
                                   "linear:a+bd, darpa)");
  solve->add_option("--format", format_name, "table | csv | json-lines | dot");
  solve->add_flag("--decimal", decimal, "append approximate decimals");
  solve->add_flag("--dividends", show_dividends,
                  "also print the restricted game's dividends");

  CLI::App* check = app.add_subcommand("check-dic",
                                       "enumerate every single-player deviation");
  check->add_option("file", path, "instance file")->required();
  check->add_option("--mechanism", mechanism_flag,
                    "plain-shapley | permission-shapley | tree | dag");
  check->add_option("--f", f_flag, "weight function");
  check->add_option("--format", format_name, "table | csv | json-lines");
  check->add_option("--budget", budget, "deviation evaluation budget");

  CLI::App* sweep = app.add_subcommand("sweep", "randomized incentive sweep");
  sweep->add_option("--n", n_players, "players per instance (max 8)");
  sweep->add_option("--trials", trials, "number of random instances");
  sweep->add_option("--seed", seed, "random seed");
  sweep->add_option("--mechanism", mechanism_flag,
                    "plain-shapley | permission-shapley | tree | dag")
      ->required();
  sweep->add_option("--f", f_flag, "weight function");
  sweep->add_option("--source", source_name,
                    "random-tree | random-dag-layered | random-dag-general");

  CLI::App* divs = app.add_subcommand("dividends", "print interaction dividends");
  divs->add_option("file", path, "instance file")->required();
  divs->add_flag("--restricted", restricted,
                 "dividends of the restricted game instead of the input game");
  divs->add_option("--mechanism", mechanism_flag, "mechanism for --restricted");
  divs->add_option("--f", f_flag, "weight function for --restricted");

  CLI::App* restrict_cmd =
      app.add_subcommand("restrict", "print the permission-restricted game");
  restrict_cmd->add_option("file", path, "instance file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : 2;  // --help exits 0; any usage error is 2
  }

  try {
    if (solve->parsed()) {
      return cmd_solve(path, mechanism_flag, f_flag, format_name, decimal,
                       show_dividends);
    }
    if (check->parsed()) {
      return cmd_check_dic(path, mechanism_flag, f_flag, format_name, budget);
    }
    if (sweep->parsed()) {
      return cmd_sweep(n_players, trials, seed, mechanism_flag, f_flag, source_name);
    }
    if (divs->parsed()) {
      return cmd_dividends(path, restricted, mechanism_flag, f_flag);
    }
    if (restrict_cmd->parsed()) {
      return cmd_restrict(path);
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
  return 2;
}
