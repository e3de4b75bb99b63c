#pragma once

// Command-line front end. Commands operate on a scenario file (or a built-in
// example via `example`); every report exists in plain-text and --json form.
// Exit codes: 0 success (the verdict itself is part of the report), 2 for
// validation and parse failures, 3 when a size cap is exceeded.

#include <CLI11.hpp>

#include <ostream>
#include <string>
#include <vector>

#include "condensa/report.hpp"

namespace condensa::cli {

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact symmetry analysis of anyon condensation in pointed theories"};
  app.require_subcommand(1);

  std::string path;
  std::string example_name;
  bool json = false;
  std::size_t cap = kDefaultCap;

  const auto add_scenario_command = [&](const std::string& name, const std::string& desc) {
    auto* sub = app.add_subcommand(name, desc);
    sub->add_option("scenario", path, "scenario JSON file")->required();
    sub->add_flag("--json", json, "emit a JSON report");
    sub->add_option("--cap", cap, "size cap for groups and result sets");
    return sub;
  };
  add_scenario_command("modular-data", "S and T data of the scenario's theory");
  add_scenario_command("etale", "list all etale algebras with Aut groups and condensations");
  add_scenario_command("condense", "condense the scenario's algebra");
  add_scenario_command("obstruction", "first obstruction and the obstruction extension");
  add_scenario_command("splittings", "equivariant structures, classes, and the verdict");
  add_scenario_command("induce", "induced action on the condensed theory per class");
  add_scenario_command("universal", "splitting analysis of a group extension scenario");
  auto* example = app.add_subcommand("example", "print a built-in example scenario");
  example->add_option("name", example_name, "one of the built-in scenario names")->required();

  std::vector<const char*> argv{"condensa"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (app.got_subcommand("example")) {
      out << scenario_to_string(builtin_scenario(example_name));
      return 0;
    }

    const Scenario s = load_scenario(path, cap);
    const auto need_theory = [&]() -> const MetricGroup& {
      if (!s.theory) fail_validation("scenario has no theory (kind 'metric' required)");
      return *s.theory;
    };
    const auto need_algebra = [&]() -> const std::vector<int>& {
      need_theory();
      if (!s.algebra) fail_validation("scenario has no algebra (field 'algebra' required)");
      return *s.algebra;
    };
    const auto need_action = [&]() -> const CategoricalAction& {
      need_theory();
      if (!s.action) fail_validation("scenario has no action (field 'action' required)");
      return *s.action;
    };

    Report r;
    if (app.got_subcommand("modular-data"))
      r = report_modular_data(need_theory());
    else if (app.got_subcommand("etale"))
      r = report_etale(need_theory(), cap);
    else if (app.got_subcommand("condense"))
      r = report_condense(need_theory(), need_algebra());
    else if (app.got_subcommand("obstruction"))
      r = report_obstruction(need_action(), need_algebra(), cap);
    else if (app.got_subcommand("splittings"))
      r = report_splittings(need_action(), need_algebra(), cap);
    else if (app.got_subcommand("induce"))
      r = report_induce(need_action(), need_algebra(), cap);
    else {
      if (!s.universal) fail_validation("scenario has no extension (kind 'universal' required)");
      r = report_universal(*s.universal, cap);
    }
    if (json)
      out << r.data.dump(2) << "\n";
    else
      out << r.text;
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const cap_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const validation_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace condensa::cli
