#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace tropical::cli;

int main(int argc, char** argv) {
  CLI::App app{"Rank-one transient bounds for inhomogeneous max-plus matrix products"};
  app.require_subcommand(1);

  std::string format = "json";
  CommonOptions common;
  std::optional<std::string> sequence_path;
  TransientArgs targs;
  std::string mode = "sampled";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("family", common.family_path, "family file (JSON)")->required();
    sub->add_option("--format", format, "json | pretty")->check(CLI::IsMember({"json", "pretty"}));
    sub->add_option("--expected", common.expected_path, "reference values to diff against");
  };

  auto* validate = app.add_subcommand("validate", "check the structural assumptions on a family");
  add_common(validate);

  auto* derive = app.add_subcommand("derive", "boundary matrices, lambda*, optimal path weights");
  add_common(derive);
  derive->add_flag("--force", common.force, "emit partial output for a family that fails validation");

  auto* bound = app.add_subcommand("bound", "explicit bound, and the implicit bound of a given product");
  add_common(bound);
  bound->add_option("sequence", sequence_path, "sequence file (JSON array of 1-based member indices)");

  auto* check = app.add_subcommand("check", "fold a product and test rank-one factorisation");
  add_common(check);
  std::string check_sequence;
  check->add_option("sequence", check_sequence, "sequence file")->required();

  auto* transient = app.add_subcommand("transient", "search for the rank-one transient up to a horizon");
  add_common(transient);
  transient->add_option("--horizon", targs.horizon, "longest product length examined");
  transient->add_option("--mode", mode, "exhaustive | sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
  transient->add_option("--samples", targs.samples, "products per length (sampled mode)");
  transient->add_option("--seed", targs.seed, "mt19937_64 seed (sampled mode)");
  transient->add_option("--threads", targs.threads, "worker threads")->check(CLI::PositiveNumber);
  transient->add_option("--budget", targs.budget, "maximum product count in exhaustive mode");
  transient->add_option("--max-counterexamples", targs.max_counterexamples, "counterexamples listed in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kInputError;
  }

  CommandResult result;
  if (validate->parsed()) {
    result = run_validate(common);
  } else if (derive->parsed()) {
    result = run_derive(common);
  } else if (bound->parsed()) {
    result = run_bound(common, sequence_path);
  } else if (check->parsed()) {
    result = run_check(common, check_sequence);
  } else {
    targs.mode = mode == "exhaustive" ? tropical::SearchMode::Exhaustive : tropical::SearchMode::Sampled;
    result = run_transient(common, targs);
  }

  if (!result.report["error"].is_null()) {
    std::cerr << "tropical-transient: " << result.report["error"]["message"].get<std::string>() << "\n";
  }
  if (format == "pretty") {
    std::cout << render_pretty(result.report);
  } else {
    std::cout << result.report.dump(2) << "\n";
  }
  return result.exit_code;
}
