#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "latent/repl.hpp"
#include "latent/scenario.hpp"

namespace {

enum ExitCode : int { kOk = 0, kAssertionFailed = 1, kBadInput = 2, kOverflow = 3 };

void write_json(const nlohmann::ordered_json& j, const std::string& path) {
  if (path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

struct RunFlags {
  std::string file;
  std::string strategy = "full-meet";
  std::string fragment;
  std::size_t max_iter = 0;
  std::string json;
  bool quiet = false;
};

std::optional<latent::Fragment> fragment_flag(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto f = latent::parse_fragment(text);
  if (!f) throw latent::LogicError("fragment must be full or monotone");
  return f;
}

int run(const RunFlags& flags) {
  latent::Scenario scenario;
  latent::RunOptions options;
  try {
    scenario = latent::load_scenario(flags.file, fragment_flag(flags.fragment));
    options.strategy = latent::parse_strategy(flags.strategy);
    options.change.max_rounds = flags.max_iter;
  } catch (const latent::LogicError& ex) {
    std::cerr << flags.file << ": " << ex.what() << '\n';
    return kBadInput;
  }

  std::optional<latent::ScenarioReport> report;
  try {
    report = latent::run_scenario(scenario, options);
  } catch (const latent::IterationOverflow& ex) {
    std::cerr << flags.file << ": " << ex.what() << '\n';
    return kOverflow;
  } catch (const latent::LogicError& ex) {
    std::cerr << flags.file << ": " << ex.what() << '\n';
    return kBadInput;
  }

  if (!flags.quiet) std::cout << latent::describe_report(scenario, *report);
  if (!flags.json.empty()) write_json(latent::trace_json(scenario, *report), flags.json);
  return report->ok() ? kOk : kAssertionFailed;
}

int check(const RunFlags& flags) {
  try {
    const latent::Scenario scenario = latent::load_scenario(flags.file, fragment_flag(flags.fragment));
    const latent::AxiomReport report = latent::check_axioms(scenario.initial_base());
    std::cout << report.summary();
    return report.all_pass() ? kOk : kAssertionFailed;
  } catch (const latent::LogicError& ex) {
    std::cerr << flags.file << ": " << ex.what() << '\n';
    return kBadInput;
  }
}

struct ReplFlags {
  std::vector<std::string> atoms{"p1", "p2", "p3"};
  std::string fragment = "full";
  std::string strategy = "full-meet";
  std::string load;
};

int repl(const ReplFlags& flags) {
  latent::RunOptions options;
  std::unique_ptr<latent::Repl> session;
  try {
    options.strategy = latent::parse_strategy(flags.strategy);
    session = std::make_unique<latent::Repl>(
        latent::make_signature(flags.atoms, *fragment_flag(flags.fragment)), options);
  } catch (const latent::LogicError& ex) {
    std::cerr << ex.what() << '\n';
    return kBadInput;
  }
  if (!flags.load.empty()) std::cout << session->execute(":load " + flags.load);
  std::cout << "type :help for commands\n";
  std::string line;
  while (!session->finished()) {
    std::cout << "latent> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    std::cout << session->execute(line);
  }
  return kOk;
}

int witness(const std::string& mode, const std::string& json) {
  const auto fragment = latent::parse_fragment(mode);
  if (!fragment) {
    std::cerr << "mode must be full or monotone\n";
    return kBadInput;
  }
  const latent::WitnessReport report = latent::no_recovery_witness(*fragment);
  if (json != "-") std::cout << latent::describe_witness(report);
  if (!json.empty()) write_json(latent::witness_json(report), json);
  const bool expected = *fragment == latent::Fragment::Monotone ? report.universal_failure()
                                                                : report.witness.has_value();
  return expected && report.contrast_holds ? kOk : kAssertionFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latent belief bases: expansion, contraction and revision with support tables"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto add_run_flags = [&run_flags](CLI::App* cmd) {
    cmd->add_option("file", run_flags.file, "Scenario file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--fragment", run_flags.fragment, "Override the fragment: full or monotone");
  };
  CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario file and evaluate its assertions");
  add_run_flags(run_cmd);
  run_cmd->add_option("--strategy", run_flags.strategy,
                      "full-meet, maxichoice, seeded:<n> or script:<i,j,...>");
  run_cmd->add_option("--max-iter", run_flags.max_iter, "Round limit per fixpoint loop");
  run_cmd->add_option("--json", run_flags.json, "Write the JSON trace here ('-' for stdout)");
  run_cmd->add_flag("-q,--quiet", run_flags.quiet, "Only print the JSON trace and errors");

  CLI::App* check_cmd = app.add_subcommand("check", "Check the axioms on a scenario's initial base");
  add_run_flags(check_cmd);

  ReplFlags repl_flags;
  CLI::App* repl_cmd = app.add_subcommand("repl", "Interactive session");
  repl_cmd->add_option("--atoms", repl_flags.atoms, "Atom names (at most 4)")->delimiter(',');
  repl_cmd->add_option("--fragment", repl_flags.fragment, "full or monotone");
  repl_cmd->add_option("--strategy", repl_flags.strategy, "Initial selection strategy");
  repl_cmd->add_option("--load", repl_flags.load, "Start from a scenario's base and evidence");

  std::string mode = "monotone";
  std::string json;
  CLI::App* witness_cmd = app.add_subcommand("witness", "Search for a no-recovery witness");
  witness_cmd->add_option("--mode", mode, "full or monotone")->check(CLI::IsMember({"full", "monotone"}));
  witness_cmd->add_option("--json", json, "Write the report as JSON ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*run_cmd) return run(run_flags);
    if (*check_cmd) return check(run_flags);
    if (*repl_cmd) return repl(repl_flags);
    if (*witness_cmd) return witness(mode, json);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kBadInput;
  }
  return kOk;
}
