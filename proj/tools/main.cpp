#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "commands.hpp"

using namespace weakrev::cli;

namespace {

struct Entry {
  const char* name;
  Command command;
  const char* description;
};

constexpr Entry kCommands[] = {
    {"analyze", Command::analyze, "Report information gain, reversibility and the bound for one measurement set"},
    {"random-scan", Command::random_scan, "Check the bound over random measurement sets"},
    {"sweep-eta", Command::sweep_eta, "Sweep the weak two-outcome qubit family over eta in [0, 1]"},
    {"schur-check", Command::schur_check, "Compare the sampled U⊗U twirl with its closed form"},
    {"simulate-reverse", Command::simulate_reverse, "Simulate measure-then-reverse and compare with the closed form"},
    {"dilate-check", Command::dilate_check, "Build the unitary dilation and classify information extraction"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information gain versus reversibility of quantum measurements"};
  app.footer(kOutputSchemaHelp);
  app.require_subcommand(1);

  RunConfig config;
  std::string format;
  const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}};

  for (const auto& entry : kCommands) {
    CLI::App* sub = app.add_subcommand(entry.name, entry.description);
    sub->callback([&config, command = entry.command] { config.command = command; });
  }

  // Options live on the parent and fall through, so they can follow the subcommand.
  app.fallthrough();
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();
  app.add_option("--dim", config.dimension, "Hilbert-space dimension d");
  app.add_option("--outcomes", config.outcomes, "Number of outcomes N for random sets");
  app.add_option("--count", config.count, "Number of random sets to draw");
  app.add_option("--samples", config.samples, "Monte Carlo samples");
  app.add_option("--trials", config.trials, "Simulation trials");
  app.add_option("--steps", config.eta_steps, "Number of eta grid points (>= 2)");
  app.add_option("--seed", config.seed, "Random seed");
  app.add_option("--tol-completeness", config.tol_completeness, "Completeness tolerance");
  app.add_option("--tol-reversible", config.tol_reversible, "Minimum singular value counted as reversible");
  app.add_option("--in", config.input_path, "Measurement set JSON file");
  app.add_option("--out", config.output_path, "Write primary output here instead of stdout");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--example", config.example, "Built-in set: von-neumann:D, weak-eta:VALUE, identity:D");
  app.add_option("--state", config.state, "Input state for simulate-reverse: uniform, random, basis:K");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  if (!format.empty()) config.format = formats.at(format);

  return run(config, std::cout, std::cerr);
}
