#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gateforge/job.hpp"

namespace {

struct CliArgs {
  std::string spec_path;
  std::string out_path;
  long steps = 0;
  double tolerance = 0.0;
  bool has_steps = false;
  bool has_tolerance = false;
  bool has_out = false;
};

int run(gateforge::Command command, const CliArgs& args) {
  std::ifstream in(args.spec_path);
  if (!in) {
    std::cerr << "gateforge: cannot open spec file " << args.spec_path << "\n";
    return 1;
  }
  std::ostringstream buf;
  buf << in.rdbuf();

  gateforge::SpecValidation validation = gateforge::validate_spec(buf.str(), command);
  if (!validation.ok()) {
    std::cerr << "gateforge: spec file " << args.spec_path << " is invalid:\n";
    for (const std::string& e : validation.errors) std::cerr << "  " << e << "\n";
    return 1;
  }

  gateforge::JobSpec spec = *validation.spec;
  if (args.has_steps) spec.steps = args.steps;
  if (args.has_tolerance) spec.tolerance = args.tolerance;
  if (args.has_out) spec.output_path = args.out_path;

  const gateforge::JobResult result = gateforge::run_job(spec);
  std::cout << result.report;
  if (spec.output_path) {
    std::ofstream out(*spec.output_path);
    if (!out) {
      std::cerr << "gateforge: cannot write report to " << *spec.output_path << "\n";
      return 1;
    }
    out << result.report;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gateforge: synthesizes interaction Hamiltonians for single-qubit and "
      "two-spin NOT gates, decomposes them into Pauli couplings and verifies "
      "gate action under constant and time-dependent protocols"};
  app.require_subcommand(1);

  const struct {
    gateforge::Command command;
    const char* description;
  } commands[] = {
      {gateforge::Command::synth,
       "synthesize a Hamiltonian for a target gate and verify its evolution"},
      {gateforge::Command::evolve,
       "evolve a synthesized Hamiltonian under a time-dependent protocol"},
      {gateforge::Command::fit,
       "recover the eight-parameter form of a block-shaped unitary"},
      {gateforge::Command::audit,
       "report pairwise commutators and anticommutators of the Pauli terms"},
      {gateforge::Command::verify,
       "synthesize and report gate verification distances"},
  };

  CliArgs args;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(gateforge::command_name(c.command), c.description);
    sub->add_option("--spec", args.spec_path, "job spec file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", args.out_path, "also write the report to this file");
    sub->add_option("--steps", args.steps, "time-ordered integration steps");
    sub->add_option("--tolerance", args.tolerance, "verification tolerance");
  }

  CLI11_PARSE(app, argc, argv);

  CLI::App* sub = app.get_subcommands().front();
  args.has_steps = sub->count("--steps") > 0;
  args.has_tolerance = sub->count("--tolerance") > 0;
  args.has_out = sub->count("--out") > 0;
  for (const auto& c : commands)
    if (sub->get_name() == gateforge::command_name(c.command)) return run(c.command, args);
  return 1;
}
