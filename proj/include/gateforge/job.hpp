#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gateforge/protocols.hpp"
#include "gateforge/synthesis.hpp"

namespace gateforge {

enum class Command { synth, evolve, fit, audit, verify };
enum class Family { simple, extended_general, extended_restricted, canonical };

const char* command_name(Command c);
const char* family_name(Family f);

// A fully validated job description. Reports produced from equal specs are
// byte-identical.
struct JobSpec {
  Command command = Command::synth;
  Family family = Family::simple;
  std::map<std::string, double> params;
  BranchChoice branch;
  TimeBase timebase;
  SynthesisOptions options;
  std::optional<Protocol> protocol;
  std::optional<std::string> output_path;
  long steps = 10000;
  double tolerance = 1e-9;
};

struct SpecValidation {
  std::optional<JobSpec> spec;
  std::vector<std::string> errors;  // "path: message"

  bool ok() const { return errors.empty() && spec.has_value(); }
};

// Parses and validates a JSON job document. Side-effect free; unknown keys
// are rejected and every problem is reported with its field path. Defaults:
// delta_t = 1, hbar = 1, branch integers 0, options off, steps = 10000,
// tolerance = 1e-9.
SpecValidation validate_spec(const std::string& document);

// Same, with the command supplied externally (the CLI subcommand); a command
// present in the document must agree with it.
SpecValidation validate_spec(const std::string& document,
                             std::optional<Command> cli_command);

// Canonical document form; validate_spec(write_spec_document(s)) == s.
std::string write_spec_document(const JobSpec& spec);

struct JobResult {
  int exit_code = 0;   // 0 pass, 1 input or module error, 2 verification failure
  std::string report;  // deterministic JSON, 17 significant digits
};

JobResult run_job(const JobSpec& spec);

}  // namespace gateforge
