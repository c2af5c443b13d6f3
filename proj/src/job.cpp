#include "gateforge/job.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"

namespace gateforge {

const char* command_name(Command c) {
  switch (c) {
    case Command::synth: return "synth";
    case Command::evolve: return "evolve";
    case Command::fit: return "fit";
    case Command::audit: return "audit";
    case Command::verify: return "verify";
  }
  return "?";
}

const char* family_name(Family f) {
  switch (f) {
    case Family::simple: return "simple";
    case Family::extended_general: return "extended_general";
    case Family::extended_restricted: return "extended_restricted";
    case Family::canonical: return "canonical";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Deterministic JSON writer: fixed key order (callers emit keys explicitly),
// numbers at 17 significant digits, no locale or timestamp dependence.
// ---------------------------------------------------------------------------

namespace {

class Writer {
 public:
  void begin_object() { open('{', '}', false); }
  void end_object() { close(false); }
  void begin_array() { open('[', ']', true); }
  void end_array() { close(true); }

  void key(const std::string& k) {
    separate();
    out_ << '"' << escape(k) << "\": ";
    pending_value_ = true;
  }

  void value(double x) {
    position();
    if (!std::isfinite(x)) {
      out_ << "null";
      return;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    out_ << buf;
  }
  void value(long x) {
    position();
    out_ << x;
  }
  void value(int x) { value(static_cast<long>(x)); }
  void value(bool b) {
    position();
    out_ << (b ? "true" : "false");
  }
  void value(const std::string& s) {
    position();
    out_ << '"' << escape(s) << '"';
  }
  void value(const char* s) { value(std::string(s)); }

  std::string str() const { return out_.str(); }

 private:
  struct Level {
    bool array;
    int count;
  };

  static std::string escape(const std::string& s) {
    std::string r;
    for (char c : s) {
      switch (c) {
        case '"': r += "\\\""; break;
        case '\\': r += "\\\\"; break;
        case '\n': r += "\\n"; break;
        case '\t': r += "\\t"; break;
        case '\r': r += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            r += buf;
          } else {
            r += c;
          }
      }
    }
    return r;
  }

  std::string indent() const { return std::string(2 * stack_.size(), ' '); }

  // comma + newline + indent before a fresh item at the current level
  void separate() {
    if (stack_.empty()) return;
    if (stack_.back().count > 0) out_ << ',';
    out_ << '\n' << indent();
    stack_.back().count++;
  }

  // position for a value: after "key: " nothing is needed, array items and
  // the document root go through separate()
  void position() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    separate();
  }

  void open(char c, char, bool array) {
    position();
    out_ << c;
    stack_.push_back({array, 0});
  }

  void close(bool array) {
    const bool empty = stack_.back().count == 0;
    stack_.pop_back();
    if (!empty) out_ << '\n' << indent();
    out_ << (array ? ']' : '}');
  }

  std::ostringstream out_;
  std::vector<Level> stack_;
  bool pending_value_ = false;
};

void write_complex(Writer& w, const cplx& z) {
  w.begin_object();
  w.key("re");
  w.value(z.real());
  w.key("im");
  w.value(z.imag());
  w.end_object();
}

void write_matrix(Writer& w, const QMatrix& m) {
  w.begin_array();
  for (int i = 0; i < m.dim(); ++i) {
    w.begin_array();
    for (int j = 0; j < m.dim(); ++j) write_complex(w, m(i, j));
    w.end_array();
  }
  w.end_array();
}

void write_decomposition(Writer& w, const PauliDecomposition& d) {
  w.begin_object();
  for (const auto& [label, value] : d.terms) {
    w.key(label.letters);
    w.value(value);
  }
  w.end_object();
}

void write_spectrum(Writer& w, const EnergySpectrum& s) {
  w.begin_object();
  w.key("levels");
  w.begin_array();
  for (double e : s.levels) w.value(e);
  w.end_array();
  w.key("splitting");
  w.value(s.splitting());
  w.end_object();
}

void write_verification(Writer& w, const VerificationReport& v) {
  w.begin_object();
  w.key("evolution");
  write_matrix(w, v.evolution);
  w.key("exact_distance");
  w.value(v.exact_distance);
  w.key("phase_distance");
  w.value(v.phase_dist);
  w.key("realized_phase");
  w.value(v.realized_phase);
  w.key("up_to_phase");
  w.value(v.up_to_phase);
  w.key("tolerance");
  w.value(v.tolerance);
  w.key("behavioral_checked");
  w.value(v.behavioral_checked);
  w.key("behavioral_pass");
  w.value(v.behavioral_pass);
  w.key("pass");
  w.value(v.pass);
  w.end_object();
}

void write_preamble(Writer& w, const JobSpec& s) {
  w.key("tool");
  w.value("gateforge");
  w.key("schema_version");
  w.value(1L);
  w.key("command");
  w.value(command_name(s.command));
  w.key("family");
  w.value(family_name(s.family));
  w.key("params");
  w.begin_object();
  for (const auto& [k, v] : s.params) {
    w.key(k);
    w.value(v);
  }
  w.end_object();
  w.key("branch");
  w.begin_object();
  w.key("N1");
  w.value(s.branch.N1);
  w.key("N2");
  w.value(s.branch.N2);
  w.key("N3");
  w.value(s.branch.N3);
  w.key("N4");
  w.value(s.branch.N4);
  w.end_object();
  w.key("timebase");
  w.begin_object();
  w.key("delta_t");
  w.value(s.timebase.delta_t);
  w.key("hbar");
  w.value(s.timebase.hbar);
  w.end_object();
  w.key("options");
  w.begin_object();
  w.key("drop_identity");
  w.value(s.options.drop_identity);
  w.key("require_no_linear");
  w.value(s.options.require_no_linear);
  w.key("minimize_splitting");
  w.value(s.options.minimize_splitting);
  w.end_object();
  w.key("steps");
  w.value(s.steps);
  w.key("tolerance");
  w.value(s.tolerance);
}

std::string protocol_shape_name(ProtocolShape s) {
  switch (s) {
    case ProtocolShape::rectangular: return "rectangular";
    case ProtocolShape::raised_cosine: return "raised_cosine";
    case ProtocolShape::const_plus_cosine: return "const_plus_cosine";
    case ProtocolShape::sampled: return "sampled";
  }
  return "?";
}

void write_protocol(Writer& w, const Protocol& p) {
  w.begin_object();
  w.key("shape");
  w.value(protocol_shape_name(p.shape));
  w.key("start");
  w.value(p.start);
  w.key("duration");
  w.value(p.duration);
  w.key("scale");
  w.value(p.scale);
  if (p.shape == ProtocolShape::const_plus_cosine) {
    w.key("a");
    w.value(p.a);
    w.key("b");
    w.value(p.b);
    w.key("omega");
    w.value(p.omega);
    w.key("phase");
    w.value(p.phase);
  }
  if (p.shape == ProtocolShape::sampled) {
    w.key("samples");
    w.begin_array();
    for (const auto& [t, f] : p.samples) {
      w.begin_array();
      w.value(t);
      w.value(f);
      w.end_array();
    }
    w.end_array();
  }
  w.end_object();
}

void finish_report(Writer& w, int exit_code) {
  w.key("status");
  w.value(exit_code == 0 ? "pass" : (exit_code == 2 ? "fail" : "error"));
  w.key("exit_code");
  w.value(static_cast<long>(exit_code));
  w.end_object();
}

double param(const JobSpec& s, const char* name) { return s.params.at(name); }

// ---------------------------------------------------------------------------
// Command runners
// ---------------------------------------------------------------------------

struct Synthesized {
  QMatrix target;
  HamiltonianResult result;
};

Synthesized synthesize_for(const JobSpec& s) {
  switch (s.family) {
    case Family::simple: {
      const SimpleNotParams p(param(s, "alpha"), param(s, "beta"));
      HamiltonianResult r = synthesize_simple(p, s.branch, s.timebase, s.options);
      return {build_simple_not(p), std::move(r)};
    }
    case Family::extended_restricted: {
      const ExtendedRestrictedParams p(param(s, "alpha"), param(s, "beta"),
                                       param(s, "rho"), param(s, "delta"));
      HamiltonianResult r = synthesize_extended(p, s.branch, s.timebase, s.options);
      return {build_extended_restricted(p), std::move(r)};
    }
    case Family::canonical: {
      HamiltonianResult r = synthesize_canonical_extended(
          param(s, "ising"), static_cast<int>(std::lround(param(s, "N"))),
          param(s, "gamma"), s.timebase);
      // the canonical construction carries no dropped phase: its own constant
      // evolution is the reference gate
      QMatrix target = matrix_exp_evolution(r.H, s.timebase.delta_t, s.timebase.hbar);
      return {std::move(target), std::move(r)};
    }
    default:
      throw ValidationError("family not supported by this command");
  }
}

JobResult run_synth(const JobSpec& s) {
  const Synthesized syn = synthesize_for(s);
  const bool up_to_phase = s.options.drop_identity;
  const VerificationReport v =
      verify_gate(syn.result, syn.target, s.timebase, up_to_phase, s.tolerance);
  bool pass = v.pass && (!v.behavioral_checked || v.behavioral_pass);
  bool shape_ok = true;
  if (s.family == Family::canonical) {
    shape_ok = is_not_shape(v.evolution, s.tolerance);
    pass = pass && shape_ok;
  }

  Writer w;
  w.begin_object();
  write_preamble(w, s);
  w.key("target_unitary");
  write_matrix(w, syn.target);
  w.key("hamiltonian");
  write_matrix(w, syn.result.H);
  w.key("pauli_terms");
  write_decomposition(w, syn.result.decomposition);
  w.key("spectrum");
  write_spectrum(w, syn.result.spectrum);
  w.key("dropped_identity_coefficient");
  w.value(syn.result.dropped_identity_coefficient);
  w.key("expected_global_phase");
  w.value(syn.result.expected_global_phase);
  if (s.family == Family::canonical) {
    w.key("not_shape");
    w.value(shape_ok);
  }
  w.key("verification");
  write_verification(w, v);
  const int exit_code = pass ? 0 : 2;
  finish_report(w, exit_code);
  return {exit_code, w.str() + "\n"};
}

JobResult run_evolve(const JobSpec& s) {
  const Synthesized syn = synthesize_for(s);
  Protocol p = *s.protocol;
  const Protocol normalized = normalize_protocol(p);
  TimedHamiltonian th;
  th.terms.emplace_back(syn.result.H, normalized);
  const QMatrix ordered = evolve_time_ordered(th, s.timebase, s.steps);
  const QMatrix unordered = evolve_unordered(th, s.timebase);
  const double ordered_vs_unordered = max_abs_diff(ordered, unordered);

  // the unordered exponential is the exact protocol-independent reference;
  // the ordered product carries the discretization error of `steps`
  VerificationReport v;
  v.up_to_phase = s.options.drop_identity;
  v.tolerance = s.tolerance;
  v.evolution = unordered;
  v.exact_distance = max_abs_diff(unordered, syn.target);
  v.phase_dist = phase_distance(unordered, syn.target);
  const cplx overlap = (unordered.adjoint() * syn.target).trace();
  v.realized_phase = std::abs(overlap) > 1e-12 ? std::arg(overlap) : 0.0;
  v.pass = (v.up_to_phase ? v.phase_dist : v.exact_distance) <= v.tolerance;

  Writer w;
  w.begin_object();
  write_preamble(w, s);
  w.key("protocol");
  write_protocol(w, p);
  w.key("normalized_protocol");
  write_protocol(w, normalized);
  w.key("hamiltonian");
  write_matrix(w, syn.result.H);
  w.key("pauli_terms");
  write_decomposition(w, syn.result.decomposition);
  w.key("ordered_evolution");
  write_matrix(w, ordered);
  w.key("unordered_evolution");
  write_matrix(w, unordered);
  w.key("ordered_vs_unordered");
  w.value(ordered_vs_unordered);
  w.key("verification");
  write_verification(w, v);
  const int exit_code = v.pass ? 0 : 2;
  finish_report(w, exit_code);
  return {exit_code, w.str() + "\n"};
}

JobResult run_fit(const JobSpec& s) {
  QMatrix u = QMatrix::identity(4);
  if (s.family == Family::extended_general) {
    const ExtendedGeneralParams p(param(s, "chi"), param(s, "beta"), param(s, "alpha"),
                                  param(s, "rho"), param(s, "eta"), param(s, "delta"),
                                  param(s, "Omega"), param(s, "Upsilon"));
    u = build_extended_general(p);
  } else {
    const ExtendedRestrictedParams p(param(s, "alpha"), param(s, "beta"),
                                     param(s, "rho"), param(s, "delta"));
    u = build_extended_restricted(p);
  }
  const ExtendedGeneralParams fitted = fit_extended_general(u);
  const double residual = max_abs_diff(build_extended_general(fitted), u);

  Writer w;
  w.begin_object();
  write_preamble(w, s);
  w.key("input_unitary");
  write_matrix(w, u);
  w.key("fitted_params");
  w.begin_object();
  w.key("chi");
  w.value(fitted.chi);
  w.key("beta");
  w.value(fitted.beta);
  w.key("alpha");
  w.value(fitted.alpha);
  w.key("rho");
  w.value(fitted.rho);
  w.key("eta");
  w.value(fitted.eta);
  w.key("delta");
  w.value(fitted.delta);
  w.key("Omega");
  w.value(fitted.Omega);
  w.key("Upsilon");
  w.value(fitted.Upsilon);
  w.end_object();
  w.key("residual");
  w.value(residual);
  finish_report(w, 0);
  return {0, w.str() + "\n"};
}

JobResult run_audit(const JobSpec& s) {
  const Synthesized syn = synthesize_for(s);
  const Protocol window = Protocol::make_rectangular(0.0, s.timebase.delta_t, 1.0);
  TimedHamiltonian th;
  std::vector<std::string> names;
  for (const auto& [label, value] : syn.result.decomposition.terms) {
    th.terms.emplace_back(value * label_matrix(label), window);
    names.push_back(label.letters);
  }
  if (th.terms.empty()) {
    th.terms.emplace_back(QMatrix::zero(syn.result.H.dim()), window);
    names.push_back("0");
  }
  const AuditReport audit = commutation_audit(th);

  Writer w;
  w.begin_object();
  write_preamble(w, s);
  w.key("hamiltonian");
  write_matrix(w, syn.result.H);
  w.key("terms");
  w.begin_array();
  for (const std::string& n : names) w.value(n);
  w.end_array();
  w.key("audit");
  w.begin_object();
  w.key("pairs");
  w.begin_array();
  for (const PairAudit& pa : audit.pairs) {
    w.begin_object();
    w.key("first_term");
    w.value(names[pa.first]);
    w.key("second_term");
    w.value(names[pa.second]);
    w.key("commutator_norm");
    w.value(pa.commutator_norm);
    w.key("anticommutator_norm");
    w.value(pa.anticommutator_norm);
    w.key("commute");
    w.value(pa.commute);
    w.key("anticommute");
    w.value(pa.anticommute);
    w.end_object();
  }
  w.end_array();
  w.key("ordering_free");
  w.value(audit.ordering_free);
  w.key("tolerance");
  w.value(audit.tolerance);
  w.end_object();
  finish_report(w, 0);
  return {0, w.str() + "\n"};
}

JobResult error_report(const JobSpec& s, const std::string& code,
                       const std::string& message) {
  Writer w;
  w.begin_object();
  write_preamble(w, s);
  w.key("error");
  w.begin_object();
  w.key("code");
  w.value(code);
  w.key("message");
  w.value(message);
  w.end_object();
  finish_report(w, 1);
  return {1, w.str() + "\n"};
}

}  // namespace

JobResult run_job(const JobSpec& spec) {
  try {
    switch (spec.command) {
      case Command::synth:
      case Command::verify:
        return run_synth(spec);
      case Command::evolve:
        return run_evolve(spec);
      case Command::fit:
        return run_fit(spec);
      case Command::audit:
        return run_audit(spec);
    }
    throw ValidationError("unknown command");
  } catch (const Error& e) {
    return error_report(spec, e.code(), e.what());
  } catch (const std::exception& e) {
    return error_report(spec, "E_INPUT", e.what());
  }
}

// ---------------------------------------------------------------------------
// Spec document parsing and validation
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

struct Validator {
  std::vector<std::string>& errors;

  void fail(const std::string& path, const std::string& message) {
    errors.push_back(path + ": " + message);
  }

  bool number(const json& j, const std::string& path, double& out) {
    if (!j.is_number()) {
      fail(path, "must be a number");
      return false;
    }
    out = j.get<double>();
    if (!std::isfinite(out)) {
      fail(path, "must be finite");
      return false;
    }
    return true;
  }

  bool integer(const json& j, const std::string& path, long& out) {
    if (!j.is_number_integer()) {
      fail(path, "must be an integer");
      return false;
    }
    out = j.get<long>();
    return true;
  }

  bool boolean(const json& j, const std::string& path, bool& out) {
    if (!j.is_boolean()) {
      fail(path, "must be a boolean");
      return false;
    }
    out = j.get<bool>();
    return true;
  }

  void reject_unknown(const json& obj, const std::string& path,
                      const std::set<std::string>& allowed) {
    for (const auto& item : obj.items())
      if (!allowed.count(item.key()))
        fail(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
  }
};

const std::set<std::string>& required_params(Family f) {
  static const std::set<std::string> simple = {"alpha", "beta"};
  static const std::set<std::string> restricted = {"alpha", "beta", "rho", "delta"};
  static const std::set<std::string> general = {"chi", "beta", "alpha", "rho",
                                                "eta", "delta", "Omega", "Upsilon"};
  static const std::set<std::string> canonical = {"ising", "N", "gamma"};
  switch (f) {
    case Family::simple: return simple;
    case Family::extended_general: return general;
    case Family::extended_restricted: return restricted;
    case Family::canonical: return canonical;
  }
  return simple;
}

bool family_supported(Command c, Family f) {
  if (c == Command::fit)
    return f == Family::extended_general || f == Family::extended_restricted;
  return f == Family::simple || f == Family::extended_restricted ||
         f == Family::canonical;
}

std::optional<Protocol> parse_protocol(const json& j, double default_duration,
                                       Validator& v) {
  const size_t before = v.errors.size();
  if (!j.is_object()) {
    v.fail("protocol", "must be an object");
    return std::nullopt;
  }
  v.reject_unknown(j, "protocol",
                   {"shape", "start", "duration", "scale", "a", "b", "omega", "phase",
                    "samples"});
  if (!j.contains("shape") || !j["shape"].is_string()) {
    v.fail("protocol.shape", "required string");
    return std::nullopt;
  }
  const std::string shape = j["shape"].get<std::string>();
  double start = 0.0, duration = default_duration, scale = 1.0;
  if (j.contains("start")) v.number(j["start"], "protocol.start", start);
  if (j.contains("duration")) v.number(j["duration"], "protocol.duration", duration);
  if (j.contains("scale")) v.number(j["scale"], "protocol.scale", scale);
  if (!(duration > 0.0)) {
    v.fail("protocol.duration", "must be positive");
    return std::nullopt;
  }

  const bool has_cosine_keys =
      j.contains("a") || j.contains("b") || j.contains("omega") || j.contains("phase");
  const bool has_samples = j.contains("samples");
  const auto clean = [&] { return v.errors.size() == before; };

  try {
    if (shape == "rectangular" || shape == "raised_cosine") {
      if (has_cosine_keys)
        v.fail("protocol", "a/b/omega/phase are only valid for const_plus_cosine");
      if (has_samples) v.fail("protocol.samples", "only valid for shape sampled");
      if (!clean()) return std::nullopt;
      return shape == "rectangular"
                 ? Protocol::make_rectangular(start, duration, scale)
                 : Protocol::make_raised_cosine(start, duration, scale);
    }
    if (shape == "const_plus_cosine") {
      if (has_samples) v.fail("protocol.samples", "only valid for shape sampled");
      double a = 0.0, b = 0.0, omega = 0.0, phase = 0.0;
      for (const char* k : {"a", "b", "omega"})
        if (!j.contains(k)) v.fail(std::string("protocol.") + k, "required");
      if (!clean()) return std::nullopt;
      v.number(j["a"], "protocol.a", a);
      v.number(j["b"], "protocol.b", b);
      v.number(j["omega"], "protocol.omega", omega);
      if (j.contains("phase")) v.number(j["phase"], "protocol.phase", phase);
      if (!clean()) return std::nullopt;
      return Protocol::make_const_plus_cosine(start, duration, a, b, omega, phase,
                                              scale);
    }
    if (shape == "sampled") {
      if (has_cosine_keys)
        v.fail("protocol", "a/b/omega/phase are only valid for const_plus_cosine");
      if (!j.contains("samples") || !j["samples"].is_array()) {
        v.fail("protocol.samples", "required array of [time, value] pairs");
        return std::nullopt;
      }
      std::vector<std::pair<double, double>> samples;
      for (size_t i = 0; i < j["samples"].size(); ++i) {
        const json& row = j["samples"][i];
        const std::string path = "protocol.samples[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != 2) {
          v.fail(path, "must be a [time, value] pair");
          continue;
        }
        double t = 0.0, f = 0.0;
        if (v.number(row[0], path + "[0]", t) && v.number(row[1], path + "[1]", f))
          samples.emplace_back(t, f);
      }
      if (!clean()) return std::nullopt;
      return Protocol::make_sampled(start, duration, std::move(samples), scale);
    }
  } catch (const Error& e) {
    v.fail("protocol", e.what());
    return std::nullopt;
  }
  v.fail("protocol.shape", "unknown shape \"" + shape + "\"");
  return std::nullopt;
}

}  // namespace

SpecValidation validate_spec(const std::string& document,
                             std::optional<Command> cli_command) {
  SpecValidation out;
  Validator v{out.errors};

  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    v.fail("document", e.what());
    return out;
  }
  if (!j.is_object()) {
    v.fail("document", "top level must be an object");
    return out;
  }

  v.reject_unknown(j, "",
                   {"command", "family", "params", "branch", "timebase", "options",
                    "protocol", "output_path", "steps", "tolerance"});

  JobSpec spec;

  // command
  std::optional<Command> cmd;
  if (j.contains("command")) {
    if (!j["command"].is_string()) {
      v.fail("command", "must be a string");
    } else {
      const std::string name = j["command"].get<std::string>();
      bool found = false;
      for (Command c : {Command::synth, Command::evolve, Command::fit, Command::audit,
                        Command::verify})
        if (name == command_name(c)) {
          cmd = c;
          found = true;
        }
      if (!found) v.fail("command", "unknown command \"" + name + "\"");
    }
  }
  if (cli_command) {
    if (cmd && *cmd != *cli_command)
      v.fail("command", "document command disagrees with the CLI subcommand");
    if (!cmd) cmd = cli_command;
  }
  if (!cmd && out.errors.empty()) v.fail("command", "required");
  if (cmd) spec.command = *cmd;

  // family
  std::optional<Family> fam;
  if (!j.contains("family")) {
    v.fail("family", "required");
  } else if (!j["family"].is_string()) {
    v.fail("family", "must be a string");
  } else {
    const std::string name = j["family"].get<std::string>();
    for (Family f : {Family::simple, Family::extended_general,
                     Family::extended_restricted, Family::canonical})
      if (name == family_name(f)) fam = f;
    if (!fam) v.fail("family", "unknown family \"" + name + "\"");
  }
  if (fam) {
    spec.family = *fam;
    if (cmd && !family_supported(*cmd, *fam))
      v.fail("family", std::string("family ") + family_name(*fam) +
                           " is not supported by command " + command_name(*cmd));
  }

  // params
  if (!j.contains("params") || !j["params"].is_object()) {
    v.fail("params", "required object");
  } else if (fam) {
    const std::set<std::string>& required = required_params(*fam);
    v.reject_unknown(j["params"], "params", required);
    for (const std::string& name : required) {
      if (!j["params"].contains(name)) {
        v.fail("params." + name, "required");
        continue;
      }
      double value = 0.0;
      if (v.number(j["params"][name], "params." + name, value))
        spec.params[name] = value;
    }
    if (*fam == Family::canonical && spec.params.count("N")) {
      const double n = spec.params["N"];
      if (std::abs(n - std::round(n)) > 0.0 || std::abs(n) > 1e6)
        v.fail("params.N", "must be an integer");
    }
  }

  // branch
  if (j.contains("branch")) {
    if (!j["branch"].is_object()) {
      v.fail("branch", "must be an object");
    } else {
      v.reject_unknown(j["branch"], "branch", {"N1", "N2", "N3", "N4"});
      long n = 0;
      if (j["branch"].contains("N1") && v.integer(j["branch"]["N1"], "branch.N1", n))
        spec.branch.N1 = static_cast<int>(n);
      if (j["branch"].contains("N2") && v.integer(j["branch"]["N2"], "branch.N2", n))
        spec.branch.N2 = static_cast<int>(n);
      if (j["branch"].contains("N3") && v.integer(j["branch"]["N3"], "branch.N3", n))
        spec.branch.N3 = static_cast<int>(n);
      if (j["branch"].contains("N4") && v.integer(j["branch"]["N4"], "branch.N4", n))
        spec.branch.N4 = static_cast<int>(n);
    }
  }

  // timebase
  double delta_t = 1.0, hbar = 1.0;
  if (j.contains("timebase")) {
    if (!j["timebase"].is_object()) {
      v.fail("timebase", "must be an object");
    } else {
      v.reject_unknown(j["timebase"], "timebase", {"delta_t", "hbar"});
      if (j["timebase"].contains("delta_t"))
        v.number(j["timebase"]["delta_t"], "timebase.delta_t", delta_t);
      if (j["timebase"].contains("hbar"))
        v.number(j["timebase"]["hbar"], "timebase.hbar", hbar);
    }
  }
  if (!(delta_t > 0.0)) v.fail("timebase.delta_t", "must be positive");
  if (!(hbar > 0.0)) v.fail("timebase.hbar", "must be positive");
  if (delta_t > 0.0 && hbar > 0.0) spec.timebase = TimeBase(delta_t, hbar);

  // options
  if (j.contains("options")) {
    if (!j["options"].is_object()) {
      v.fail("options", "must be an object");
    } else {
      v.reject_unknown(j["options"], "options",
                       {"drop_identity", "require_no_linear", "minimize_splitting"});
      if (j["options"].contains("drop_identity"))
        v.boolean(j["options"]["drop_identity"], "options.drop_identity",
                  spec.options.drop_identity);
      if (j["options"].contains("require_no_linear"))
        v.boolean(j["options"]["require_no_linear"], "options.require_no_linear",
                  spec.options.require_no_linear);
      if (j["options"].contains("minimize_splitting"))
        v.boolean(j["options"]["minimize_splitting"], "options.minimize_splitting",
                  spec.options.minimize_splitting);
    }
  }
  if (spec.options.require_no_linear && fam && *fam == Family::simple)
    v.fail("options.require_no_linear", "only meaningful for two-spin families");

  // protocol
  if (j.contains("protocol")) {
    if (cmd && *cmd != Command::evolve) {
      v.fail("protocol", "only used by the evolve command");
    } else {
      spec.protocol = parse_protocol(j["protocol"], delta_t, v);
      if (spec.protocol && delta_t > 0.0 &&
          std::abs(spec.protocol->duration - delta_t) > 1e-12 * std::max(1.0, delta_t))
        v.fail("protocol.duration", "must equal timebase.delta_t (the gate window)");
    }
  } else if (cmd && *cmd == Command::evolve) {
    v.fail("protocol", "required for the evolve command");
  }

  // output_path
  if (j.contains("output_path")) {
    if (!j["output_path"].is_string())
      v.fail("output_path", "must be a string");
    else
      spec.output_path = j["output_path"].get<std::string>();
  }

  // steps / tolerance
  if (j.contains("steps")) {
    long steps = 0;
    if (v.integer(j["steps"], "steps", steps)) {
      if (steps < 1 || steps > 100000000)
        v.fail("steps", "must lie in [1, 1e8]");
      else
        spec.steps = steps;
    }
  }
  if (j.contains("tolerance")) {
    double tol = 0.0;
    if (v.number(j["tolerance"], "tolerance", tol)) {
      if (!(tol > 0.0))
        v.fail("tolerance", "must be positive");
      else
        spec.tolerance = tol;
    }
  }

  if (out.errors.empty()) out.spec = spec;
  return out;
}

SpecValidation validate_spec(const std::string& document) {
  return validate_spec(document, std::nullopt);
}

std::string write_spec_document(const JobSpec& spec) {
  Writer w;
  w.begin_object();
  w.key("command");
  w.value(command_name(spec.command));
  w.key("family");
  w.value(family_name(spec.family));
  w.key("params");
  w.begin_object();
  for (const auto& [k, x] : spec.params) {
    w.key(k);
    w.value(x);
  }
  w.end_object();
  w.key("branch");
  w.begin_object();
  w.key("N1");
  w.value(spec.branch.N1);
  w.key("N2");
  w.value(spec.branch.N2);
  w.key("N3");
  w.value(spec.branch.N3);
  w.key("N4");
  w.value(spec.branch.N4);
  w.end_object();
  w.key("timebase");
  w.begin_object();
  w.key("delta_t");
  w.value(spec.timebase.delta_t);
  w.key("hbar");
  w.value(spec.timebase.hbar);
  w.end_object();
  w.key("options");
  w.begin_object();
  w.key("drop_identity");
  w.value(spec.options.drop_identity);
  w.key("require_no_linear");
  w.value(spec.options.require_no_linear);
  w.key("minimize_splitting");
  w.value(spec.options.minimize_splitting);
  w.end_object();
  if (spec.protocol) {
    w.key("protocol");
    write_protocol(w, *spec.protocol);
  }
  if (spec.output_path) {
    w.key("output_path");
    w.value(*spec.output_path);
  }
  w.key("steps");
  w.value(spec.steps);
  w.key("tolerance");
  w.value(spec.tolerance);
  w.end_object();
  return w.str() + "\n";
}

}  // namespace gateforge
